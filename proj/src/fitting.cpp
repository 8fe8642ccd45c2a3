#include "cmpol/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmpol/errors.hpp"
#include "cmpol/quantum_io.hpp"

namespace cmpol {

namespace {

// Solve the 4x4 system A x = b in place (partial pivoting).
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> A, std::array<double, 4> b) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);
    if (A[col][col] == 0.0) throw NonConvergence("fit_lorentzian: singular normal equations");
    for (int r = col + 1; r < 4; ++r) {
      const double f = A[r][col] / A[col][col];
      for (int c = col; c < 4; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, 4> x{};
  for (int r = 3; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 4; ++c) s -= A[r][c] * x[c];
    x[r] = s / A[r][r];
  }
  return x;
}

LorentzianFit initial_from_data(std::span<const double> freq, std::span<const double> mag) {
  const std::size_t n = freq.size();
  std::size_t imin = 0;
  double ymin = mag[0], ymax = mag[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (mag[i] < ymin) {
      ymin = mag[i];
      imin = i;
    }
    ymax = std::max(ymax, mag[i]);
  }
  const double depth = ymax - ymin;
  if (depth <= 0.0 || imin == 0 || imin == n - 1)
    throw NoDip("fit_lorentzian: no interior extremum in range");
  // Half-depth crossings around the discrete minimum seed the width.
  const double level = ymin + 0.5 * depth;
  std::size_t l = imin, r = imin;
  while (l > 0 && mag[l] < level) --l;
  while (r < n - 1 && mag[r] < level) ++r;
  double hwhm = 0.5 * (freq[r] - freq[l]);
  if (hwhm <= 0.0) hwhm = (freq[n - 1] - freq[0]) / 10.0;
  return LorentzianFit{freq[imin], hwhm, depth, ymax, 0.0, 0};
}

}  // namespace

LorentzianFit fit_lorentzian(std::span<const double> freq, std::span<const double> mag,
                             std::optional<LorentzianFit> initial_guess) {
  if (freq.size() != mag.size())
    throw std::invalid_argument("fit_lorentzian: freq/mag size mismatch");
  if (freq.size() < 8)
    throw std::invalid_argument("fit_lorentzian: need at least 8 samples");
  const std::size_t n = freq.size();

  LorentzianFit p = initial_guess ? *initial_guess : initial_from_data(freq, mag);

  // Work in shifted/scaled coordinates u = (w - c0)/s so the normal equations
  // stay well conditioned for rad/s-scale inputs.
  const double c0 = p.center;
  const double s = std::max(p.hwhm, (freq.back() - freq.front()) / 100.0);
  double pc = 0.0, pg = p.hwhm / s, pd = p.depth, pb = p.baseline;

  auto cost_of = [&](double cc, double gg, double dd, double bb) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (freq[i] - c0) / s - cc;
      const double den = u * u + gg * gg;
      const double r = bb - dd * gg * gg / den - mag[i];
      acc += r * r;
    }
    return acc;
  };

  double cost = cost_of(pc, pg, pd, pb);
  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  for (; iter < 200 && !converged; ++iter) {
    std::array<std::array<double, 4>, 4> JTJ{};
    std::array<double, 4> JTr{};
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (freq[i] - c0) / s - pc;
      const double g2 = pg * pg;
      const double den = u * u + g2;
      const double r = pb - pd * g2 / den - mag[i];
      const std::array<double, 4> J{
          -pd * g2 * 2.0 * u / (den * den),   // d/d center (note u = ... - pc)
          -pd * 2.0 * pg * u * u / (den * den),  // d/d hwhm
          -g2 / den,                          // d/d depth
          1.0,                                // d/d baseline
      };
      for (int a = 0; a < 4; ++a) {
        JTr[a] += J[a] * r;
        for (int b2 = 0; b2 < 4; ++b2) JTJ[a][b2] += J[a] * J[b2];
      }
    }
    bool stepped = false;
    for (int tries = 0; tries < 12 && !stepped; ++tries) {
      auto A = JTJ;
      for (int a = 0; a < 4; ++a) A[a][a] += lambda * std::max(JTJ[a][a], 1e-30);
      std::array<double, 4> step{};
      try {
        step = solve4(A, JTr);
      } catch (const NonConvergence&) {
        lambda *= 10.0;
        continue;
      }
      const double nc = pc - step[0], ng = pg - step[1], nd = pd - step[2], nb = pb - step[3];
      const double ncost = cost_of(nc, ng, nd, nb);
      if (ncost <= cost) {
        const double rel = std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]) +
                           std::abs(step[3]);
        converged = (cost - ncost) <= 1e-15 * (cost + 1e-300) || rel < 1e-13;
        pc = nc;
        pg = ng;
        pd = nd;
        pb = nb;
        cost = ncost;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!stepped) converged = true;  // no further distinguishable improvement
  }
  if (!converged) throw NonConvergence("fit_lorentzian: iteration cap reached");

  LorentzianFit out{};
  out.center = c0 + pc * s;
  out.hwhm = std::abs(pg) * s;
  out.depth = pd;
  out.baseline = pb;
  out.residual_norm = std::sqrt(cost / static_cast<double>(n));
  out.iterations = iter;
  if (out.hwhm <= 0.0) throw NonConvergence("fit_lorentzian: collapsed width");
  return out;
}

LorentzianFit fit_lorentzian(const ComplexSpectrum& spectrum,
                             std::optional<LorentzianFit> initial_guess) {
  const std::vector<double> mag = spectrum.magnitude();
  return fit_lorentzian(spectrum.freq, mag, initial_guess);
}

double linewidth_to_eta(double delta_H, const MagnetParams& magnet) {
  if (delta_H < 0) throw std::invalid_argument("linewidth_to_eta: delta_H must be >= 0");
  return magnet.gamma_angular() * delta_H;
}

std::vector<double> find_dips(std::span<const double> freq, std::span<const double> mag,
                              double prominence_floor) {
  const std::size_t n = mag.size();
  if (freq.size() != n) throw std::invalid_argument("find_dips: freq/mag size mismatch");
  std::vector<double> dips;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // Local minimum; plateaus report their first sample.
    if (!(mag[i] < mag[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < n && mag[j + 1] == mag[i]) ++j;
    if (j + 1 >= n || mag[j + 1] < mag[i]) continue;
    // Topographic prominence: highest barrier to the nearest lower ground on
    // each side (or to the edge).
    double left = mag[i];
    for (std::size_t k = i; k-- > 0;) {
      if (mag[k] < mag[i]) break;
      left = std::max(left, mag[k]);
    }
    double right = mag[i];
    for (std::size_t k = j + 1; k < n; ++k) {
      if (mag[k] < mag[i]) break;
      right = std::max(right, mag[k]);
    }
    if (std::min(left, right) - mag[i] >= prominence_floor) dips.push_back(freq[i]);
    i = j;
  }
  return dips;
}

SplittingResult extract_splitting(const SystemParams& params, const DriveState& drive,
                                  double half_span, double resolution) {
  if (half_span <= 0 || resolution <= 0)
    throw std::invalid_argument("extract_splitting: span and resolution must be > 0");
  const double omega_c = params.cavity.omega_c;
  const std::complex<double> gt = effective_coupling(params.coupling, drive);
  const double kappa = params.cavity.kappa;
  const double eta = params.magnet.eta_kittel;

  // Below the linewidth sum the dips merge and any distance is fit-dependent.
  if (2.0 * std::abs(gt) <= kappa + eta) return {false, 0.0, {0.0, 0.0}};

  const auto half_points = static_cast<std::size_t>(std::ceil(half_span / resolution));
  const std::size_t npts = 2 * half_points + 1;
  std::vector<double> freq(npts), mag(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    freq[i] = omega_c + (static_cast<double>(i) - static_cast<double>(half_points)) * resolution;
    mag[i] = std::abs(s11(freq[i], omega_c, omega_c, kappa, eta, gt));
  }

  const std::vector<double> dips = find_dips(freq, mag, 0.02);
  if (dips.size() < 2) return {false, 0.0, {0.0, 0.0}};

  // Two deepest dips, reported in ascending frequency.
  auto depth_at = [&](double f) {
    const auto it = std::lower_bound(freq.begin(), freq.end(), f);
    return mag[static_cast<std::size_t>(it - freq.begin())];
  };
  std::vector<double> sorted = dips;
  std::sort(sorted.begin(), sorted.end(),
            [&](double x, double y) { return depth_at(x) < depth_at(y); });
  double f1 = sorted[0], f2 = sorted[1];
  if (f1 > f2) std::swap(f1, f2);
  return {true, f2 - f1, {f1, f2}};
}

double photon_number(double power_in, double omega_c, double Q_i, double Q_c) {
  if (power_in < 0 || omega_c <= 0 || Q_i < 0 || Q_c < 0)
    throw std::invalid_argument("photon_number: inputs must be non-negative, omega_c > 0");
  const double qsum = Q_i + Q_c;
  if (qsum == 0.0) return 0.0;
  return 4.0 * power_in / (hbar_si * omega_c * omega_c) * (Q_i * Q_i * Q_c) / (qsum * qsum);
}

}  // namespace cmpol
