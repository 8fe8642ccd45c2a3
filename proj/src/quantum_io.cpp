#include "cmpol/quantum_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

const std::complex<double> I(0.0, 1.0);

/// Worker count: CMPOL_WORKERS overrides, otherwise hardware concurrency.
unsigned worker_count() {
  if (const char* env = std::getenv("CMPOL_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

/// Row-parallel map fill; each worker writes disjoint rows of a preallocated
/// buffer, so output is deterministic regardless of scheduling.
template <typename RowFn>
void fill_rows(std::size_t rows, RowFn&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), rows);
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < rows; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<double> ComplexSpectrum::magnitude() const {
  std::vector<double> out(s11.size());
  for (std::size_t i = 0; i < s11.size(); ++i) out[i] = std::abs(s11[i]);
  return out;
}

std::vector<double> ComplexSpectrum::phase() const {
  std::vector<double> out(s11.size());
  for (std::size_t i = 0; i < s11.size(); ++i) out[i] = std::arg(s11[i]);
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw GridError("grid must have at least one point");
  if (n == 1) {
    if (lo != hi) throw GridError("single-point grid requires lo == hi");
    return {lo};
  }
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

void validate_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw GridError(std::string(what) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw GridError(std::string(what) + ": non-finite grid value");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw GridError(std::string(what) + ": grid must be strictly increasing");
  }
}

std::complex<double> effective_coupling(const CouplingParams& coupling,
                                        const DriveState& drive) {
  const double sigma_phi = drive.chirality_sign() * drive.phi;
  const std::complex<double> pol = 1.0 - I * drive.delta * std::exp(I * sigma_phi);
  return coupling.g * pol / std::sqrt(1.0 + drive.delta * drive.delta);
}

double bare_g_first_principles(const MagnetParams& magnet, const CavityParams& cavity,
                               double eta_overlap) {
  if (eta_overlap < 0) throw std::invalid_argument("bare_g: eta_overlap must be >= 0");
  const double N = magnet.spin_count();
  return magnet.gamma_angular() * eta_overlap *
         std::sqrt(5.0 * N * mu0_si * hbar_si * cavity.omega_c / (4.0 * cavity.volume()));
}

std::complex<double> s11(double omega, double omega_c, double omega0, double kappa,
                         double eta_kittel, std::complex<double> g_tilde) {
  if (kappa <= 0) throw std::invalid_argument("s11: kappa must be > 0");
  if (eta_kittel < 0) throw std::invalid_argument("s11: eta must be >= 0");
  const std::complex<double> magnon(omega0 - omega, -eta_kittel);
  const std::complex<double> den =
      std::complex<double>(omega - omega_c, kappa) * magnon + std::norm(g_tilde);
  return I * kappa * magnon / den - 1.0;
}

std::array<std::complex<double>, 2> hybrid_eigenvalues_io(double omega_c, double omega0,
                                                          double kappa, double eta_kittel,
                                                          std::complex<double> g_tilde) {
  const std::complex<double> wa(omega_c, -kappa);
  const std::complex<double> wb(omega0, -eta_kittel);
  if (g_tilde == 0.0) return {wa, wb};
  const std::complex<double> half_diff = 0.5 * (wa - wb);
  const std::complex<double> root = std::sqrt(half_diff * half_diff + std::norm(g_tilde));
  const std::complex<double> mean = 0.5 * (wa + wb);
  std::array<std::complex<double>, 2> ev{mean + root, mean - root};
  if (ev[0].real() < ev[1].real()) std::swap(ev[0], ev[1]);
  return ev;
}

std::array<std::complex<double>, 2> steady_state_amplitudes(
    double omega, double omega_c, double omega0, double kappa, double eta_kittel,
    std::complex<double> g_tilde, double eps_c) {
  // 0 = -i M (a, b)^T + (eps_c, 0)^T with
  // M = [[w_c - w - i kappa, g~], [g~*, w0 - w - i eta]].
  const std::complex<double> m11(omega_c - omega, -kappa);
  const std::complex<double> m22(omega0 - omega, -eta_kittel);
  const std::complex<double> det = m11 * m22 - std::norm(g_tilde);
  const std::complex<double> a = -I * eps_c * m22 / det;
  const std::complex<double> b = I * eps_c * std::conj(g_tilde) / det;
  return {a, b};
}

std::complex<double> s11_from_steady_state(double omega, double omega_c, double omega0,
                                           double kappa, double eta_kittel,
                                           std::complex<double> g_tilde, double eps_c) {
  if (eps_c <= 0) throw std::invalid_argument("s11_from_steady_state: eps_c must be > 0");
  const auto ab = steady_state_amplitudes(omega, omega_c, omega0, kappa, eta_kittel,
                                          g_tilde, eps_c);
  // a scales linearly with eps_c, so the ratio is drive-independent.
  return kappa * ab[0] / eps_c - 1.0;
}

double probe_strength(double probe_power, double kappa, double omega_probe) {
  if (probe_power < 0 || kappa <= 0 || omega_probe <= 0)
    throw std::invalid_argument("probe_strength: need D_c >= 0, kappa > 0, omega > 0");
  return std::sqrt(2.0 * kappa * probe_power / (hbar_si * omega_probe));
}

ComplexSpectrum reflection_spectrum(const SystemParams& params, const DriveState& drive,
                                    const std::vector<double>& freq_grid) {
  validate_grid(freq_grid, "freq_grid");
  const double omega0 = kittel_frequency(params.magnet, drive);
  const std::complex<double> gt = effective_coupling(params.coupling, drive);
  ComplexSpectrum spec;
  spec.freq = freq_grid;
  spec.drive = drive;
  spec.s11.resize(freq_grid.size());
  for (std::size_t i = 0; i < freq_grid.size(); ++i)
    spec.s11[i] = s11(freq_grid[i], params.cavity.omega_c, omega0, params.cavity.kappa,
                      params.magnet.eta_kittel, gt);
  return spec;
}

SpectralMap field_sweep_map(const SystemParams& params, const DriveState& drive,
                            const std::vector<double>& field_grid,
                            const std::vector<double>& freq_grid, bool with_phase) {
  validate_grid(field_grid, "field_grid");
  validate_grid(freq_grid, "freq_grid");
  if (field_grid.front() < 0) throw GridError("field_grid: mu0_H0 must be >= 0");
  SpectralMap map;
  map.axis1_name = "mu0_H0_T";
  map.axis2_name = "freq_rad_s";
  map.value_name = "s11_mag";
  map.axis1 = field_grid;
  map.axis2 = freq_grid;
  map.values.resize(field_grid.size() * freq_grid.size());
  if (with_phase) map.phase.resize(map.values.size());
  const std::complex<double> gt = effective_coupling(params.coupling, drive);
  fill_rows(field_grid.size(), [&](std::size_t i) {
    DriveState d = drive;
    d.mu0_H0 = field_grid[i];
    const double omega0 = kittel_frequency(params.magnet, d);
    for (std::size_t j = 0; j < freq_grid.size(); ++j) {
      const std::complex<double> v =
          s11(freq_grid[j], params.cavity.omega_c, omega0, params.cavity.kappa,
              params.magnet.eta_kittel, gt);
      map.values[i * freq_grid.size() + j] = std::abs(v);
      if (with_phase) map.phase[i * freq_grid.size() + j] = std::arg(v);
    }
  });
  return map;
}

SpectralMap phase_sweep_map(const SystemParams& params, const DriveState& base,
                            const std::vector<double>& phi_grid,
                            const std::vector<double>& freq_grid, bool with_phase) {
  validate_grid(phi_grid, "phi_grid");
  validate_grid(freq_grid, "freq_grid");
  SpectralMap map;
  map.axis1_name = "phi_rad";
  map.axis2_name = "freq_rad_s";
  map.value_name = "s11_mag";
  map.axis1 = phi_grid;
  map.axis2 = freq_grid;
  map.values.resize(phi_grid.size() * freq_grid.size());
  if (with_phase) map.phase.resize(map.values.size());
  // Resonant condition: the bias is set so the Kittel mode sits at omega_c.
  const double omega0 = params.cavity.omega_c;
  fill_rows(phi_grid.size(), [&](std::size_t i) {
    DriveState d = base;
    d.phi = wrap_phase(phi_grid[i]);
    const std::complex<double> gt = effective_coupling(params.coupling, d);
    for (std::size_t j = 0; j < freq_grid.size(); ++j) {
      const std::complex<double> v =
          s11(freq_grid[j], params.cavity.omega_c, omega0, params.cavity.kappa,
              params.magnet.eta_kittel, gt);
      map.values[i * freq_grid.size() + j] = std::abs(v);
      if (with_phase) map.phase[i * freq_grid.size() + j] = std::arg(v);
    }
  });
  return map;
}

SpectralMap splitting_map(const SystemParams& params, const DriveState& base,
                          const std::vector<double>& delta_grid,
                          const std::vector<double>& phi_grid) {
  validate_grid(delta_grid, "delta_grid");
  validate_grid(phi_grid, "phi_grid");
  if (delta_grid.front() < 0 || delta_grid.back() > 1.0)
    throw GridError("delta_grid must lie within [0, 1]");
  SpectralMap map;
  map.axis1_name = "delta";
  map.axis2_name = "phi_rad";
  map.value_name = "rabi_splitting_rad_s";
  map.axis1 = delta_grid;
  map.axis2 = phi_grid;
  map.values.resize(delta_grid.size() * phi_grid.size());
  fill_rows(delta_grid.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < phi_grid.size(); ++j) {
      DriveState d = base;
      d.delta = delta_grid[i];
      d.phi = wrap_phase(phi_grid[j]);
      map.values[i * phi_grid.size() + j] =
          2.0 * std::abs(effective_coupling(params.coupling, d));
    }
  });
  return map;
}

}  // namespace cmpol
