#include <doctest.h>

#include <cmath>
#include <complex>

#include "cmpol/cavity_fields.hpp"
#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/fitting.hpp"
#include "cmpol/perturbation.hpp"
#include "cmpol/quantum_io.hpp"

using namespace cmpol;

namespace {
const SystemParams sys = paper_system();
const double wc = sys.cavity.omega_c;
const double kappa = sys.cavity.kappa;
const double eta = sys.magnet.eta_kittel;
const double g = sys.coupling.g;
const double resonant_field = 0.23;
}  // namespace

TEST_CASE("effective coupling magnitudes") {
  CHECK(std::abs(effective_coupling(sys.coupling, DriveState(0.0, 0.0))) ==
        doctest::Approx(g).epsilon(1e-14));

  const DriveState matched(1.0, -pi / 2, +1);
  const double gm = std::abs(effective_coupling(sys.coupling, matched));
  CHECK(gm == doctest::Approx(std::sqrt(2.0) * g).epsilon(1e-14));
  CHECK(mhz_from_omega(gm) == doctest::Approx(5.5154).epsilon(1e-4));
  CHECK(mhz_from_omega(2 * gm) == doctest::Approx(11.03).epsilon(1e-3));

  const DriveState opposed(1.0, pi / 2, +1);
  CHECK(std::abs(effective_coupling(sys.coupling, opposed)) <= 1e-12 * g);
}

TEST_CASE("effective coupling invariant over the polarisation plane") {
  for (double delta : {0.0, 0.25, 0.6, 1.0}) {
    for (double phi = -pi; phi <= pi + 1e-9; phi += pi / 7) {
      for (int sign : {+1, -1}) {
        const DriveState d(delta, phi, sign);
        const double g2 = std::norm(effective_coupling(sys.coupling, d));
        const double factor = polarisation_factor(d);
        CHECK(g2 ==
              doctest::Approx(g * g * factor / (1.0 + delta * delta)).epsilon(1e-12));
        CHECK(std::abs(effective_coupling(sys.coupling, d)) <=
              std::sqrt(2.0) * g * (1.0 + 1e-14));
      }
    }
  }
  // periodic in phi (up to the rounding of the wrapped argument)
  const std::complex<double> base = effective_coupling(sys.coupling, DriveState(0.7, 0.9));
  const std::complex<double> wrapped =
      effective_coupling(sys.coupling, DriveState(0.7, 0.9 + two_pi));
  CHECK(std::abs(base - wrapped) <= 1e-14 * std::abs(base));
}

TEST_CASE("first-principles bare coupling") {
  const double g_fp = bare_g_first_principles(sys.magnet, sys.cavity, 1.0);
  // scales as sqrt(N) through the sample volume and 1/sqrt(v)
  const MagnetParams big(sys.magnet.mu0_Ms, sys.magnet.gamma, sys.magnet.rho,
                         sys.magnet.sample_diameter * std::cbrt(2.0), sys.magnet.alpha,
                         sys.magnet.eta_kittel);
  CHECK(bare_g_first_principles(big, sys.cavity, 1.0) ==
        doctest::Approx(std::sqrt(2.0) * g_fp).epsilon(1e-9));
  CHECK(bare_g_first_principles(sys.magnet, sys.cavity, 0.0) == 0.0);
  // desk-scale estimate lands within a factor of 3 of the fitted 3.9 MHz
  const double g_mhz = mhz_from_omega(g_fp);
  CHECK(g_mhz > 3.9 / 3.0);
  CHECK(g_mhz < 3.9 * 3.0);
}

TEST_CASE("bare cavity reflection") {
  // critical coupling: total absorption at resonance
  CHECK(std::abs(s11(wc, wc, 0.9 * wc, kappa, eta, 0.0)) <= 1e-14);
  // far off resonance: full reflection
  CHECK(std::abs(s11(wc + 2000 * kappa, wc, 0.9 * wc, kappa, eta, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("resonant spectrum dips sit 11 MHz apart at matched circular drive") {
  const DriveState matched(1.0, -pi / 2, +1, resonant_field);
  const SplittingResult split = extract_splitting(sys, matched);
  CHECK(split.resolved);
  CHECK(mhz_from_omega(split.delta_omega) == doctest::Approx(11.0).epsilon(0.3 / 11.0));
}

TEST_CASE("passivity on a broad random-ish grid") {
  const DriveState d(0.8, 1.1, -1, resonant_field);
  const std::complex<double> gt = effective_coupling(sys.coupling, d);
  for (int k = -300; k <= 300; ++k) {
    const double w = wc + k * 0.3 * kappa;
    CHECK(std::abs(s11(w, wc, 1.0007 * wc, kappa, eta, gt)) <= 1.0 + 1e-12);
  }
  // and across rate/coupling combinations, including eta = 0
  for (double kap_scale : {0.2, 1.0, 6.0}) {
    for (double eta_scale : {0.0, 1.0, 12.0}) {
      for (double g_scale : {0.0, 0.7, 3.0}) {
        for (int k = -40; k <= 40; ++k) {
          const double w = wc + k * 0.7 * kappa;
          const double mag = std::abs(s11(w, wc, 0.999 * wc, kap_scale * kappa,
                                          eta_scale * eta, g_scale * gt));
          CHECK(mag <= 1.0 + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("perturbation branch overlay tracks the sweep dips") {
  // Calibrate Wp/Wc from the drive's effective coupling, then check that the
  // closed-form branches sit on the |S11| dip ridges within one grid cell.
  const DriveState matched(1.0, -pi / 2, +1, resonant_field);
  const std::complex<double> gt = effective_coupling(sys.coupling, matched);
  const double r = 2.0 * std::norm(gt) / (wc * sys.magnet.omega_m());
  const auto fields = linear_grid(0.2295, 0.2305, 21);
  const auto freqs = linear_grid(wc - omega_from_mhz(20), wc + omega_from_mhz(20), 401);
  const double cell = freqs[1] - freqs[0];
  const SpectralMap map = field_sweep_map(sys, matched, fields, freqs);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    DriveState d = matched;
    d.mu0_H0 = fields[i];
    const double w0 = kittel_frequency(sys.magnet, d);
    const HybridBranches br = hybrid_eigenfrequencies(wc, w0, sys.magnet, r);
    std::vector<double> row(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) row[j] = map.at(i, j);
    const auto dips = find_dips(freqs, row, 0.05);
    REQUIRE(dips.size() == 2);
    CHECK(std::abs(dips.front() - br.omega_b) <= 1.5 * cell);
    CHECK(std::abs(dips.back() - br.omega_a) <= 1.5 * cell);
  }
}

TEST_CASE("io eigenvalues: decoupled and degenerate limits") {
  const auto dec = hybrid_eigenvalues_io(wc, 0.99 * wc, kappa, eta, 0.0);
  CHECK(dec[0] == std::complex<double>(wc, -kappa));
  CHECK(dec[1] == std::complex<double>(0.99 * wc, -eta));

  const auto deg = hybrid_eigenvalues_io(wc, wc, 0.0, 0.0, g);
  CHECK(deg[0].real() == doctest::Approx(wc + g).epsilon(1e-14));
  CHECK(deg[1].real() == doctest::Approx(wc - g).epsilon(1e-14));
  CHECK(deg[0].imag() == 0.0);
}

TEST_CASE("io gap matches perturbation theory when g is calibrated") {
  // 2g = sqrt(2 wc wm Wp/Wc) at the single-port drive makes the two gap
  // formulas algebraically identical for every detuning.
  const DriveState single(0.0, 0.0, +1, resonant_field);
  const double r = wp_over_wc(sys.cavity, single, sys.magnet);
  const double g_cal = 0.5 * rabi_splitting_pert(wc, sys.magnet, r);
  for (double w0 = wc - 40 * g_cal; w0 <= wc + 40 * g_cal; w0 += 4 * g_cal) {
    const auto ev = hybrid_eigenvalues_io(wc, w0, 0.0, 0.0, g_cal);
    const double gap_io = ev[0].real() - ev[1].real();
    const double gap_pt = hybrid_eigenfrequencies(wc, w0, sys.magnet, r).gap();
    CHECK(gap_io == doctest::Approx(gap_pt).epsilon(1e-9));
  }
}

TEST_CASE("dips approach the eigenvalue real parts as the rates shrink") {
  const DriveState matched(1.0, -pi / 2, +1, resonant_field);
  const std::complex<double> gt = effective_coupling(sys.coupling, matched);
  const double k10 = kappa / 10, e10 = eta / 10;
  SystemParams weak = sys;
  weak.cavity = CavityParams(sys.cavity.a, sys.cavity.b, sys.cavity.c, wc, k10);
  weak.magnet = MagnetParams(sys.magnet.mu0_Ms, sys.magnet.gamma, sys.magnet.rho,
                             sys.magnet.sample_diameter, sys.magnet.alpha, e10);
  const SplittingResult split = extract_splitting(weak, matched);
  const auto ev = hybrid_eigenvalues_io(wc, wc, k10, e10, gt);
  const double gap = ev[0].real() - ev[1].real();
  REQUIRE(split.resolved);
  CHECK(std::abs(split.dip_freqs[0] - ev[1].real()) <= 0.01 * gap);
  CHECK(std::abs(split.dip_freqs[1] - ev[0].real()) <= 0.01 * gap);
}

TEST_CASE("steady state cancels the probe strength in the ratio") {
  const DriveState d(0.5, -0.8, +1, resonant_field);
  const std::complex<double> gt = effective_coupling(sys.coupling, d);
  const double w = wc + 2.0 * kappa;
  const std::complex<double> a = s11_from_steady_state(w, wc, wc, kappa, eta, gt, 1.0);
  const std::complex<double> b = s11_from_steady_state(w, wc, wc, kappa, eta, gt, 1e3);
  CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  // and the steady-state route reproduces the closed form
  CHECK(std::abs(a - s11(w, wc, wc, kappa, eta, gt)) <= 1e-12);
}

TEST_CASE("probe strength scaling") {
  CHECK(probe_strength(0.0, kappa, wc) == 0.0);
  CHECK(probe_strength(4e-3, kappa, wc) ==
        doctest::Approx(2.0 * probe_strength(1e-3, kappa, wc)).epsilon(1e-14));
}

TEST_CASE("field sweep topology: avoided crossing vs crossing") {
  const auto fields = linear_grid(0.2285, 0.2315, 41);
  const auto freqs = linear_grid(wc - omega_from_mhz(20), wc + omega_from_mhz(20), 801);

  const SpectralMap matched =
      field_sweep_map(sys, DriveState(1.0, -pi / 2, +1, resonant_field), fields, freqs);
  const SpectralMap opposed =
      field_sweep_map(sys, DriveState(1.0, pi / 2, +1, resonant_field), fields, freqs);

  // opposed chirality: every field column keeps a dip pinned at omega_c
  double max_dev = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::vector<double> row(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) row[j] = opposed.at(i, j);
    const auto dips = find_dips(freqs, row, 0.1);
    REQUIRE(dips.size() == 1);
    max_dev = std::max(max_dev, std::abs(dips[0] - wc));
  }
  CHECK(max_dev <= (freqs[1] - freqs[0]));

  // matched chirality: minimum branch separation across the sweep equals
  // 2|g~| within the grid resolution
  const double expect = 2.0 * std::abs(effective_coupling(sys.coupling,
                                                          DriveState(1.0, -pi / 2, +1)));
  double min_sep = 1e300;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::vector<double> row(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) row[j] = matched.at(i, j);
    const auto dips = find_dips(freqs, row, 0.1);
    if (dips.size() >= 2) min_sep = std::min(min_sep, dips.back() - dips.front());
  }
  CHECK(std::abs(min_sep - expect) <= 2.0 * (freqs[1] - freqs[0]));
}

TEST_CASE("phase map: sharp phase change co-located with amplitude dips") {
  const DriveState matched(1.0, -pi / 2, +1, resonant_field);
  const auto freqs = linear_grid(wc - omega_from_mhz(15), wc + omega_from_mhz(15), 3001);
  const ComplexSpectrum spec = reflection_spectrum(sys, matched, freqs);
  const auto mags = spec.magnitude();
  const auto phases = spec.phase();
  const auto dips = find_dips(freqs, mags, 0.1);
  REQUIRE(dips.size() == 2);
  for (double fd : dips) {
    // phase swing within +-kappa of the dip exceeds a pi/2 scale
    double lo = 1e300, hi = -1e300;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      if (std::abs(freqs[j] - fd) < kappa) {
        lo = std::min(lo, phases[j]);
        hi = std::max(hi, phases[j]);
      }
    }
    CHECK(hi - lo > 1.5);
  }
}

TEST_CASE("sweep maps validate their grids") {
  const DriveState d(0.0, 0.0, +1, resonant_field);
  CHECK_THROWS_AS(field_sweep_map(sys, d, {}, {wc}), GridError);
  CHECK_THROWS_AS(field_sweep_map(sys, d, {0.23, 0.23}, {wc - 1.0, wc + 1.0}), GridError);
  CHECK_THROWS_AS(phase_sweep_map(sys, d, {0.0, -1.0}, {wc - 1.0, wc + 1.0}), GridError);
  CHECK_THROWS_AS(splitting_map(sys, d, {0.0, 1.2}, {0.0, 1.0}), GridError);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), GridError);
}

TEST_CASE("phase sweep splitting structure over phi") {
  const auto phis = linear_grid(-pi, pi, 25);
  const auto freqs = linear_grid(wc - omega_from_mhz(10), wc + omega_from_mhz(10), 2001);
  const SpectralMap map = phase_sweep_map(sys, DriveState(1.0, 0.0, +1, resonant_field),
                                          phis, freqs);
  // splitting per phi row, matched maximal, opposed unresolved
  double best = -1.0, best_phi = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    std::vector<double> row(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) row[j] = map.at(i, j);
    const auto dips = find_dips(freqs, row, 0.1);
    const double sep = dips.size() >= 2 ? dips.back() - dips.front() : 0.0;
    if (sep > best) {
      best = sep;
      best_phi = phis[i];
    }
    if (std::abs(phis[i] - pi / 2) < 1e-9) CHECK(dips.size() == 1);  // annihilation
    if (std::abs(phis[i]) < 1e-9)  // linear drive keeps the 2g splitting
      CHECK(mhz_from_omega(sep) == doctest::Approx(7.8).epsilon(0.3 / 7.8));
  }
  CHECK(best_phi == doctest::Approx(-pi / 2).epsilon(1e-12));

  // bias flip mirrors the petal pattern in phi. On the exactly-negated grid
  // the symmetry is bitwise except at the +-pi seam, where the wrap moves -pi
  // to +pi and shifts sin by ~2e-16; stay safely inside the 1e-12 contract.
  std::vector<double> neg(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) neg[i] = -phis[phis.size() - 1 - i];
  const SpectralMap flipped =
      phase_sweep_map(sys, DriveState(1.0, 0.0, -1, resonant_field), neg, freqs);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const std::size_t mirror = phis.size() - 1 - i;
    for (std::size_t j = 0; j < freqs.size(); ++j)
      CHECK(std::abs(map.at(i, j) - flipped.at(mirror, j)) <= 1e-13);
  }
}

TEST_CASE("splitting map boundary rows and 2|g~| surface") {
  const auto deltas = linear_grid(0.0, 1.0, 11);
  const auto phis = linear_grid(-pi, pi, 13);
  const SpectralMap map = splitting_map(sys, DriveState(0.0, 0.0, +1), deltas, phis);
  for (std::size_t j = 0; j < phis.size(); ++j) {
    CHECK(mhz_from_omega(map.at(0, j)) == doctest::Approx(7.8).epsilon(2e-3));
    CHECK(map.at(0, j) == map.at(0, 0));  // delta = 0 row is phi-independent
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = 0; j < phis.size(); ++j) {
      const DriveState d(deltas[i], phis[j], +1);
      CHECK(map.at(i, j) ==
            doctest::Approx(2.0 * std::abs(effective_coupling(sys.coupling, d)))
                .epsilon(1e-14));
    }
  }
  // wrap continuity: phi = -pi and +pi columns coincide
  for (std::size_t i = 0; i < deltas.size(); ++i)
    CHECK(map.at(i, 0) == doctest::Approx(map.at(i, phis.size() - 1)).epsilon(1e-12));
}
