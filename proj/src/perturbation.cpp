#include "cmpol/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

constexpr double residual_pole_guard = 1e-9;  // relative to omega0

double bisect(double lo, double hi, auto&& f) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw Error("hybrid_roots_bisection: bracket does not straddle a root");
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double detuning_residual(double omega, double omega_c, double omega0,
                         const MagnetParams& magnet, double wp_over_wc) {
  if (wp_over_wc < 0) throw std::invalid_argument("detuning_residual: Wp/Wc must be >= 0");
  if (std::abs(omega - omega0) < residual_pole_guard * omega0)
    throw PoleError("detuning_residual evaluated at the magnon pole omega = omega0");
  const double chi_term = omega0 * magnet.omega_m() / ((omega0 - omega) * (omega0 + omega));
  return (omega - omega_c) / omega_c + chi_term * wp_over_wc;
}

HybridBranches hybrid_eigenfrequencies(double omega_c, double omega0,
                                       const MagnetParams& magnet, double wp_over_wc) {
  if (wp_over_wc < 0)
    throw std::invalid_argument("hybrid_eigenfrequencies: Wp/Wc must be >= 0");
  const double d = omega_c - omega0;
  const double root = std::sqrt(d * d + 2.0 * omega_c * magnet.omega_m() * wp_over_wc);
  return HybridBranches{0.5 * (omega_c + omega0 + root), 0.5 * (omega_c + omega0 - root)};
}

double rabi_splitting_pert(double omega_c, const MagnetParams& magnet,
                           double wp_over_wc) {
  if (wp_over_wc < 0) throw std::invalid_argument("rabi_splitting_pert: Wp/Wc must be >= 0");
  return std::sqrt(2.0 * omega_c * magnet.omega_m() * wp_over_wc);
}

HybridBranches hybrid_roots_bisection(double omega_c, double omega0,
                                      const MagnetParams& magnet, double wp_over_wc,
                                      double kappa_window) {
  const HybridBranches seed = hybrid_eigenfrequencies(omega_c, omega0, magnet, wp_over_wc);
  if (wp_over_wc == 0.0) return seed;  // decoupled: the residual root is just omega_c
  const double guard = 2.0 * residual_pole_guard * omega0;
  auto f = [&](double w) {
    return detuning_residual(w, omega_c, omega0, magnet, wp_over_wc);
  };
  // The pole at omega0 always lies between the branches; approach it from
  // either side only as far as the residual's own guard allows.
  const double lower = bisect(seed.omega_b - 5.0 * kappa_window, omega0 - guard, f);
  const double upper = bisect(omega0 + guard, seed.omega_a + 5.0 * kappa_window, f);
  return HybridBranches{upper, lower};
}

}  // namespace cmpol
