#include "cmpol/susceptibility.hpp"

#include <cmath>
#include <stdexcept>

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

constexpr double pole_guard_rel = 1e-6;

void check_args(double omega0, double omega, int h0_sign) {
  if (omega < 0) throw std::invalid_argument("susceptibility: omega must be >= 0");
  if (omega0 <= 0) throw std::invalid_argument("susceptibility: omega0 must be > 0");
  if (h0_sign != +1 && h0_sign != -1)
    throw std::invalid_argument("susceptibility: h0_sign must be +1 or -1");
}

void check_pole(double omega0, double omega, bool damped) {
  if (!damped && std::abs(omega - omega0) < pole_guard_rel * omega0)
    throw PoleError("undamped susceptibility evaluated within 1e-6*omega0 of the pole");
}

}  // namespace

ChiTensor chi_tensor(const MagnetParams& magnet, double omega0, double omega,
                     int h0_sign, bool damped) {
  check_args(omega0, omega, h0_sign);
  check_pole(omega0, omega, damped);
  const complexd w0 = damped ? complexd(omega0, magnet.eta_kittel) : complexd(omega0, 0.0);
  // Denominator kept as the factored product so the tensor and circular forms
  // stay bit-consistent near the pole.
  const complexd den = (w0 - omega) * (w0 + omega);
  const double wm = magnet.omega_m();
  return ChiTensor{w0 * wm / den, static_cast<double>(h0_sign) * omega * wm / den};
}

complexd chi_circular(const MagnetParams& magnet, double omega0, double omega,
                      int handedness, int h0_sign, bool damped) {
  check_args(omega0, omega, h0_sign);
  if (handedness != +1 && handedness != -1)
    throw std::invalid_argument("chi_circular: handedness must be +1 or -1");
  // chi± = wm/(w0 ∓ w) for +z bias; the bias sign swaps which component is
  // resonant. handedness*h0_sign = +1 is the chirality-matched, resonant case;
  // only that branch carries the pole.
  const double matched = static_cast<double>(handedness * h0_sign);
  if (matched > 0) check_pole(omega0, omega, damped);
  const complexd w0 = damped ? complexd(omega0, magnet.eta_kittel) : complexd(omega0, 0.0);
  return magnet.omega_m() / (w0 - matched * omega);
}

cvec2 magnetisation_response(const ChiTensor& chi, const cvec2& h) {
  return chi.apply(h);
}

}  // namespace cmpol
