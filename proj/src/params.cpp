#include "cmpol/params.hpp"

#include <cmath>
#include <stdexcept>

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace

MagnetParams::MagnetParams(double mu0_Ms_, double gamma_, double rho_,
                           double sample_diameter_, double alpha_, double eta_kittel_)
    : mu0_Ms(mu0_Ms_),
      gamma(gamma_),
      rho(rho_),
      sample_diameter(sample_diameter_),
      alpha(alpha_),
      eta_kittel(eta_kittel_) {
  require(mu0_Ms > 0, "MagnetParams: mu0_Ms must be > 0");
  require(gamma > 0, "MagnetParams: gamma must be > 0");
  require(rho > 0, "MagnetParams: rho must be > 0");
  require(sample_diameter > 0, "MagnetParams: sample_diameter must be > 0");
  require(alpha >= 0, "MagnetParams: alpha must be >= 0");
  require(eta_kittel >= 0, "MagnetParams: eta_kittel must be >= 0");
}

double MagnetParams::sample_volume() const {
  return pi / 6.0 * sample_diameter * sample_diameter * sample_diameter;
}

CavityParams::CavityParams(double a_, double b_, double c_, double omega_c_,
                           double kappa_, ModeIndex mode1_, ModeIndex mode2_)
    : a(a_), b(b_), c(c_), omega_c(omega_c_), kappa(kappa_), mode1(mode1_), mode2(mode2_) {
  require(a > 0 && b > 0 && c > 0, "CavityParams: dimensions must be > 0");
  require(omega_c > 0, "CavityParams: omega_c must be > 0");
  require(kappa > 0, "CavityParams: kappa must be > 0");
  require(mode1.m >= 0 && mode1.n >= 0 && mode2.m >= 0 && mode2.n >= 0,
          "CavityParams: mode indices must be >= 0");
}

DriveState::DriveState(double delta_, double phi_, int h0_sign_, double mu0_H0_,
                       double probe_power_)
    : delta(delta_),
      phi(wrap_phase(phi_)),
      h0_sign(h0_sign_),
      mu0_H0(mu0_H0_),
      probe_power(probe_power_) {
  require(delta >= 0.0 && delta <= 1.0, "DriveState: delta must be in [0, 1]");
  require(h0_sign == +1 || h0_sign == -1, "DriveState: h0_sign must be +1 or -1");
  require(mu0_H0 >= 0, "DriveState: mu0_H0 must be >= 0 (direction is h0_sign)");
  require(probe_power >= 0, "DriveState: probe_power must be >= 0");
}

CouplingParams::CouplingParams(double g_, double eta_overlap_)
    : g(g_), eta_overlap(eta_overlap_) {
  require(g >= 0, "CouplingParams: g must be >= 0");
  require(eta_overlap > 0 && eta_overlap <= 1.0, "CouplingParams: eta_overlap must be in (0, 1]");
}

double kittel_frequency(const MagnetParams& magnet, const DriveState& drive) {
  return magnet.gamma_angular() * drive.mu0_H0;
}

double field_for_resonance(const MagnetParams& magnet, double omega_target) {
  if (omega_target < 0) throw std::invalid_argument("field_for_resonance: omega_target < 0");
  return omega_target / magnet.gamma_angular();
}

double wrap_phase(double phi) {
  double w = std::remainder(phi, two_pi);
  if (w <= -pi) w += two_pi;
  return w;
}

MagnetParams yig_sphere_preset() {
  const double eta = omega_from_mhz(0.7);
  const double omega0_at_230mT = omega_from_ghz(6.44);
  // alpha chosen so the frequency-domain decay eta and the time-domain Gilbert
  // damping agree at the 230 mT operating point (alpha = eta/omega0 ~ 1.1e-4).
  return MagnetParams(0.1758, 28.0, 4.22e27, 0.25e-3, eta / omega0_at_230mT, eta);
}

CavityParams square_cavity_preset() {
  // omega_c is the measured, tuned resonance; the ideal closed-box TE120
  // eigenfrequency of a 50 mm square would sit higher (~6.7 GHz).
  return CavityParams(50e-3, 50e-3, 5e-3, omega_from_ghz(6.44), omega_from_mhz(4.45));
}

CouplingParams coupling_preset() { return CouplingParams(omega_from_mhz(3.9), 1.0); }

SystemParams paper_system() {
  return SystemParams{yig_sphere_preset(), square_cavity_preset(), coupling_preset()};
}

}  // namespace cmpol
