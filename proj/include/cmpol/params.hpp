#pragma once

#include <array>

#include "cmpol/constants.hpp"

namespace cmpol {

/// Material constants of the magnetic sphere.
///
/// Unit conventions, fixed across the library:
///  - gamma is the *linear-frequency* gyromagnetic ratio in GHz/T, so the
///    Kittel frequency is omega0 = 2*pi*gamma*1e9*mu0_H0 [rad/s].
///  - All stored rates (eta_kittel) are angular [rad/s].
struct MagnetParams {
  double mu0_Ms;           // saturation induction mu0*Ms [T]
  double gamma;            // gyromagnetic ratio [GHz/T], linear-frequency convention
  double rho;              // spin density [1/m^3]
  double sample_diameter;  // [m]
  double alpha;            // Gilbert damping, dimensionless
  double eta_kittel;       // Kittel-mode decay rate [rad/s]

  MagnetParams(double mu0_Ms_, double gamma_, double rho_, double sample_diameter_,
               double alpha_, double eta_kittel_);

  double omega_m() const { return two_pi * gamma * 1e9 * mu0_Ms; }     // [rad/s]
  double gamma_angular() const { return two_pi * gamma * 1e9; }        // [rad/s/T]
  double sample_volume() const;                                        // (pi/6) d^3 [m^3]
  double spin_count() const { return rho * sample_volume(); }          // N = rho*delta_v
  double saturation_magnetisation() const { return mu0_Ms / mu0_si; }  // Ms [A/m]
};

struct ModeIndex {
  int m = 0;
  int n = 0;
  bool operator==(const ModeIndex&) const = default;
};

/// Rectangular two-port cavity. omega_c and kappa are measured quantities,
/// not recomputed from the box dimensions.
struct CavityParams {
  double a, b, c;    // inner dimensions [m]; z is the short axis
  double omega_c;    // cavity angular resonance frequency [rad/s]
  double kappa;      // photon decay rate [rad/s]
  ModeIndex mode1;   // excited by port 1 (l = 0 implied)
  ModeIndex mode2;   // excited by port 2

  CavityParams(double a_, double b_, double c_, double omega_c_, double kappa_,
               ModeIndex mode1_ = {1, 2}, ModeIndex mode2_ = {2, 1});

  double volume() const { return a * b * c; }
  std::array<double, 3> centre() const { return {a / 2, b / 2, c / 2}; }
};

/// The experiment's control knobs: two-port amplitude ratio delta, relative
/// phase phi, bias-field direction and magnitude, probe power.
///
/// delta > 1 is rejected: that regime mixes transmission into the reflection
/// signal and is outside the model's validity.
struct DriveState {
  double delta;        // amplitude ratio |h_y|/|h_x|, in [0, 1]
  double phi;          // relative phase arg(h_y) - arg(h_x), wrapped to (-pi, pi]
  int h0_sign;         // bias direction along +z or -z
  double mu0_H0;       // bias induction [T], >= 0; direction lives in h0_sign
  double probe_power;  // D_c [W]

  DriveState(double delta_, double phi_, int h0_sign_ = +1, double mu0_H0_ = 0.0,
             double probe_power_ = 1e-3);

  /// Global chirality sign: sigma = -h0_sign. With bias along +z the coupling
  /// is maximal at phi = -90 deg (right-circular drive) and annihilated at
  /// phi = +90 deg; flipping the bias mirrors the pattern in phi.
  int chirality_sign() const { return -h0_sign; }
};

/// Magnon-photon coupling inputs of the quantised model.
struct CouplingParams {
  double g;            // bare coupling [rad/s]
  double eta_overlap;  // spatial overlap integral, in (0, 1]

  CouplingParams(double g_, double eta_overlap_ = 1.0);
};

/// Everything a sweep needs.
struct SystemParams {
  MagnetParams magnet;
  CavityParams cavity;
  CouplingParams coupling;
};

/// Natural precession (Kittel) frequency omega0 = 2*pi*gamma*mu0_H0 [rad/s].
/// Independent of the bias sign.
double kittel_frequency(const MagnetParams& magnet, const DriveState& drive);

/// Inverse of kittel_frequency: the bias induction [T] that puts the Kittel
/// mode at omega_target.
double field_for_resonance(const MagnetParams& magnet, double omega_target);

/// Wrap an angle to (-pi, pi].
double wrap_phase(double phi);

// Default parameter set: 0.25 mm YIG sphere in the 50x50x5 mm two-port square
// cavity, with the measured rates kappa/2pi = 4.45 MHz, eta/2pi = 0.7 MHz,
// g/2pi = 3.9 MHz and resonance at 6.44 GHz (230 mT).
MagnetParams yig_sphere_preset();
CavityParams square_cavity_preset();
CouplingParams coupling_preset();
SystemParams paper_system();

}  // namespace cmpol
