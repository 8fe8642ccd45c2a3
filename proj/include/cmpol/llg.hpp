#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cmpol/params.hpp"

namespace cmpol {

/// Macrospin trajectory: unit magnetisation samples plus the applied drive.
struct PrecessionTrajectory {
  std::vector<double> times;                       // [s]
  std::vector<std::array<double, 3>> m;            // unit vectors, |m| = 1 to 1e-9
  std::vector<std::array<double, 2>> drive_record; // h_x(t), h_y(t) [A/m]
  double omega_drive = 0.0;                        // [rad/s]
  double dt = 0.0;                                 // stored-step spacing [s]
  int h0_sign = +1;
};

enum class ConeHandedness { with_field, against_field, undefined };

/// Steady-state precession cone extracted from the settled tail of a
/// trajectory. Handedness is only defined above a 1e-9 rad floor.
struct PrecessionCone {
  double cone_angle;           // mean polar amplitude [rad]
  ConeHandedness handedness;
  double ellipticity;          // minor/major of the transverse locus, [0, 1]
};

/// Fixed-step integration of the driven macrospin
///   dm/dt = -gamma mu0 m x H_eff + alpha m x dm/dt,
///   H_eff = z_hat h0_sign H0 + Re[(x_hat + y_hat delta e^{i phi}) h e^{i w t}],
/// solved in the equivalent Landau-Lifshitz form with a classic RK4 step and
/// per-step renormalisation of m. Starts from equilibrium m = h0_sign z_hat.
///
/// dt must resolve both the Larmor and the drive period (dt <= T/50), and the
/// per-period norm drift must stay below 1e-6, else StepTooLarge. store_every
/// thins the recorded samples; integration always runs at dt.
PrecessionTrajectory integrate_llg(const MagnetParams& magnet, const DriveState& drive,
                                   double h_amplitude, double omega_drive, double t_end,
                                   double dt, int store_every = 1);

/// Cone statistics over the trailing settle_fraction of the trajectory. The
/// window must span at least 10 drive periods and the windowed amplitude must
/// drift by less than 1% per period, else NotSettled.
PrecessionCone steady_state_cone(const PrecessionTrajectory& traj, double settle_fraction);

/// Complex amplitude of the circular component m^s = m_x + i s m_y at the
/// drive frequency, averaged over the whole drive periods inside the settled
/// window: returns <m^s(t) e^{-i w t}>. For a drive phasor h the linear
/// prediction is chi^s * (h_x + i s h_y) / ... i.e. the locus radius of the
/// co-rotating part; used to cross-check against the susceptibility tensor.
std::complex<double> transverse_response(const PrecessionTrajectory& traj,
                                         double settle_fraction, int s);

}  // namespace cmpol
