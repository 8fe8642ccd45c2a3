#include <doctest.h>

#include <cmath>
#include <complex>

#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"
#include "cmpol/llg.hpp"
#include "cmpol/susceptibility.hpp"

using namespace cmpol;

namespace {

// Time-domain runs use a heavier damping than the preset so transients settle
// within microseconds of simulated time; eta tracks alpha*omega0 to keep the
// frequency- and time-domain pictures consistent.
MagnetParams llg_magnet(double alpha, double omega_ref) {
  const MagnetParams base = yig_sphere_preset();
  return MagnetParams(base.mu0_Ms, base.gamma, base.rho, base.sample_diameter, alpha,
                      alpha * omega_ref);
}

constexpr double field = 0.230;  // T -> omega0/2pi = 6.44 GHz
const double omega0 = omega_from_ghz(6.44);
constexpr double alpha_test = 5e-3;

PrecessionTrajectory run_drive(const MagnetParams& magnet, const DriveState& drive,
                               double h_rel, double omega_d, double spans = 12.0) {
  const double h_amp = h_rel * magnet.saturation_magnetisation();
  const double dt = two_pi / (64.0 * std::max(omega_d, omega0));
  const double t_end = spans / (alpha_test * omega0);
  return integrate_llg(magnet, drive, h_amp, omega_d, t_end, dt);
}

}  // namespace

TEST_CASE("equilibrium stays put") {
  const MagnetParams magnet = llg_magnet(alpha_test, omega0);
  const DriveState drive(0.0, 0.0, +1, field);
  const PrecessionTrajectory traj =
      integrate_llg(magnet, drive, 0.0, omega0, 200.0 * two_pi / omega0, two_pi / omega0 / 64);
  for (const auto& m : traj.m) {
    CHECK(m[0] == 0.0);
    CHECK(m[1] == 0.0);
    CHECK(m[2] == 1.0);
  }
  const PrecessionCone cone = steady_state_cone(traj, 0.25);
  CHECK(cone.cone_angle == 0.0);
  CHECK(cone.handedness == ConeHandedness::undefined);
}

TEST_CASE("norm is conserved by the renormalising integrator") {
  // conservative (alpha = 0) resonant drive over 1e4 periods
  const MagnetParams magnet = llg_magnet(0.0, omega0);
  const DriveState drive(1.0, -pi / 2, +1, field);
  const double h_amp = 1e-6 * magnet.saturation_magnetisation();
  const double dt = two_pi / omega0 / 64;
  const PrecessionTrajectory traj =
      integrate_llg(magnet, drive, h_amp, omega0, 1e4 * two_pi / omega0, dt, 16);
  double worst = 0.0;
  for (const auto& m : traj.m)
    worst = std::max(worst, std::abs(1.0 - std::hypot(m[0], m[1], m[2])));
  CHECK(worst < 1e-9);
}

TEST_CASE("step-size guards") {
  const MagnetParams magnet = llg_magnet(alpha_test, omega0);
  const DriveState drive(0.0, 0.0, +1, field);
  // dt coarser than T/50 is rejected up front
  CHECK_THROWS_AS(
      integrate_llg(magnet, drive, 0.0, omega0, 1e-9, two_pi / omega0 / 20.0),
      StepTooLarge);
}

TEST_CASE("matched drive precesses with the field, opposed drive barely moves") {
  const MagnetParams magnet = llg_magnet(alpha_test, omega0);
  const double h_rel = 1e-4;
  const PrecessionTrajectory matched =
      run_drive(magnet, DriveState(1.0, -pi / 2, +1, field), h_rel, omega0);
  const PrecessionTrajectory opposed =
      run_drive(magnet, DriveState(1.0, pi / 2, +1, field), h_rel, omega0);
  const PrecessionCone cm = steady_state_cone(matched, 0.25);
  const PrecessionCone co = steady_state_cone(opposed, 0.25);

  CHECK(cm.handedness == ConeHandedness::with_field);
  CHECK(co.handedness == ConeHandedness::against_field);
  CHECK(cm.cone_angle > 10.0 * co.cone_angle);

  // both circular loci
  CHECK(cm.ellipticity == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(co.ellipticity == doctest::Approx(1.0).epsilon(1e-3));

  // selectivity ratio matches |chi+|/|chi-| at resonance
  const std::complex<double> chip = chi_circular(magnet, omega0, omega0, +1, +1, true);
  const std::complex<double> chim = chi_circular(magnet, omega0, omega0, -1, +1, true);
  const double expected = std::abs(chip) / std::abs(chim);
  CHECK(cm.cone_angle / co.cone_angle == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("bias flip swaps handedness and outcome at fixed drive chirality") {
  const MagnetParams magnet = llg_magnet(alpha_test, omega0);
  const double h_rel = 1e-4;
  const PrecessionTrajectory up =
      run_drive(magnet, DriveState(1.0, -pi / 2, +1, field), h_rel, omega0);
  const PrecessionTrajectory down =
      run_drive(magnet, DriveState(1.0, -pi / 2, -1, field), h_rel, omega0);
  const PrecessionCone cu = steady_state_cone(up, 0.25);
  const PrecessionCone cd = steady_state_cone(down, 0.25);
  CHECK(cu.handedness == ConeHandedness::with_field);
  CHECK(cd.handedness == ConeHandedness::against_field);
  CHECK(cu.cone_angle > 10.0 * cd.cone_angle);
}

TEST_CASE("steady transverse response matches the damped susceptibility") {
  // Linear regime: the measured co-rotating amplitude <m+ e^{-iwt}> times Ms
  // equals chi+(w) h for a pure right-circular drive. The oracle evaluates
  // the susceptibility with eta = alpha*w, the exact linearised-LLG rate.
  const double h_rel = 1e-4;
  for (double x : {0.5, 0.8, 1.0, 1.3}) {
    const double wd = x * omega0;
    const MagnetParams magnet = llg_magnet(alpha_test, omega0);
    const MagnetParams oracle_magnet = llg_magnet(alpha_test, wd);
    const PrecessionTrajectory traj =
        run_drive(magnet, DriveState(1.0, -pi / 2, +1, field), h_rel, wd);
    const std::complex<double> measured =
        transverse_response(traj, 0.25, +1) * magnet.saturation_magnetisation();
    const std::complex<double> predicted =
        chi_circular(oracle_magnet, omega0, wd, +1, +1, true) * h_rel *
        magnet.saturation_magnetisation();
    CHECK(std::abs(measured - predicted) <= 5e-3 * std::abs(predicted));
  }
}

TEST_CASE("linear drive excites both circular components as chi predicts") {
  // A single-port (x-polarised) drive splits into equal co- and
  // counter-rotating parts: <m± e^{-iwt}> = chi± h/2.
  const double h_rel = 1e-4;
  const double wd = 0.8 * omega0;
  const MagnetParams magnet = llg_magnet(alpha_test, omega0);
  const MagnetParams oracle = llg_magnet(alpha_test, wd);
  const PrecessionTrajectory traj =
      run_drive(magnet, DriveState(0.0, 0.0, +1, field), h_rel, wd);
  const double Ms = magnet.saturation_magnetisation();
  for (int s : {+1, -1}) {
    const std::complex<double> measured = transverse_response(traj, 0.25, s) * Ms;
    const std::complex<double> predicted =
        chi_circular(oracle, omega0, wd, s, +1, true) * 0.5 * h_rel * Ms;
    CHECK(std::abs(measured - predicted) <= 0.01 * std::abs(predicted));
  }
}

TEST_CASE("phi sweep of the cone angle peaks at matched circular") {
  const MagnetParams magnet = llg_magnet(alpha_test, omega0);
  const double h_rel = 1e-4;
  double prev = -1.0;
  // from opposed (+90) to matched (-90): strictly growing cone
  for (double phi : {pi / 2, pi / 4, 0.0, -pi / 4, -pi / 2}) {
    const PrecessionTrajectory traj =
        run_drive(magnet, DriveState(1.0, phi, +1, field), h_rel, omega0, 14.0);
    const PrecessionCone cone = steady_state_cone(traj, 0.25);
    CHECK(cone.cone_angle > prev);
    prev = cone.cone_angle;
  }
}

TEST_CASE("unsettled trajectories are reported") {
  // undamped resonant drive keeps growing: no steady state. Short enough that
  // the secular growth across the window clearly exceeds 1% per period.
  const MagnetParams magnet = llg_magnet(0.0, omega0);
  const DriveState drive(1.0, -pi / 2, +1, field);
  const double h_amp = 1e-5 * magnet.saturation_magnetisation();
  const double dt = two_pi / omega0 / 64;
  const PrecessionTrajectory traj =
      integrate_llg(magnet, drive, h_amp, omega0, 48 * two_pi / omega0, dt);
  CHECK_THROWS_AS(steady_state_cone(traj, 0.25), NotSettled);
}
