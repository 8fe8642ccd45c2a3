#include "cmpol/llg.hpp"

#include <cmath>
#include <stdexcept>

#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

using vec3 = std::array<double, 3>;

vec3 cross(const vec3& u, const vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double norm(const vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

PrecessionTrajectory integrate_llg(const MagnetParams& magnet, const DriveState& drive,
                                   double h_amplitude, double omega_drive, double t_end,
                                   double dt, int store_every) {
  if (dt <= 0 || t_end <= 0) throw std::invalid_argument("integrate_llg: dt, t_end must be > 0");
  if (h_amplitude < 0) throw std::invalid_argument("integrate_llg: h_amplitude must be >= 0");
  if (omega_drive < 0) throw std::invalid_argument("integrate_llg: omega_drive must be >= 0");
  if (store_every < 1) throw std::invalid_argument("integrate_llg: store_every must be >= 1");

  const double omega0 = magnet.gamma_angular() * drive.mu0_H0;
  const double omega_fast = std::max(omega0, omega_drive);
  if (omega_fast > 0 && dt > two_pi / omega_fast / 50.0)
    throw StepTooLarge("integrate_llg: dt must be <= T/50 of the fastest precession");

  const double gp = magnet.gamma_angular() * mu0_si / (1.0 + magnet.alpha * magnet.alpha);
  const double alpha = magnet.alpha;
  const double H0z = drive.h0_sign * drive.mu0_H0 / mu0_si;  // [A/m]
  const double cphi = std::cos(drive.phi);
  const double sphi = std::sin(drive.phi);

  auto drive_field = [&](double t) -> std::array<double, 2> {
    // Re[(x + y delta e^{i phi}) h e^{i w t}]
    const double c = std::cos(omega_drive * t);
    const double s = std::sin(omega_drive * t);
    return {h_amplitude * c, h_amplitude * drive.delta * (c * cphi - s * sphi)};
  };

  // Landau-Lifshitz form of the Gilbert equation:
  //   dm/dt = -gp [ m x H + alpha m x (m x H) ].
  auto deriv = [&](const vec3& m, double t) -> vec3 {
    const auto h = drive_field(t);
    const vec3 H{h[0], h[1], H0z};
    const vec3 mxH = cross(m, H);
    const vec3 mxmxH = cross(m, mxH);
    return {-gp * (mxH[0] + alpha * mxmxH[0]), -gp * (mxH[1] + alpha * mxmxH[1]),
            -gp * (mxH[2] + alpha * mxmxH[2])};
  };

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  const double T_fast = omega_fast > 0 ? two_pi / omega_fast : t_end;
  const auto steps_per_period =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(T_fast / dt)));

  PrecessionTrajectory traj;
  traj.omega_drive = omega_drive;
  traj.dt = dt * store_every;
  traj.h0_sign = drive.h0_sign;
  traj.times.reserve(steps / store_every + 2);
  traj.m.reserve(steps / store_every + 2);
  traj.drive_record.reserve(steps / store_every + 2);

  vec3 m{0.0, 0.0, static_cast<double>(drive.h0_sign)};
  double drift_acc = 0.0;
  std::size_t drift_window = 0;

  auto record = [&](std::size_t i) {
    const double t = static_cast<double>(i) * dt;
    traj.times.push_back(t);
    traj.m.push_back(m);
    traj.drive_record.push_back(drive_field(t));
  };
  record(0);

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const vec3 k1 = deriv(m, t);
    const vec3 m2{m[0] + 0.5 * dt * k1[0], m[1] + 0.5 * dt * k1[1], m[2] + 0.5 * dt * k1[2]};
    const vec3 k2 = deriv(m2, t + 0.5 * dt);
    const vec3 m3{m[0] + 0.5 * dt * k2[0], m[1] + 0.5 * dt * k2[1], m[2] + 0.5 * dt * k2[2]};
    const vec3 k3 = deriv(m3, t + 0.5 * dt);
    const vec3 m4{m[0] + dt * k3[0], m[1] + dt * k3[1], m[2] + dt * k3[2]};
    const vec3 k4 = deriv(m4, t + dt);
    for (int c = 0; c < 3; ++c)
      m[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);

    // Renormalise; the pre-normalisation drift, accumulated over one period,
    // is the step-size health check.
    const double n = norm(m);
    drift_acc += std::abs(n - 1.0);
    for (int c = 0; c < 3; ++c) m[c] /= n;
    if (++drift_window >= steps_per_period) {
      if (drift_acc > 1e-6)
        throw StepTooLarge("integrate_llg: norm drift exceeded 1e-6 within one period");
      drift_acc = 0.0;
      drift_window = 0;
    }

    // Only record on the thinning boundary so stored samples stay uniformly
    // spaced (the spectral projections rely on that).
    if ((i + 1) % static_cast<std::size_t>(store_every) == 0) record(i + 1);
  }
  return traj;
}

namespace {

struct Window {
  std::size_t begin;  // first stored index of the settled window
  std::size_t end;    // one past last
};

Window settled_window(const PrecessionTrajectory& traj, double settle_fraction) {
  if (settle_fraction <= 0.0 || settle_fraction >= 1.0)
    throw std::invalid_argument("settle_fraction must be in (0, 1)");
  const std::size_t n = traj.m.size();
  if (n < 4) throw NotSettled("trajectory too short");
  const auto begin = static_cast<std::size_t>(std::floor((1.0 - settle_fraction) * n));
  if (traj.omega_drive <= 0) throw NotSettled("drive frequency not set on trajectory");
  const double span = traj.times.back() - traj.times[begin];
  const double period = two_pi / traj.omega_drive;
  if (span < 10.0 * period)
    throw NotSettled("settled window spans fewer than 10 drive periods");
  return {begin, n};
}

}  // namespace

PrecessionCone steady_state_cone(const PrecessionTrajectory& traj, double settle_fraction) {
  const Window w = settled_window(traj, settle_fraction);
  const double axis = traj.h0_sign;

  auto polar = [&](std::size_t i) {
    const auto& m = traj.m[i];
    return std::atan2(std::hypot(m[0], m[1]), axis * m[2]);
  };

  // Amplitude means over the two window halves expose residual transients.
  const std::size_t mid = (w.begin + w.end) / 2;
  double th1 = 0.0, th2 = 0.0, th = 0.0;
  for (std::size_t i = w.begin; i < mid; ++i) th1 += polar(i);
  for (std::size_t i = mid; i < w.end; ++i) th2 += polar(i);
  th1 /= static_cast<double>(mid - w.begin);
  th2 /= static_cast<double>(w.end - mid);
  th = 0.5 * (th1 + th2);

  constexpr double angle_floor = 1e-9;  // [rad]
  if (th >= angle_floor) {
    const double period = two_pi / traj.omega_drive;
    const double dt_centres = 0.5 * (traj.times[w.end - 1] - traj.times[w.begin]);
    const double periods = dt_centres / period;
    const double drift_per_period = std::abs(th2 - th1) / th / periods;
    if (drift_per_period > 0.01)
      throw NotSettled("windowed cone amplitude drifts more than 1% per period");
  }

  PrecessionCone cone{};
  cone.cone_angle = th;
  if (th < angle_floor) {
    cone.handedness = ConeHandedness::undefined;
    cone.ellipticity = 0.0;
    return cone;
  }

  // Rotation sense of the transverse locus vs. the natural Larmor sense for
  // this bias (counter-clockwise seen from +z when h0_sign = +1).
  double rot = 0.0;
  for (std::size_t i = w.begin; i + 1 < w.end; ++i) {
    const auto& p = traj.m[i];
    const auto& q = traj.m[i + 1];
    rot += p[0] * q[1] - p[1] * q[0];
  }
  const int sense = rot >= 0 ? +1 : -1;
  cone.handedness = (sense == traj.h0_sign) ? ConeHandedness::with_field
                                            : ConeHandedness::against_field;

  const double P = std::abs(transverse_response(traj, settle_fraction, +1));
  const double Q = std::abs(transverse_response(traj, settle_fraction, -1));
  cone.ellipticity = (P + Q) > 0 ? std::abs(P - Q) / (P + Q) : 0.0;
  return cone;
}

std::complex<double> transverse_response(const PrecessionTrajectory& traj,
                                         double settle_fraction, int s) {
  if (s != +1 && s != -1) throw std::invalid_argument("transverse_response: s must be +-1");
  const Window w = settled_window(traj, settle_fraction);
  const double period = two_pi / traj.omega_drive;

  // Average over the largest whole number of drive periods that fits at the
  // tail of the window, so a clean steady tone projects without leakage.
  const double span = traj.times[w.end - 1] - traj.times[w.begin];
  const auto whole = static_cast<std::size_t>(std::floor(span / period));
  if (whole < 1) throw NotSettled("settled window shorter than one whole period");
  const auto samples =
      static_cast<std::size_t>(std::llround(static_cast<double>(whole) * period / traj.dt));
  const std::size_t first = std::max((w.end - 1) - samples, w.begin);

  std::complex<double> acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = first; i + 1 < w.end; ++i) {  // one sample per dt over whole periods
    const auto& m = traj.m[i];
    const std::complex<double> mu(m[0], s * m[1]);
    acc += mu * std::polar(1.0, -traj.omega_drive * traj.times[i]);
    ++count;
  }
  return acc / static_cast<double>(count);
}

}  // namespace cmpol
