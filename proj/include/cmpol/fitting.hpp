#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "cmpol/params.hpp"
#include "cmpol/spectra.hpp"

namespace cmpol {

/// Lorentzian resonance  y(w) = baseline - depth * hwhm^2 / ((w - center)^2 + hwhm^2).
/// depth > 0 fits a dip, depth < 0 a peak; the extremum sits at center either way.
struct LorentzianFit {
  double center;         // [rad/s]
  double hwhm;           // half width at half maximum [rad/s], > 0
  double depth;          // extremum excursion from the baseline
  double baseline;
  double residual_norm;  // rms misfit
  int iterations;

  double eval(double omega) const {
    const double d = omega - center;
    return baseline - depth * hwhm * hwhm / (d * d + hwhm * hwhm);
  }
};

/// Damped Gauss-Newton (Levenberg) least squares with the analytic Jacobian;
/// initial guesses from the discrete extremum and its half-depth crossings.
/// Throws NoDip when the series has no usable extremum, NonConvergence after
/// the iteration cap.
LorentzianFit fit_lorentzian(std::span<const double> freq, std::span<const double> mag,
                             std::optional<LorentzianFit> initial_guess = std::nullopt);

/// Fit of a complex spectrum's magnitude.
LorentzianFit fit_lorentzian(const ComplexSpectrum& spectrum,
                             std::optional<LorentzianFit> initial_guess = std::nullopt);

/// Kittel decay rate from a field linewidth:  eta = 2 pi gamma dH [rad/s]
/// with gamma in GHz/T and dH in tesla.
double linewidth_to_eta(double delta_H, const MagnetParams& magnet);

/// Local minima of a magnitude series with topographic prominence >= floor,
/// sorted by ascending frequency. Plateau minima report their first sample.
std::vector<double> find_dips(std::span<const double> freq, std::span<const double> mag,
                              double prominence_floor);

/// Rabi splitting measured from a generated resonant spectrum (omega0 pinned
/// to omega_c). resolved is false when 2|g~| <= kappa + eta (dips merge) or
/// fewer than two dips are found; delta_omega is then 0.
struct SplittingResult {
  bool resolved;
  double delta_omega;             // [rad/s]
  std::array<double, 2> dip_freqs;  // [rad/s], ascending (0 when unresolved)
};

SplittingResult extract_splitting(const SystemParams& params, const DriveState& drive,
                                  double half_span = omega_from_mhz(15.0),
                                  double resolution = omega_from_mhz(1e-3));

/// Mean cavity photon number <n> = (4 P_in / (hbar w_c^2)) Qi^2 Qc / (Qi + Qc)^2.
double photon_number(double power_in, double omega_c, double Q_i, double Q_c);

}  // namespace cmpol
