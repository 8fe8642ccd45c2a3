#pragma once

#include <array>
#include <complex>

#include "cmpol/params.hpp"
#include "cmpol/spectra.hpp"

namespace cmpol {

/// Effective magnon-photon coupling of the two-port drive,
///   g~ = g (1 - i delta e^{i sigma phi}) / sqrt(1 + delta^2),   sigma = -h0_sign,
/// so that |g~|^2 = g^2 [1 + delta^2 + 2 sigma delta sin(phi)] / (1 + delta^2):
/// |g~| = sqrt(2) g at matched circular polarisation, 0 at opposed circular,
/// g at delta = 0.
std::complex<double> effective_coupling(const CouplingParams& coupling,
                                        const DriveState& drive);

/// Bare coupling from first principles,
///   g = gamma_ang * eta_overlap * sqrt(5 N mu0 hbar w_c / (4 v)),  N = rho delta_v.
/// This is the SI normalisation of the quantised-field coupling (the
/// Gaussian-unit form replaces mu0/4 by pi/2); the overlap factor and the
/// mode-volume convention leave an O(1) uncertainty.
double bare_g_first_principles(const MagnetParams& magnet, const CavityParams& cavity,
                               double eta_overlap);

/// Complex reflection coefficient of the driven two-mode system,
///   S11 = i kappa (w0 - w - i eta) / [ (w - w_c + i kappa)(w0 - w - i eta) + |g~|^2 ] - 1.
/// |S11| <= 1 for kappa > 0, eta >= 0.
std::complex<double> s11(double omega, double omega_c, double omega0, double kappa,
                         double eta_kittel, std::complex<double> g_tilde);

/// Eigenvalues of the dynamical matrix [[w_c - i kappa, g~], [g~*, w0 - i eta]]:
/// real parts are the hybrid frequencies, minus the imaginary parts the
/// linewidths. Ordered by descending real part; the decoupled g~ = 0 case
/// returns (w_c - i kappa, w0 - i eta) exactly.
std::array<std::complex<double>, 2> hybrid_eigenvalues_io(double omega_c, double omega0,
                                                          double kappa, double eta_kittel,
                                                          std::complex<double> g_tilde);

/// Steady state (a, b) of the rotating-frame equations of motion with drive
/// (eps_c, 0); S11 is the ratio kappa*a/eps_c - 1, so eps_c cancels.
std::array<std::complex<double>, 2> steady_state_amplitudes(
    double omega, double omega_c, double omega0, double kappa, double eta_kittel,
    std::complex<double> g_tilde, double eps_c);

/// S11 recomputed through the steady-state solve; agrees with s11() and is
/// independent of eps_c.
std::complex<double> s11_from_steady_state(double omega, double omega_c, double omega0,
                                           double kappa, double eta_kittel,
                                           std::complex<double> g_tilde, double eps_c);

/// Probe-field strength  eps_c = sqrt(2 kappa D_c / (hbar w)).  Feeds the
/// steady-state solve but cancels in the reflection ratio.
double probe_strength(double probe_power, double kappa, double omega_probe);

/// |S11| spectrum at fixed drive (omega0 from the drive's bias field).
ComplexSpectrum reflection_spectrum(const SystemParams& params, const DriveState& drive,
                                    const std::vector<double>& freq_grid);

/// |S11| (and optionally arg S11) over a (bias field, probe frequency) grid.
/// Matched-chirality drives show an avoided crossing, opposed-chirality drives
/// two independent lines crossing at omega0 = omega_c.
SpectralMap field_sweep_map(const SystemParams& params, const DriveState& drive,
                            const std::vector<double>& field_grid,
                            const std::vector<double>& freq_grid,
                            bool with_phase = false);

/// |S11| over a (phi, probe frequency) grid at omega0 = omega_c, fixed delta.
SpectralMap phase_sweep_map(const SystemParams& params, const DriveState& base,
                            const std::vector<double>& phi_grid,
                            const std::vector<double>& freq_grid,
                            bool with_phase = false);

/// Rabi splitting 2|g~| over a (delta, phi) grid.
SpectralMap splitting_map(const SystemParams& params, const DriveState& base,
                          const std::vector<double>& delta_grid,
                          const std::vector<double>& phi_grid);

}  // namespace cmpol
