#pragma once

#include "cmpol/params.hpp"

namespace cmpol {

/// Hybrid eigenfrequencies, omega_a >= omega_b. Real: damping is neglected in
/// the perturbative picture (its effect on the eigenfrequencies is far below
/// the splitting for the rates handled here).
struct HybridBranches {
  double omega_a;
  double omega_b;
  double gap() const { return omega_a - omega_b; }
};

/// Left-hand side of the perturbative characteristic equation
///   (w - w_c)/w_c + [w0 wm/(w0^2 - w^2)] * Wp/Wc = 0.
/// Zero iff w is a hybrid eigenfrequency of that equation. Throws PoleError
/// at the magnon pole w = w0.
double detuning_residual(double omega, double omega_c, double omega0,
                         const MagnetParams& magnet, double wp_over_wc);

/// Closed-form branches
///   w_{a,b} = (1/2)[ w_c + w0 ± sqrt((w_c - w0)^2 + 2 w_c wm Wp/Wc) ].
/// This is the near-resonance (w ~ w0 ~ w_c) solution of the characteristic
/// equation; the exact residual roots differ from it by O((gap/w_c)^2)
/// relative, ~1e-7 at the preset coupling.
HybridBranches hybrid_eigenfrequencies(double omega_c, double omega0,
                                       const MagnetParams& magnet, double wp_over_wc);

/// Rabi splitting at resonance,  dw = sqrt(2 w_c wm Wp/Wc).
double rabi_splitting_pert(double omega_c, const MagnetParams& magnet,
                           double wp_over_wc);

/// Bisection roots of detuning_residual. The residual has a pole at w0
/// between the two roots, so each root is bracketed on its own side of the
/// pole, seeded from the closed form with a ±5 kappa_window margin; bisection
/// runs to 1e-12 relative.
HybridBranches hybrid_roots_bisection(double omega_c, double omega0,
                                      const MagnetParams& magnet, double wp_over_wc,
                                      double kappa_window);

}  // namespace cmpol
