#pragma once

#include <array>
#include <complex>

#include "cmpol/params.hpp"

namespace cmpol {

using complexd = std::complex<double>;
using cvec2 = std::array<complexd, 2>;

/// Polder-type susceptibility components. The tensor acting on (h_x, h_y) is
///
///     [  chi_a   i*chi_b ]
///     [ -i*chi_b  chi_a  ]
///
/// with chi_a = w0*wm/(w0^2 - w^2) and chi_b = w*wm/(w0^2 - w^2) for bias
/// along +z; reversing the bias flips the sign of chi_b.
struct ChiTensor {
  complexd chi_a;
  complexd chi_b;

  cvec2 apply(const cvec2& h) const {
    const complexd i(0.0, 1.0);
    return {chi_a * h[0] + i * chi_b * h[1], -i * chi_b * h[0] + chi_a * h[1]};
  }
};

/// Tensor susceptibility at probe frequency omega for Kittel frequency omega0.
///
/// Phasor convention: fields are Re[h e^{+i omega t}]. Damping (damped = true)
/// enters as omega0 -> omega0 + i*eta_kittel, which makes the resonant
/// response m+ absorptive (negative imaginary part) in this convention and
/// matches the linearised Gilbert dynamics. Undamped evaluation closer than
/// 1e-6*omega0 to the pole throws PoleError instead of returning infinities.
ChiTensor chi_tensor(const MagnetParams& magnet, double omega0, double omega,
                     int h0_sign, bool damped);

/// Scalar susceptibility of the circular components m± = m_x ± i m_y,
/// h± = h_x ± i h_y:  m± = chi± h±.  For bias along +z,
/// chi+ = wm/(w0 - w) (resonant, matched chirality) and chi- = wm/(w0 + w)
/// (pole-free); reversing the bias swaps the two roles.
complexd chi_circular(const MagnetParams& magnet, double omega0, double omega,
                      int handedness, int h0_sign, bool damped);

/// m = chi * h.
cvec2 magnetisation_response(const ChiTensor& chi, const cvec2& h);

}  // namespace cmpol
