#pragma once

namespace cmpol {

// CODATA 2018
inline constexpr double mu0_si  = 1.25663706212e-6;   // vacuum permeability [T m/A]
inline constexpr double hbar_si = 1.054571817e-34;    // reduced Planck constant [J s]

inline constexpr double pi     = 3.14159265358979323846;
inline constexpr double two_pi = 6.28318530717958647692;

// Internal frequencies are angular [rad/s]; user-facing I/O is linear GHz/MHz.
inline constexpr double omega_from_ghz(double f_ghz) { return two_pi * f_ghz * 1e9; }
inline constexpr double omega_from_mhz(double f_mhz) { return two_pi * f_mhz * 1e6; }
inline constexpr double ghz_from_omega(double omega) { return omega / (two_pi * 1e9); }
inline constexpr double mhz_from_omega(double omega) { return omega / (two_pi * 1e6); }

}  // namespace cmpol
