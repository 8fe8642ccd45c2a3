#pragma once

#include <stdexcept>
#include <string>

namespace cmpol {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Undamped response evaluated too close to its resonance pole.
struct PoleError : Error { using Error::Error; };

/// Field or sample requested outside the cavity box.
struct OutOfCavity : Error { using Error::Error; };

/// Polarisation state undefined because the local field vanishes.
struct DegenerateField : Error { using Error::Error; };

/// Closed-form energy only exists for the square (1,2)/(2,1) mode pair.
struct UnsupportedModePair : Error { using Error::Error; };

/// Empty or non-monotone sweep grid.
struct GridError : Error { using Error::Error; };

/// Integrator step too coarse for the precession being resolved.
struct StepTooLarge : Error { using Error::Error; };

/// Trajectory window has not reached a steady state.
struct NotSettled : Error { using Error::Error; };

/// No resonance extremum found in the fitted range.
struct NoDip : Error { using Error::Error; };

/// Least-squares iteration cap reached without meeting tolerance.
struct NonConvergence : Error { using Error::Error; };

/// Bad run configuration (reported with field/line diagnostics).
struct ConfigError : Error { using Error::Error; };

/// Malformed data file row (message carries the line number).
struct ParseError : Error { using Error::Error; };

/// Spectra file header lacks a recognisable unit declaration.
struct UnitError : Error { using Error::Error; };

}  // namespace cmpol
