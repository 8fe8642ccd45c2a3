#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cmpol/params.hpp"

namespace cmpol {

/// Complex reflection spectrum on a frequency grid, with the drive it was
/// computed for.
struct ComplexSpectrum {
  std::vector<double> freq;                 // [rad/s], strictly increasing
  std::vector<std::complex<double>> s11;
  DriveState drive{0.0, 0.0};
  std::string label;

  std::vector<double> magnitude() const;
  std::vector<double> phase() const;
};

/// 2-D sweep result: values[i*axis2.size() + j] belongs to
/// (axis1[i], axis2[j]). Phase rows are filled only when requested.
struct SpectralMap {
  std::string axis1_name;
  std::string axis2_name;
  std::string value_name;
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<double> values;  // row-major over (axis1, axis2)
  std::vector<double> phase;   // optional, same layout as values

  std::size_t rows() const { return axis1.size(); }
  std::size_t cols() const { return axis2.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
  bool has_phase() const { return !phase.empty(); }
};

/// Uniform grid of n points from lo to hi inclusive (n >= 1; n = 1 gives lo,
/// which then must equal hi).
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/// Throws GridError unless the grid is non-empty, finite, and strictly
/// increasing (single-point grids pass).
void validate_grid(const std::vector<double>& grid, const char* what);

}  // namespace cmpol
