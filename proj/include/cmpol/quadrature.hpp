#pragma once

#include <vector>

namespace cmpol {

/// Gauss-Legendre nodes and weights on [lo, hi].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order, double lo, double hi);

}  // namespace cmpol
