#include "cmpol/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "cmpol/constants.hpp"

namespace cmpol {

// Newton iteration on P_n, nodes seeded with the Chebyshev-like estimate.
GaussLegendre gauss_legendre(int order, double lo, double hi) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussLegendre q;
  q.nodes.resize(order);
  q.weights.resize(order);
  const int mid = (order + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_{n-1}(x) by the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double half = 0.5 * (hi - lo);
    const double centre = 0.5 * (hi + lo);
    q.nodes[i] = centre - half * x;
    q.nodes[order - 1 - i] = centre + half * x;
    q.weights[i] = q.weights[order - 1 - i] = half * w;
  }
  return q;
}

}  // namespace cmpol
