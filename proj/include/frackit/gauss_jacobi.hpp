#pragma once

#include <vector>

namespace frackit {

/// Gauss rule on [0, 1] for the weight (1 - s)^alpha s^beta, alpha, beta > -1.
/// alpha = beta = 0 gives Gauss-Legendre.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction from the Jacobi three-term recurrence.
GaussRule gauss_jacobi(int points, double alpha, double beta);

}  // namespace frackit
