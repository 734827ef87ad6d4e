#include "frackit/gauss_jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "frackit/errors.hpp"
#include "frackit/special.hpp"

namespace frackit {

GaussRule gauss_jacobi(int points, double alpha, double beta) {
  if (points < 1) throw InvalidArgument("gauss_jacobi: need at least one point");
  if (!(alpha > -1.0 && beta > -1.0)) {
    std::ostringstream os;
    os << "gauss_jacobi: exponents must exceed -1 (alpha=" << alpha << ", beta=" << beta << ")";
    throw InvalidArgument(os.str());
  }
  const double ab = alpha + beta;
  Eigen::VectorXd diag(points);
  Eigen::VectorXd sub(points > 1 ? points - 1 : 1);
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int n = 1; n < points; ++n) {
    const double s = 2.0 * n + ab;
    diag(n) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int n = 1; n < points; ++n) {
    const double s = 2.0 * n + ab;
    double b2;
    if (n == 1) {
      // (n + alpha + beta) / (2n + alpha + beta - 1) cancels analytically.
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * n * (n + alpha) * (n + beta) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(n - 1) = std::sqrt(b2);
  }

  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  // Zeroth moment of (1 - s)^alpha s^beta on [0, 1].
  const double moment = std::exp(special::log_gamma(alpha + 1.0) + special::log_gamma(beta + 1.0) -
                                 special::log_gamma(ab + 2.0));
  if (points == 1) {
    rule.nodes[0] = 0.5 * (diag(0) + 1.0);
    rule.weights[0] = moment;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(points - 1), Eigen::ComputeEigenvectors);
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (int k = 0; k < points; ++k) {
    rule.nodes[k] = 0.5 * (values(k) + 1.0);
    rule.weights[k] = moment * vectors(0, k) * vectors(0, k);
  }
  return rule;
}

}  // namespace frackit
