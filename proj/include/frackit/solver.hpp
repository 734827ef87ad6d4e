#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "frackit/fracops.hpp"
#include "frackit/funcspace.hpp"

namespace frackit::solver {

using RhsFn = std::function<double(double t, double y)>;

/// Cauchy problem  ^H D^{mu,nu;Psi} y = f(t, y),  I^{1-rho;Psi} y(a) = y_a,
/// with f Lipschitz in y with constant L.
///
/// The solver assumes f(., y(.)) stays in C_{1-rho;Psi} for every y in that
/// space; this cannot be checked for an arbitrary f and is the caller's
/// obligation. Divergence shows up in the gap history instead.
struct CauchyProblem {
  Order order;
  PsiMap psi;
  double ya;
  RhsFn rhs;
  double lipschitz;

  void validate() const;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

struct SolveReport {
  WeightedFunction solution;
  int iterations = 0;
  // gap_history[n - 1] = ||y_n - y_{n-1}|| in the weighted norm.
  std::vector<double> gap_history;
  // ||T y - y|| for the returned y, where T is the discrete Picard map.
  double residual = 0.0;
  int contraction_j = 1;
  bool converged = false;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SolveReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

/// Picard iteration y_n = Omega y_a + I^{mu;Psi} f(., y_{n-1}) from y_0 = Omega y_a.
///
/// Stops when ||y_n - y_{n-1}|| <= tol * max(1, ||y_n||) in the weighted norm.
/// Throws ConvergenceError (carrying the last iterate) after max_iter
/// iterations without convergence.
SolveReport picard_solve(const CauchyProblem& problem, GridPtr grid, double tol = 1e-10,
                         int max_iter = 200);

/// Same, reusing an already assembled I^{mu;Psi} operator (rho_in = rho_out = rho).
SolveReport picard_solve(const CauchyProblem& problem, const fracops::FractionalIntegral& integral,
                         double tol = 1e-10, int max_iter = 200);

/// One application of the discrete Picard map to a weighted sample.
std::vector<double> picard_map(const CauchyProblem& problem,
                               const fracops::FractionalIntegral& integral,
                               std::span<const double> w);

/// Weighted samples of f(t_j, y(t_j)) for j >= 1. Entry 0 approximates the
/// weighted limit at t = a by evaluating at u = 1e-4 u_1 along the initial
/// weighted value w_0; it is exact for f linear in y, and falls back to entry 1
/// when that evaluation is not finite.
std::vector<double> weighted_rhs(const CauchyProblem& problem, const Grid& grid,
                                 std::span<const double> w);

/// Throws GridMismatch unless the grid was built on the problem's interval and Psi.
void check_grid(const CauchyProblem& problem, const Grid& grid);

/// Contraction factor Gamma(rho) (L (Psi(b) - Psi(a))^mu)^j / Gamma(j mu + rho) of T^j.
double contraction_factor(const CauchyProblem& problem, int j);

/// Smallest j >= 1 with contraction_factor(problem, j) < 1.
int contraction_iterate_count(const CauchyProblem& problem);

/// Bound (eps/L) (L u^mu)^j / Gamma(j mu + 1) u^(1-rho), u = Psi(t) - Psi(a), on
/// the weighted gap between successive approximations of an eps-perturbed solution.
double apriori_gap_bound(const CauchyProblem& problem, double eps, int j, double t);

/// Weighted exact solution y_a E_{mu,rho}(lambda u^mu) of the linear problem f = lambda y.
double linear_solution_weighted(const Order& order, double lambda, double ya, const PsiMap& psi,
                                double t);

/// The worked example: mu = nu = 1/2, y_a = 2, f = 4y, L = 4, on the given Psi.
CauchyProblem example_problem(const PsiMap& psi);

/// Raw exact solution 2 u^(-1/4) E_{1/2,3/4}(4 u^(1/2)) of the worked example.
double example_closed_form(const PsiMap& psi, double t);
/// Its weighted form 2 E_{1/2,3/4}(4 u^(1/2)).
double example_closed_form_weighted(const PsiMap& psi, double t);

}  // namespace frackit::solver
