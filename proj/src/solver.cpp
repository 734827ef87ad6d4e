#include "frackit/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "frackit/errors.hpp"
#include "frackit/special.hpp"

namespace frackit::solver {

void check_grid(const CauchyProblem& problem, const Grid& grid) {
  const PsiMap& psi = problem.psi;
  const double tol = 1e-12 * std::max(1.0, std::abs(psi.b()));
  if (std::abs(grid.psi().a() - psi.a()) > tol || std::abs(grid.psi().b() - psi.b()) > tol) {
    throw GridMismatch("picard_solve: grid interval differs from the problem interval");
  }
  const auto& t = grid.nodes();
  const auto& p = grid.psi_nodes();
  for (std::size_t j : {std::size_t{0}, t.size() / 2, t.size() - 1}) {
    if (std::abs(psi(t[j]) - p[j]) > 1e-12 * std::max(1.0, std::abs(p[j]))) {
      throw GridMismatch("picard_solve: grid was built for a different Psi");
    }
  }
}

namespace {

// Offset, relative to u_1, at which the weighted right-hand side limit is probed.
constexpr double kLimitProbe = 1e-4;

double log_contraction_factor(const CauchyProblem& problem, int j) {
  const double mu = problem.order.mu();
  const double rho = problem.order.rho();
  const double base = std::log(problem.lipschitz) + mu * std::log(problem.psi.span());
  return special::log_gamma(rho) + j * base - special::log_gamma(j * mu + rho);
}

}  // namespace

void CauchyProblem::validate() const {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw InvalidArgument("CauchyProblem: Lipschitz constant must be positive");
  }
  if (!std::isfinite(ya)) throw InvalidArgument("CauchyProblem: y_a must be finite");
  if (!rhs) throw InvalidArgument("CauchyProblem: missing right-hand side");
}

std::vector<double> weighted_rhs(const CauchyProblem& problem, const Grid& grid,
                                 std::span<const double> w) {
  const double rho = problem.order.rho();
  const auto& u = grid.offsets();
  const auto& t = grid.nodes();
  const int n = grid.size();
  std::vector<double> out(n + 1);
  for (int j = 1; j <= n; ++j) {
    const double wt = rho == 1.0 ? 1.0 : std::pow(u[j], 1.0 - rho);
    const double y = w[j] / wt;
    const double f = problem.rhs(t[j], y);
    if (!std::isfinite(f)) {
      std::ostringstream os;
      os << "right-hand side is not finite at t=" << t[j] << ", y=" << y;
      throw DomainError(os.str());
    }
    out[j] = wt * f;
  }
  // The weighted limit at t = a is probed along y = u^(rho-1) w_0 at a small
  // u, with t held at t_1 so f is never evaluated at t = a itself.
  const double probe = kLimitProbe * u[1];
  const double wt = rho == 1.0 ? 1.0 : std::pow(probe, 1.0 - rho);
  const double f0 = wt * problem.rhs(t[1], w[0] / wt);
  out[0] = std::isfinite(f0) ? f0 : out[1];
  return out;
}

std::vector<double> picard_map(const CauchyProblem& problem,
                               const fracops::FractionalIntegral& integral,
                               std::span<const double> w) {
  const double base = problem.ya / special::gamma_fn(problem.order.rho());
  std::vector<double> next = integral.apply(weighted_rhs(problem, *integral.grid(), w));
  for (double& v : next) v += base;
  next[0] = base;
  return next;
}

SolveReport picard_solve(const CauchyProblem& problem, GridPtr grid, double tol, int max_iter) {
  if (!grid) throw InvalidArgument("picard_solve: missing grid");
  const double rho = problem.order.rho();
  const fracops::FractionalIntegral integral(std::move(grid), problem.order.mu(), rho, rho,
                                            problem.order.mu());
  return picard_solve(problem, integral, tol, max_iter);
}

SolveReport picard_solve(const CauchyProblem& problem, const fracops::FractionalIntegral& integral,
                         double tol, int max_iter) {
  problem.validate();
  if (!(tol > 0.0)) throw InvalidArgument("picard_solve: tol must be positive");
  if (max_iter < 1) throw InvalidArgument("picard_solve: max_iter must be >= 1");
  const double rho = problem.order.rho();
  if (integral.mu() != problem.order.mu() || integral.rho_in() != rho ||
      integral.rho_out() != rho) {
    throw InvalidArgument("picard_solve: operator does not match the problem order");
  }
  const GridPtr& grid = integral.grid();
  check_grid(problem, *grid);

  const double base = problem.ya / special::gamma_fn(rho);
  std::vector<double> current(grid->size() + 1, base);
  SolveReport report{WeightedFunction(grid, current, rho), 0, {}, 0.0, 1, false};
  report.contraction_j = contraction_iterate_count(problem);

  for (int n = 1; n <= max_iter; ++n) {
    std::vector<double> next = picard_map(problem, integral, current);
    double gap = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j) gap = std::max(gap, std::abs(next[j] - current[j]));
    current = std::move(next);
    report.gap_history.push_back(gap);
    report.iterations = n;
    if (!std::isfinite(gap)) break;
    if (gap <= tol * std::max(1.0, weighted_norm(current))) {
      report.converged = true;
      break;
    }
  }

  bool finite = true;
  for (double v : current) finite = finite && std::isfinite(v);
  if (finite) {
    const std::vector<double> again = picard_map(problem, integral, current);
    double res = 0.0;
    for (std::size_t j = 0; j < again.size(); ++j) res = std::max(res, std::abs(again[j] - current[j]));
    report.residual = res;
    report.solution = WeightedFunction(grid, current, rho);
  } else {
    report.residual = std::numeric_limits<double>::infinity();
  }
  if (!report.converged) {
    std::ostringstream os;
    os << "picard_solve: no convergence after " << report.iterations << " iterations (last gap "
       << (report.gap_history.empty() ? 0.0 : report.gap_history.back()) << ")";
    throw ConvergenceError(os.str(), std::move(report));
  }
  return report;
}

double contraction_factor(const CauchyProblem& problem, int j) {
  if (j < 1) throw InvalidArgument("contraction_factor: j must be >= 1");
  return std::exp(log_contraction_factor(problem, j));
}

int contraction_iterate_count(const CauchyProblem& problem) {
  problem.validate();
  for (int j = 1;; ++j) {
    if (log_contraction_factor(problem, j) < 0.0) return j;
  }
}

double apriori_gap_bound(const CauchyProblem& problem, double eps, int j, double t) {
  if (j < 1) throw InvalidArgument("apriori_gap_bound: j must be >= 1");
  if (!(eps >= 0.0)) throw InvalidArgument("apriori_gap_bound: eps must be nonnegative");
  problem.validate();
  const double u = problem.psi.offset(t);
  if (u == 0.0 || eps == 0.0) return 0.0;
  const double mu = problem.order.mu();
  const double rho = problem.order.rho();
  const double L = problem.lipschitz;
  const double log_term = j * (std::log(L) + mu * std::log(u)) - special::log_gamma(j * mu + 1.0) +
                          (1.0 - rho) * std::log(u);
  return eps / L * std::exp(log_term);
}

double linear_solution_weighted(const Order& order, double lambda, double ya, const PsiMap& psi,
                                double t) {
  const double u = psi.offset(t);
  return ya * special::mittag_leffler2({order.mu(), order.rho()},
                                       lambda * std::pow(u, order.mu()));
}

CauchyProblem example_problem(const PsiMap& psi) {
  return CauchyProblem{Order(0.5, 0.5), psi, 2.0, [](double, double y) { return 4.0 * y; }, 4.0};
}

double example_closed_form_weighted(const PsiMap& psi, double t) {
  return linear_solution_weighted(Order(0.5, 0.5), 4.0, 2.0, psi, t);
}

double example_closed_form(const PsiMap& psi, double t) {
  const double u = psi.offset(t);
  if (u == 0.0) throw DomainError("example_closed_form: singular at t = a");
  return std::pow(u, -0.25) * example_closed_form_weighted(psi, t);
}

}  // namespace frackit::solver
