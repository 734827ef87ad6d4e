#include "frackit/stability.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "frackit/errors.hpp"
#include "frackit/fracops.hpp"
#include "frackit/special.hpp"

namespace frackit::stability {

namespace {

constexpr double kMarginTolerance = 1e-9;
constexpr const char* kIntegralFormNote =
    "integral-form certificate: checks the integrated residual inequality at grid nodes; "
    "the Hilfer derivative of the candidate is not evaluated";

double margin_tolerance(std::span<const double> w) {
  return kMarginTolerance * std::max(1.0, weighted_norm(w));
}

bool all_within(const std::vector<double>& margins, double tolerance) {
  for (double m : margins) {
    if (!(m >= -tolerance)) return false;
  }
  return true;
}

void check_candidate(const solver::CauchyProblem& problem, const WeightedFunction& candidate) {
  solver::check_grid(problem, *candidate.grid);
  if (std::abs(candidate.rho - problem.order.rho()) > 1e-14) {
    throw InvalidArgument("candidate is not sampled in the problem's weighted space");
  }
}

solver::CauchyProblem with_initial_value(const solver::CauchyProblem& problem,
                                         const WeightedFunction& candidate) {
  solver::CauchyProblem matched = problem;
  matched.ya = special::gamma_fn(problem.order.rho()) * candidate.w[0];
  return matched;
}

// Integral I^{mu;Psi} phi of the raw comparison function, at the nodes.
std::vector<double> integrate_phi(const solver::CauchyProblem& problem, const PhiFunction& phi) {
  const fracops::FractionalIntegral op(phi.grid, problem.order.mu(), 1.0, 1.0);
  return op.apply(std::span<const double>(phi.values));
}

struct SeriesResult {
  double sum = 0.0;
  std::size_t terms = 0;
  double tail = 0.0;
};

// Sums nonnegative terms whose successive ratios decrease, stopping when the
// geometric bound next / (1 - ratio) on the tail is below tail_tol * sum.
SeriesResult sum_decreasing_ratio_series(const std::function<double(std::size_t)>& term,
                                         double tail_tol) {
  SeriesResult out;
  double current = term(0);
  for (std::size_t k = 0; k < special::kMaxSeriesTerms; ++k) {
    out.sum += current;
    out.terms = k + 1;
    if (!std::isfinite(out.sum)) throw OverflowError("eps_approx_bound: series overflow");
    const double next = term(k + 1);
    if (next == 0.0) {
      out.tail = 0.0;
      return out;
    }
    const double ratio = current > 0.0 ? next / current : 1.0;
    if (ratio < 1.0) {
      const double tail = next / (1.0 - ratio);
      if (tail <= tail_tol * out.sum) {
        out.tail = tail;
        return out;
      }
    }
    current = next;
  }
  throw OverflowError("eps_approx_bound: series did not converge within the term cap");
}

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::HU:
      return "HU";
    case CertificateKind::GHU:
      return "GHU";
    case CertificateKind::HUR:
      return "HUR";
    case CertificateKind::GHUR:
      return "GHUR";
  }
  return "?";
}

PhiFunction::PhiFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw InvalidArgument("PhiFunction: missing grid");
  if (values.size() != static_cast<std::size_t>(grid->size()) + 1) {
    throw InvalidArgument("PhiFunction: one value per grid node required");
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    const bool admissible = j == 0 ? values[j] >= 0.0 : values[j] > 0.0;
    if (!admissible || !std::isfinite(values[j])) {
      std::ostringstream os;
      os << "PhiFunction: values must be finite, positive after t = a and nonnegative at t = a"
         << " (node " << j << ")";
      throw InvalidArgument(os.str());
    }
    if (j > 0 && values[j] < values[j - 1]) nondecreasing = false;
  }
  if (!nondecreasing) throw InvalidArgument("PhiFunction: phi must be nondecreasing");
}

double hu_constant(const solver::CauchyProblem& problem) {
  problem.validate();
  const double mu = problem.order.mu();
  const double span = problem.psi.span();
  const double L = problem.lipschitz;
  // E_mu(x) - 1 summed from k = 1 so that small L does not cancel.
  const double tail = special::mittag_leffler2_tail({mu, 1.0}, L * std::pow(span, mu), 1);
  return tail / L * std::pow(span, 1.0 - problem.order.rho());
}

double generalized_hu_bound(const solver::CauchyProblem& problem, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("generalized_hu_bound: epsilon must be >= 0");
  if (epsilon == 0.0) return 0.0;
  return hu_constant(problem) * epsilon;
}

double estimate_lambda(const solver::CauchyProblem& problem, const PhiFunction& phi) {
  solver::check_grid(problem, *phi.grid);
  const std::vector<double> integral = integrate_phi(problem, phi);
  double lambda = 0.0;
  for (std::size_t j = 1; j < integral.size(); ++j) {
    lambda = std::max(lambda, std::abs(integral[j]) / phi.values[j]);
  }
  return lambda;
}

double hur_constant(const solver::CauchyProblem& problem, double lambda) {
  problem.validate();
  const double product = lambda * problem.lipschitz;
  if (!(lambda > 0.0) || !(product < 1.0)) {
    std::ostringstream os;
    os << "Ulam-Hyers-Rassias hypothesis 0 < lambda L < 1 fails: lambda=" << lambda
       << ", L=" << problem.lipschitz << ", lambda L=" << product;
    throw HypothesisError(os.str());
  }
  return lambda / (1.0 - product) * std::pow(problem.psi.span(), 1.0 - problem.order.rho());
}

StabilityCertificate residual_certificate(const solver::CauchyProblem& problem,
                                          const WeightedFunction& candidate, double epsilon,
                                          ResidualKind kind,
                                          const std::optional<PhiFunction>& phi) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("residual_certificate: epsilon must be a nonnegative number");
  }
  problem.validate();
  check_candidate(problem, candidate);
  if (kind == ResidualKind::PhiScaled) {
    if (!phi) throw InvalidArgument("residual_certificate: phi-scaled kind needs phi");
    if (!phi->grid->same_nodes(*candidate.grid)) {
      throw GridMismatch("residual_certificate: phi sampled on a different grid");
    }
  }

  const GridPtr& grid = candidate.grid;
  const double mu = problem.order.mu();
  const double rho = problem.order.rho();
  const solver::CauchyProblem matched = with_initial_value(problem, candidate);
  // Same discretisation as picard_solve, so a converged solution has zero residual.
  const fracops::FractionalIntegral integral(grid, mu, rho, rho, mu);
  const std::vector<double> image = solver::picard_map(matched, integral, candidate.w);

  const auto& u = grid->offsets();
  const std::size_t size = candidate.w.size();
  std::vector<double> bound(size);
  if (kind == ResidualKind::Constant) {
    const double scale = epsilon / special::gamma_fn(mu + 1.0);
    for (std::size_t j = 0; j < size; ++j) {
      bound[j] = u[j] == 0.0 ? 0.0 : scale * std::pow(u[j], 1.0 - rho + mu);
    }
  } else {
    const std::vector<double> iphi = integrate_phi(problem, *phi);
    for (std::size_t j = 0; j < size; ++j) {
      const double wt = u[j] == 0.0 ? (rho < 1.0 ? 0.0 : 1.0) : std::pow(u[j], 1.0 - rho);
      bound[j] = epsilon * wt * iphi[j];
    }
  }

  StabilityCertificate cert;
  cert.kind = kind == ResidualKind::Constant ? CertificateKind::HU : CertificateKind::HUR;
  cert.epsilon = epsilon;
  cert.note = kIntegralFormNote;
  cert.bound_profile = bound;
  cert.observed.resize(size);
  cert.margins.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    cert.observed[j] = std::abs(candidate.w[j] - image[j]);
    cert.margins[j] = bound[j] - cert.observed[j];
  }
  cert.tolerance = margin_tolerance(candidate.w);
  cert.verdict = all_within(cert.margins, cert.tolerance);
  cert.residual_verdict = cert.verdict;
  if (kind == ResidualKind::Constant) {
    cert.constant = hu_constant(problem);
  } else {
    cert.lambda = estimate_lambda(problem, *phi);
    if (cert.lambda * problem.lipschitz < 1.0) cert.constant = hur_constant(problem, cert.lambda);
  }
  return cert;
}

EpsBound eps_approx_bound(const solver::CauchyProblem& problem, double eps1, double eps2,
                          double ya1, double ya2, double tail_tol) {
  if (!(eps1 >= 0.0) || !(eps2 >= 0.0)) {
    throw InvalidArgument("eps_approx_bound: eps1 and eps2 must be nonnegative");
  }
  if (!(tail_tol > 0.0)) throw InvalidArgument("eps_approx_bound: tail_tol must be positive");
  if (!std::isfinite(ya1) || !std::isfinite(ya2)) {
    throw InvalidArgument("eps_approx_bound: initial data must be finite");
  }
  problem.validate();
  const double mu = problem.order.mu();
  const double rho = problem.order.rho();
  const double log_l = std::log(problem.lipschitz);
  const double log_span = std::log(problem.psi.span());

  const auto eps_term = [&](std::size_t k) {
    if (k == 0) return std::exp((mu - rho + 1.0) * log_span - special::log_gamma(mu + 1.0));
    const double kk = static_cast<double>(k);
    return std::exp(kk * log_l + (kk + 1.0) * mu * log_span -
                    special::log_gamma((kk + 1.0) * mu - rho + 1.0));
  };
  const auto ya_term = [&](std::size_t k) {
    if (k == 0) return 1.0 / special::gamma_fn(rho);
    const double kk = static_cast<double>(k);
    return std::exp(kk * log_l + kk * mu * log_span - special::log_gamma(rho + kk * mu));
  };

  const SeriesResult se = sum_decreasing_ratio_series(eps_term, tail_tol);
  const SeriesResult sy = sum_decreasing_ratio_series(ya_term, tail_tol);
  EpsBound out;
  out.eps_series = se.sum;
  out.ya_series = sy.sum;
  out.eps_terms = se.terms;
  out.ya_terms = sy.terms;
  out.eps_tail = se.tail;
  out.ya_tail = sy.tail;
  const double de = eps1 + eps2;
  const double dy = std::abs(ya1 - ya2);
  out.value = (de == 0.0 ? 0.0 : de * se.sum) + (dy == 0.0 ? 0.0 : dy * sy.sum);
  return out;
}

StabilityCertificate hu_distance_check(const solver::CauchyProblem& problem,
                                       const WeightedFunction& perturbed, double epsilon,
                                       DistanceOptions options) {
  const StabilityCertificate residual =
      residual_certificate(problem, perturbed, epsilon, ResidualKind::Constant);
  const solver::CauchyProblem matched = with_initial_value(problem, perturbed);
  const solver::SolveReport report =
      solver::picard_solve(matched, perturbed.grid, options.tol, options.max_iter);
  const std::vector<double>& w = report.solution.w;

  StabilityCertificate cert;
  cert.kind = CertificateKind::HU;
  cert.epsilon = epsilon;
  cert.constant = residual.constant;
  cert.bound = cert.constant * epsilon;
  cert.note = kIntegralFormNote;
  cert.residual_verdict = residual.verdict;
  const std::size_t size = w.size();
  cert.bound_profile.assign(size, cert.bound);
  cert.observed.resize(size);
  cert.margins.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    cert.observed[j] = std::abs(perturbed.w[j] - w[j]);
    cert.margins[j] = cert.bound - cert.observed[j];
    cert.distance = std::max(cert.distance, cert.observed[j]);
  }
  cert.tolerance = margin_tolerance(w) + report.residual;
  cert.verdict = residual.verdict && all_within(cert.margins, cert.tolerance);
  return cert;
}

StabilityCertificate hur_distance_check(const solver::CauchyProblem& problem,
                                        const WeightedFunction& perturbed, double epsilon,
                                        const PhiFunction& phi, DistanceOptions options) {
  const double lambda = estimate_lambda(problem, phi);
  const double constant = hur_constant(problem, lambda);
  const StabilityCertificate residual =
      residual_certificate(problem, perturbed, epsilon, ResidualKind::PhiScaled, phi);
  const solver::CauchyProblem matched = with_initial_value(problem, perturbed);
  const solver::SolveReport report =
      solver::picard_solve(matched, perturbed.grid, options.tol, options.max_iter);
  const std::vector<double>& w = report.solution.w;

  StabilityCertificate cert;
  cert.kind = CertificateKind::HUR;
  cert.epsilon = epsilon;
  cert.lambda = lambda;
  cert.constant = constant;
  cert.note = kIntegralFormNote;
  cert.residual_verdict = residual.verdict;
  const std::size_t size = w.size();
  cert.bound_profile.resize(size);
  cert.observed.resize(size);
  cert.margins.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    cert.bound_profile[j] = constant * epsilon * phi.values[j];
    cert.observed[j] = std::abs(perturbed.w[j] - w[j]);
    cert.margins[j] = cert.bound_profile[j] - cert.observed[j];
    cert.distance = std::max(cert.distance, cert.observed[j]);
    cert.bound = std::max(cert.bound, cert.bound_profile[j]);
  }
  cert.tolerance = margin_tolerance(w) + report.residual;
  cert.verdict = residual.verdict && all_within(cert.margins, cert.tolerance);
  return cert;
}

}  // namespace frackit::stability
