#include <doctest.h>

#include <cmath>
#include <vector>

#include "frackit/errors.hpp"
#include "frackit/solver.hpp"
#include "frackit/special.hpp"
#include "support.hpp"

using namespace frackit;
using namespace frackit::solver;
using frackit::testing::Gen;
using frackit::testing::rel_err;

namespace {

double max_weighted_error(const SolveReport& report, const std::function<double(double)>& exact) {
  const Grid& g = *report.solution.grid;
  double err = 0.0;
  double norm = 0.0;
  for (int j = 0; j <= g.size(); ++j) {
    const double e = exact(g.nodes()[j]);
    err = std::max(err, std::abs(report.solution.w[j] - e));
    norm = std::max(norm, std::abs(e));
  }
  return err / norm;
}

}  // namespace

TEST_CASE("worked example matches its closed form") {
  const PsiMap psi = PsiMap::identity(0.0, 1.0);
  const CauchyProblem p = example_problem(psi);
  const SolveReport r = picard_solve(p, make_grid(psi, 256, default_grading(p.order)));
  CHECK(r.converged);
  CHECK(r.contraction_j == 84);
  CHECK(r.solution.w[0] == doctest::Approx(2.0 / special::gamma_fn(0.75)));
  CHECK(max_weighted_error(r, [&](double t) { return example_closed_form_weighted(psi, t); }) <
        5e-3);
  CHECK(rel_err(example_closed_form_weighted(psi, 1.0), 2.0 * 35544442.027877927008) < 1e-13);
  CHECK_THROWS_AS(example_closed_form(psi, 0.0), DomainError);
  CHECK(example_closed_form(psi, 1.0) == doctest::Approx(example_closed_form_weighted(psi, 1.0)));
}

TEST_CASE("zero right-hand side gives y_a Omega") {
  const PsiMap psi = PsiMap::identity(0.0, 2.0);
  const CauchyProblem p{Order(0.3, 0.4), psi, 1.5, [](double, double) { return 0.0; }, 1.0};
  const SolveReport r = picard_solve(p, make_grid(psi, 32, 1.0));
  for (double v : r.solution.w) CHECK(v == doctest::Approx(1.5 / special::gamma_fn(p.order.rho())));
  CHECK(r.iterations == 1);
}

TEST_CASE("linear problems with negative coefficient on a non-trivial Psi") {
  const PsiMap psi([](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }, 0.5,
                   1.0);
  const Order order(0.3, 0.8);
  const double lambda = -1.5;
  const CauchyProblem p{order, psi, 0.7, [lambda](double, double y) { return lambda * y; },
                        std::abs(lambda)};
  const SolveReport r = picard_solve(p, make_grid(psi, 512, default_grading(order)));
  CHECK(max_weighted_error(r, [&](double t) {
          return linear_solution_weighted(order, lambda, 0.7, psi, t);
        }) < 1e-3);
}

TEST_CASE("nonlinear problem converges under refinement") {
  const PsiMap psi = PsiMap::identity(0.0, 1.0);
  const Order order(0.6, 0.2);
  const CauchyProblem p{order, psi, 1.0, [](double t, double y) { return std::atan(y) + t; }, 1.0};
  const SolveReport coarse = picard_solve(p, make_grid(psi, 128, default_grading(order)));
  const SolveReport fine = picard_solve(p, make_grid(psi, 256, default_grading(order)));
  double diff = 0.0;
  for (int j = 0; j <= 128; ++j) diff = std::max(diff, std::abs(coarse.solution.w[j] - fine.solution.w[2 * j]));
  CHECK(diff < 1e-3);
  CHECK(fine.residual < 1e-8);
}

TEST_CASE("contraction factor and iterate count") {
  const CauchyProblem p = example_problem(PsiMap::identity(0.0, 1.0));
  CHECK(contraction_iterate_count(p) == 84);
  CHECK(rel_err(contraction_factor(p, 84), 0.83257744467729233241) < 1e-10);
  CHECK(rel_err(contraction_factor(p, 83), 1.3489415799961525024) < 1e-10);
  CHECK_THROWS_AS(contraction_factor(p, 0), InvalidArgument);
  const CauchyProblem small{Order(0.5, 0.5), PsiMap::identity(0.0, 1.0), 1.0,
                            [](double, double y) { return 0.1 * y; }, 0.1};
  CHECK(contraction_iterate_count(small) == 1);
}

TEST_CASE("property: scan defines the iterate count") {
  Gen gen(31);
  for (int k = 0; k < 50; ++k) {
    const double b = gen.uniform(0.5, 3.0);
    const CauchyProblem p{Order(gen.uniform(0.1, 0.9), gen.uniform(0.0, 1.0)),
                          PsiMap::identity(0.0, b), 1.0, [](double, double y) { return y; },
                          gen.uniform(0.1, 6.0)};
    const int j = contraction_iterate_count(p);
    CHECK(contraction_factor(p, j) < 1.0);
    if (j > 1) CHECK(contraction_factor(p, j - 1) >= 1.0);
  }
}

TEST_CASE("apriori gap bound") {
  const CauchyProblem p = example_problem(PsiMap::identity(0.0, 1.0));
  // (eps/L) (L u^mu)^j / Gamma(j mu + 1) u^(1-rho) at u = 1, j = 2, eps = 1.
  CHECK(apriori_gap_bound(p, 1.0, 2, 1.0) == doctest::Approx(0.25 * 16.0));
  CHECK(apriori_gap_bound(p, 1.0, 2, 0.0) == 0.0);
  CHECK_THROWS_AS(apriori_gap_bound(p, -1.0, 2, 0.5), InvalidArgument);
}

TEST_CASE("failure reporting") {
  const PsiMap psi = PsiMap::identity(0.0, 1.0);
  const CauchyProblem p = example_problem(psi);
  const GridPtr g = make_grid(psi, 32, 1.0);
  try {
    picard_solve(p, g, 1e-12, 3);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.report().iterations == 3);
    CHECK(e.report().gap_history.size() == 3);
    CHECK_FALSE(e.report().converged);
  }
  CHECK_THROWS_AS(picard_solve(p, make_grid(PsiMap::identity(0.0, 2.0), 32, 1.0)), GridMismatch);
  CauchyProblem bad = p;
  bad.lipschitz = 0.0;
  CHECK_THROWS_AS(picard_solve(bad, g), InvalidArgument);
  CHECK_THROWS_AS(picard_solve(p, g, 0.0), InvalidArgument);
  CauchyProblem blowup = p;
  blowup.rhs = [](double, double y) { return 1.0 / (y - y); };
  CHECK_THROWS_AS(picard_solve(blowup, g), DomainError);
}
