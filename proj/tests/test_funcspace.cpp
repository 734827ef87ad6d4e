#include <doctest.h>

#include <cmath>
#include <vector>

#include "frackit/errors.hpp"
#include "frackit/funcspace.hpp"
#include "frackit/special.hpp"
#include "support.hpp"

using namespace frackit;
using frackit::testing::Gen;

namespace {

PsiMap exp_psi(double a, double b) {
  return PsiMap([](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }, a, b);
}

}  // namespace

TEST_CASE("order validation and rho") {
  const Order o(0.5, 0.5);
  CHECK(o.rho() == doctest::Approx(0.75));
  CHECK(Order(0.3, 0.0).rho() == doctest::Approx(0.3));
  CHECK(Order(0.3, 1.0).rho() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Order(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(Order(1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(Order(0.5, -0.1), InvalidArgument);
  CHECK_THROWS_AS(Order(0.5, 1.1), InvalidArgument);
  CHECK_THROWS_AS(Order(std::nan(""), 0.5), InvalidArgument);
}

TEST_CASE("property: rho lies between mu and 1") {
  Gen gen;
  for (int k = 0; k < 200; ++k) {
    const Order o(gen.uniform(1e-3, 0.999), gen.uniform(0.0, 1.0));
    CHECK(o.rho() >= o.mu() - 1e-15);
    CHECK(o.rho() <= 1.0 + 1e-15);
  }
}

TEST_CASE("psi map admissibility") {
  CHECK_NOTHROW(exp_psi(0.5, 1.0));
  CHECK_THROWS_AS(PsiMap::identity(1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(PsiMap::identity(-1.0, 1.0), InvalidArgument);
  // Decreasing map.
  CHECK_THROWS_AS(PsiMap([](double t) { return -t; }, [](double) { return -1.0; }, 0.0, 1.0),
                  InvalidArgument);
  // Derivative vanishes at t = a.
  CHECK_THROWS_AS(PsiMap([](double t) { return t * t * t; }, [](double t) { return 3.0 * t * t; },
                         0.0, 1.0),
                  InvalidArgument);
  const PsiMap p = exp_psi(0.5, 1.0);
  CHECK(p.span() == doctest::Approx(std::exp(1.0) - std::exp(0.5)));
  CHECK(p.offset(0.5) == 0.0);
  CHECK_THROWS_AS(p.offset(0.4), DomainError);
  CHECK_THROWS_AS(p.offset(1.1), DomainError);
}

TEST_CASE("graded grid") {
  const GridPtr g = make_grid(PsiMap::identity(0.0, 2.0), 16, 2.0);
  CHECK(g->size() == 16);
  CHECK(g->nodes().front() == 0.0);
  CHECK(g->nodes().back() == 2.0);
  CHECK(g->nodes()[8] == doctest::Approx(0.5));
  CHECK(g->offsets()[4] == doctest::Approx(2.0 / 16.0));
  CHECK_THROWS_AS(make_grid(PsiMap::identity(0.0, 1.0), 1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(PsiMap::identity(0.0, 1.0), 8, 0.5), InvalidArgument);
  CHECK(default_grading(Order(0.5, 0.5)) == doctest::Approx(4.0 / 3.0));
  CHECK(default_grading(Order(0.5, 1.0)) == 1.0);

  const GridPtr h = make_grid(PsiMap::identity(0.0, 2.0), 16, 2.0);
  CHECK(g->same_nodes(*h));
  CHECK_FALSE(g->same_nodes(*make_grid(PsiMap::identity(0.0, 2.0), 16, 1.5)));
}

TEST_CASE("weights and omega") {
  const PsiMap p = PsiMap::identity(0.0, 1.0);
  const Order o(0.5, 0.5);
  CHECK(weight(p, o, 0.0) == 0.0);
  CHECK(weight(p, o, 0.0625) == doctest::Approx(0.5));
  CHECK(omega(p, o, 0.0625) == doctest::Approx(2.0 / special::gamma_fn(0.75)));
  CHECK_THROWS_AS(omega(p, o, 0.0), DomainError);
  CHECK(omega(p, 1.0, 0.0) == 1.0);
  // Omega is the weighted constant 1/Gamma(rho).
  CHECK(weight(p, o, 0.3) * omega(p, o, 0.3) == doctest::Approx(1.0 / special::gamma_fn(0.75)));
}

TEST_CASE("weighted round trip") {
  const GridPtr g = make_grid(exp_psi(0.5, 1.5), 32, 1.5);
  const double rho = 0.6;
  std::vector<double> y;
  for (int j = 1; j <= g->size(); ++j) y.push_back(std::sin(g->nodes()[j]) + 3.0);
  const WeightedFunction w = to_weighted(g, rho, y, 0.0);
  CHECK(w.w[0] == 0.0);
  const std::vector<double> back = from_weighted(w);
  CHECK(std::isnan(back[0]));
  for (int j = 1; j <= g->size(); ++j) CHECK(back[j] == doctest::Approx(y[j - 1]).epsilon(1e-14));
  CHECK(weighted_norm(w) > 0.0);

  const WeightedFunction pos(g, std::vector<double>(33, 2.0), rho);
  CHECK(std::isinf(from_weighted(pos)[0]));
  const WeightedFunction one(g, std::vector<double>(33, 2.0), 1.0);
  CHECK(from_weighted(one)[0] == 2.0);

  CHECK_THROWS_AS(to_weighted(g, rho, std::vector<double>(5, 1.0), 0.0), InvalidArgument);
  CHECK_THROWS_AS(WeightedFunction(g, std::vector<double>(33, std::nan("")), rho), InvalidArgument);
  CHECK_THROWS_AS(WeightedFunction(g, std::vector<double>(33, 1.0), 0.0), InvalidArgument);
}

TEST_CASE("rewrap moves between spaces") {
  const GridPtr g = make_grid(PsiMap::identity(0.0, 1.0), 16, 1.0);
  // y = 1 in space rho = 1 has weighted form u^(1 - 0.5) in space 0.5.
  const WeightedFunction one(g, std::vector<double>(17, 1.0), 1.0);
  const WeightedFunction half = rewrap(one, 0.5);
  for (int j = 0; j <= 16; ++j) {
    CHECK(half.w[j] == doctest::Approx(std::sqrt(g->offsets()[j])).epsilon(1e-14));
  }
  const WeightedFunction back = rewrap(half, 1.0);
  for (int j = 1; j <= 16; ++j) CHECK(back.w[j] == doctest::Approx(1.0));
}
