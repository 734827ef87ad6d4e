#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frackit/errors.hpp"
#include "frackit/special.hpp"
#include "support.hpp"

using namespace frackit;
using namespace frackit::special;
using frackit::testing::Gen;
using frackit::testing::rel_err;

// Reference values computed with mpmath at 50 digits (tests/oracles/oracle_values.py).
TEST_CASE("gamma matches high-precision references") {
  CHECK(rel_err(gamma_fn(0.75), 1.2254167024651776451) < 1e-14);
  CHECK(rel_err(gamma_fn(0.3), 2.9915689876875904564) < 1e-14);
  CHECK(rel_err(gamma_fn(5.5), 52.342777784553520181) < 1e-14);
  CHECK(rel_err(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0));
}

TEST_CASE("gamma rejects its poles and overflow") {
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(gamma_fn(std::nan("")), DomainError);
  CHECK_THROWS_AS(gamma_fn(172.0), OverflowError);
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK(std::isfinite(log_gamma(1e5)));
}

TEST_CASE("property: gamma recurrence and log consistency") {
  Gen gen;
  for (int k = 0; k < 200; ++k) {
    const double x = gen.uniform(0.05, 150.0);
    CHECK(rel_err(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-13);
    CHECK(std::abs(log_gamma(x) - std::log(gamma_fn(x))) < 1e-12 * std::max(1.0, log_gamma(x)));
  }
}

TEST_CASE("Mittag-Leffler closed forms") {
  for (double z : {-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 10.0}) {
    CHECK(rel_err(mittag_leffler(1.0, z), std::exp(z)) < 1e-13);
  }
  CHECK(rel_err(mittag_leffler2({1.0, 2.0}, 1.0), std::numbers::e - 1.0) < 1e-14);
  CHECK(rel_err(mittag_leffler2({2.0, 1.0}, 1.0), std::cosh(1.0)) < 1e-14);
  CHECK(rel_err(mittag_leffler2({2.0, 1.0}, -1.0), std::cos(1.0)) < 1e-13);
  // E_{1/2}(z) = exp(z^2) erfc(-z).
  CHECK(rel_err(mittag_leffler(0.5, 1.0), std::exp(1.0) * std::erfc(-1.0)) < 1e-13);
  CHECK(mittag_leffler2({0.7, 1.3}, 0.0) == doctest::Approx(1.0 / gamma_fn(1.3)));
}

TEST_CASE("Mittag-Leffler high-precision references") {
  CHECK(rel_err(mittag_leffler(0.5, 4.0), 17772220.904016287648) < 1e-13);
  CHECK(rel_err(mittag_leffler2({0.5, 0.75}, 4.0), 35544442.027877927008) < 1e-13);
  CHECK(rel_err(mittag_leffler2({0.5, 0.75}, 1.0), 5.3611762590588331605) < 1e-14);
  CHECK(rel_err(mittag_leffler(0.5, 1.0), 5.0089800807622834663) < 1e-14);
}

TEST_CASE("tail sums avoid cancellation") {
  const double z = 1e-9;
  const double tail = mittag_leffler2_tail({0.5, 1.0}, z, 1);
  // Leading term z / Gamma(1.5).
  CHECK(rel_err(tail, z / gamma_fn(1.5)) < 1e-8);
  CHECK(rel_err(mittag_leffler2_tail({1.0, 1.0}, 1.0, 1), std::numbers::e - 1.0) < 1e-14);
  CHECK(rel_err(mittag_leffler2_tail({1.0, 1.0}, 1.0, 0), std::numbers::e) < 1e-14);
}

TEST_CASE("Mittag-Leffler domain and overflow reporting") {
  // Small mu with moderate z already overflows the direct series.
  CHECK_THROWS_AS(mittag_leffler2({0.15, 0.7}, 6.0), OverflowError);
  CHECK_THROWS_AS(mittag_leffler2({0.0, 1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(mittag_leffler2({0.5, -1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(mittag_leffler2({1.0, 1.0}, 800.0), OverflowError);
  CHECK_THROWS_AS(mittag_leffler2({1.0, 1.0}, -60.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler2({0.5, 1.0}, std::nan("")), DomainError);
}

TEST_CASE("property: Mittag-Leffler is increasing on z >= 0") {
  Gen gen(7);
  for (int k = 0; k < 100; ++k) {
    const MLParams p{gen.uniform(0.3, 2.0), gen.uniform(0.1, 2.0)};
    const double z1 = gen.uniform(0.0, 3.0);
    const double z2 = z1 + gen.uniform(1e-3, 1.0);
    CHECK(mittag_leffler2(p, z1) < mittag_leffler2(p, z2));
  }
}

TEST_CASE("property: Mittag-Leffler recurrence E_{mu,nu}(z) = 1/Gamma(nu) + z E_{mu,mu+nu}(z)") {
  Gen gen(11);
  for (int k = 0; k < 100; ++k) {
    const MLParams p{gen.uniform(0.2, 1.5), gen.uniform(0.2, 1.5)};
    const double z = gen.uniform(-1.0, 3.0);
    const double lhs = mittag_leffler2(p, z);
    const double rhs = 1.0 / gamma_fn(p.nu) + z * mittag_leffler2({p.mu, p.mu + p.nu}, z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}
