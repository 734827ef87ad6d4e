#include "frackit/special.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "frackit/errors.hpp"

namespace frackit::special {

namespace {

constexpr double kTruncation = 1e-15;
// Largest Gamma argument evaluated directly; tgamma overflows past ~171.62.
constexpr double kDirectGammaLimit = 170.0;
// Negative arguments may cancel; give up when the largest term exceeds the
// result by more than this factor.
constexpr double kCancellationLimit = 1e8;

double series_term(double mu, double nu, double z, std::size_t k) {
  const double arg = static_cast<double>(k) * mu + nu;
  if (k == 0) return 1.0 / gamma_fn(nu);
  if (z == 0.0) return 0.0;
  if (arg <= kDirectGammaLimit) {
    const double p = std::pow(z, static_cast<double>(k));
    if (std::isfinite(p)) return p / std::tgamma(arg);
  }
  const double sign = (z < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return sign * std::exp(static_cast<double>(k) * std::log(std::abs(z)) - std::lgamma(arg));
}

double sum_series(MLParams p, double z, std::size_t first_k) {
  p.validate();
  if (!std::isfinite(z)) throw DomainError("mittag_leffler: non-finite argument");
  double sum = 0.0;
  double largest = 0.0;
  double current = series_term(p.mu, p.nu, z, first_k);
  for (std::size_t k = first_k; k < first_k + kMaxSeriesTerms; ++k) {
    sum += current;
    largest = std::max(largest, std::abs(current));
    if (!std::isfinite(sum)) {
      std::ostringstream os;
      os << "mittag_leffler: partial sum overflow at term " << k << " (mu=" << p.mu
         << ", nu=" << p.nu << ", z=" << z << ")";
      throw OverflowError(os.str());
    }
    const double next = series_term(p.mu, p.nu, z, k + 1);
    // Terms are unimodal in magnitude; only stop on the decreasing side.
    if (std::abs(next) <= std::abs(current) &&
        std::abs(next) < kTruncation * (1.0 + std::abs(sum))) {
      if (largest > kCancellationLimit * std::abs(sum)) {
        std::ostringstream os;
        os << "mittag_leffler: catastrophic cancellation for z=" << z;
        throw DomainError(os.str());
      }
      return sum;
    }
    current = next;
  }
  std::ostringstream os;
  os << "mittag_leffler: series did not converge within " << kMaxSeriesTerms
     << " terms (z=" << z << ")";
  throw OverflowError(os.str());
}

}  // namespace

void MLParams::validate() const {
  if (!(mu > 0.0) || !(nu > 0.0) || !std::isfinite(mu) || !std::isfinite(nu)) {
    std::ostringstream os;
    os << "Mittag-Leffler parameters must be positive (mu=" << mu << ", nu=" << nu << ")";
    throw InvalidArgument(os.str());
  }
}

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gamma_fn: argument must be positive, got " << x;
    throw DomainError(os.str());
  }
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) {
    std::ostringstream os;
    os << "gamma_fn: overflow at x=" << x;
    throw OverflowError(os.str());
  }
  return g;
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "log_gamma: argument must be positive, got " << x;
    throw DomainError(os.str());
  }
  return std::lgamma(x);
}

double mittag_leffler(double mu, double z) { return mittag_leffler2({mu, 1.0}, z); }

double mittag_leffler2(MLParams params, double z) { return sum_series(params, z, 0); }

double mittag_leffler2_tail(MLParams params, double z, std::size_t first_k) {
  return sum_series(params, z, first_k);
}

}  // namespace frackit::special
