#pragma once

#include <cstddef>

namespace frackit::special {

struct MLParams {
  double mu;
  double nu;

  // Throws InvalidArgument unless mu > 0 and nu > 0.
  void validate() const;
};

// Maximum number of series terms before giving up.
inline constexpr std::size_t kMaxSeriesTerms = 10000;

/// Gamma function on x > 0. Throws DomainError for x <= 0 and OverflowError
/// when the result is not representable (x > ~171.6).
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// One-parameter Mittag-Leffler function E_mu(z) = sum z^k / Gamma(k mu + 1).
double mittag_leffler(double mu, double z);

/// Two-parameter Mittag-Leffler function E_{mu,nu}(z) = sum z^k / Gamma(k mu + nu).
///
/// Summed term by term until the next term drops below
/// 1e-15 * (1 + |partial sum|). No asymptotic expansion is used: arguments whose
/// partial sums overflow raise OverflowError, and negative arguments whose
/// terms cancel by more than eight decimal digits raise DomainError. Accuracy
/// degrades for z beyond roughly 700^mu.
double mittag_leffler2(MLParams params, double z);

/// Series tail sum_{k >= first_k} z^k / Gamma(k mu + nu) with the same
/// truncation rule. Used where E - (leading terms) would cancel.
double mittag_leffler2_tail(MLParams params, double z, std::size_t first_k);

}  // namespace frackit::special
