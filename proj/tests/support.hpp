#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace frackit::testing {

// Fixed-seed source for the property tests so failures reproduce.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace frackit::testing
