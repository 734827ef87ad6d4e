#pragma once

#include <stdexcept>
#include <string>

namespace frackit {

// Argument outside the mathematical domain of a function (x <= 0 for gamma,
// t outside [a, b], evaluation at a singular endpoint).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A stability hypothesis does not hold, e.g. lambda * L >= 1 for the
// Ulam-Hyers-Rassias constant.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two weighted functions or a function and a problem live on different grids.
class GridMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frackit
