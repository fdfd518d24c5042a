#pragma once

#include <stdexcept>
#include <string>

namespace qmcft {

/// A (payoff, method) pair the library cannot price, e.g. LT on a barrier payoff.
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature or another numerical routine failed to reach its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmcft
