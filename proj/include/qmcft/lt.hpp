#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qmcft/householder.hpp"
#include "qmcft/regression.hpp"

namespace qmcft {

/// Expansion point for column i (0-based): x̃_i = (c,...,c,0,...,0) with
/// i leading entries equal to `expansion_value`.
struct LtConfig {
  std::size_t columns = 25;
  double expansion_value = 1.0;
};

/// Writes ∇h(x) into grad.
using GradientFn = std::function<void(std::span<const double> x, std::span<double> grad)>;

struct LtTransform {
  TransformChain chain;
  std::vector<std::vector<double>> columns;  ///< the optimized columns
  std::vector<bool> degenerate;              ///< column fell back to the identity completion
};

/// Column i maximizes (∂h(AX)/∂X_i at x̃_i)² over unit vectors orthogonal to
/// the previous columns: the normalized projection of ∇h(A x̃_i). The columns
/// are completed with Householder reflections.
LtTransform lt_transform(std::size_t dim, const GradientFn& gradient, const LtConfig& cfg);

LtTransform lt_transform(const LogExpPayoffSpec& spec, const LtConfig& cfg);

}  // namespace qmcft
