#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmcft/linalg.hpp"

namespace qmcft {

/// U = I - 2 v vᵀ / (vᵀ v) acting on coordinates offset..n-1 (0-based).
///
/// Only the trailing part of v is stored. A zero vector means U = I.
class HouseholderReflection {
 public:
  HouseholderReflection() = default;
  /// `tail` holds v restricted to coordinates offset..n-1.
  HouseholderReflection(std::size_t n, std::size_t offset, std::vector<double> tail);

  static HouseholderReflection identity(std::size_t n) { return {n, 0, {}}; }

  std::size_t dim() const { return n_; }
  std::size_t offset() const { return offset_; }
  std::span<const double> tail() const { return tail_; }
  bool is_identity() const { return scale_ == 0.0; }

  /// x <- U x, at most 4(n - offset) flops.
  void apply(std::span<double> x) const;

  /// Full defining vector of length n.
  std::vector<double> vector() const;

 private:
  std::size_t n_ = 0;
  std::size_t offset_ = 0;
  std::vector<double> tail_;
  double scale_ = 0.0;  // 2 / vᵀv, 0 for the identity
};

/// Returns U applied to x (copying). Throws std::invalid_argument on size mismatch.
std::vector<double> apply_householder(const HouseholderReflection& u, std::span<const double> x);

/// Reflection with U e_k = a / |a| (k is 0-based) acting on coordinates k..n-1.
/// Entries of a before k must be zero ("target not in subspace" otherwise);
/// a = 0 gives the identity.
HouseholderReflection householder_from_target(std::span<const double> a, std::size_t k);

/// Product U_1 U_2 ... U_m of reflections; applied right to left.
class TransformChain {
 public:
  TransformChain() = default;
  explicit TransformChain(std::size_t n) : n_(n) {}

  std::size_t dim() const { return n_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  const std::vector<HouseholderReflection>& factors() const { return factors_; }

  /// Appends on the right: U <- U * r.
  void push_back(HouseholderReflection r);

  /// x <- U x
  void apply(std::span<double> x) const;
  /// x <- Uᵀ x
  void apply_transpose(std::span<double> x) const;

  /// Dense U, for tests and diagnostics.
  Matrix materialize() const;

 private:
  std::size_t n_ = 0;
  std::vector<HouseholderReflection> factors_;
};

/// Builds U_1...U_k whose first k columns equal the supplied orthonormal
/// columns. Throws std::invalid_argument when the columns are not
/// orthonormal to 1e-10.
TransformChain complete_first_k_columns(const std::vector<std::vector<double>>& columns);

}  // namespace qmcft
