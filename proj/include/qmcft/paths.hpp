#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qmcft/householder.hpp"
#include "qmcft/linalg.hpp"

namespace qmcft {

enum class PathMethod { forward, brownian_bridge, pca, chain, lt };

std::string_view to_string(PathMethod m);

/// Linear map x -> (B_{T/n}, ..., B_T) with A Aᵀ = Σ = (T/n) min(j,k).
///
/// `chain` and `lt` both mean "forward construction after an orthogonal
/// transform"; the tag only records where the transform came from.
class PathConstruction {
 public:
  static PathConstruction forward(std::size_t steps, double maturity);
  static PathConstruction brownian_bridge(std::size_t steps, double maturity);
  static PathConstruction pca(std::size_t steps, double maturity);
  static PathConstruction with_chain(TransformChain chain, double maturity,
                                     PathMethod tag = PathMethod::chain);

  PathMethod method() const { return method_; }
  std::size_t steps() const { return steps_; }
  double maturity() const { return maturity_; }
  const TransformChain& chain() const { return chain_; }

  /// path <- A x. `x` and `path` must not alias.
  void build(std::span<const double> x, std::span<double> path) const;

  /// Columns are the images of the canonical basis vectors.
  Matrix matrix() const;

 private:
  struct BridgeStep {
    std::size_t target;
    std::size_t left;   // index into path + 1; 0 means B_0 = 0
    std::size_t right;
    double w_left;
    double w_right;
    double sd;
  };

  PathConstruction(PathMethod m, std::size_t steps, double maturity)
      : method_(m), steps_(steps), maturity_(maturity) {}

  void build_bridge_schedule();

  PathMethod method_;
  std::size_t steps_;
  double maturity_;
  std::vector<BridgeStep> bridge_;
  Matrix pca_;  // V D, row-major
  TransformChain chain_;
};

/// Allocating wrapper; throws std::invalid_argument on size mismatch.
std::vector<double> construct_path(const PathConstruction& method, std::span<const double> x);

/// Σ = (T/n) min(j,k), 1-based indices.
Matrix brownian_covariance(std::size_t steps, double maturity);

/// Eigenpairs of the Brownian covariance in closed form, values descending:
/// λ_k = (T/n) / (4 sin²((2k-1)π / (2(2n+1)))), v_k(j) ∝ sin((2k-1) j π / (2n+1)).
SymmetricEigen brownian_covariance_eigen(std::size_t steps, double maturity);

}  // namespace qmcft
