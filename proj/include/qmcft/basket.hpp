#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmcft/householder.hpp"
#include "qmcft/linalg.hpp"
#include "qmcft/paths.hpp"

namespace qmcft {

/// m correlated Brownian motions sampled on n steps, asset-major layout:
/// entry i*n + k is σ_i B^{(i)}_{(k+1)T/n}.
struct BasketCovSpec {
  std::size_t assets = 1;
  std::size_t steps = 1;
  double maturity = 1.0;
  std::vector<double> vols;
  Matrix correlation;  // unit diagonal

  /// Vols equally spaced in [sigma_min, sigma_max], constant off-diagonal rho.
  static BasketCovSpec equicorrelated(std::size_t assets, std::size_t steps, double maturity,
                                      double sigma_min, double sigma_max, double rho);

  /// R_ij = ρ_ij σ_i σ_j
  Matrix asset_covariance() const;
  std::size_t dim() const { return assets * steps; }
};

/// (P ⊗ A) (U x): an optional orthogonal transform U on R^{mn}, an m×m
/// mixing factor P with P Pᵀ = R, and a single-asset path construction A.
class BasketConstruction {
 public:
  /// (V₁D₁) ⊗ (V₂D₂) from the eigendecompositions of R and Σ.
  static BasketConstruction pca(const BasketCovSpec& spec);
  /// chol(R) ⊗ A for a single-asset construction (forward, bridge, ...).
  static BasketConstruction cholesky_kron(const BasketCovSpec& spec, PathConstruction single);
  /// chol(R) ⊗ S applied after the chain.
  static BasketConstruction with_chain(const BasketCovSpec& spec, TransformChain chain);

  std::size_t dim() const { return assets_ * single_.steps(); }
  const Matrix& mixing() const { return mixing_; }
  const PathConstruction& single() const { return single_; }

  /// out <- C x; `scratch` needs dim() entries.
  void build(std::span<const double> x, std::span<double> out, std::span<double> scratch) const;

  Matrix matrix() const;

 private:
  BasketConstruction(Matrix mixing, PathConstruction single, TransformChain chain)
      : assets_(mixing.rows()), mixing_(std::move(mixing)), single_(std::move(single)),
        chain_(std::move(chain)) {}

  std::size_t assets_;
  Matrix mixing_;
  PathConstruction single_;
  TransformChain chain_;
};

/// C x with C = (V₁D₁) ⊗ (V₂D₂). Throws std::domain_error if R is not PSD.
std::vector<double> basket_construct(const BasketCovSpec& spec, std::span<const double> x);

}  // namespace qmcft
