#include "qmcft/basket.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcft {

BasketCovSpec BasketCovSpec::equicorrelated(std::size_t assets, std::size_t steps, double maturity,
                                            double sigma_min, double sigma_max, double rho) {
  if (assets == 0) throw std::invalid_argument("basket needs at least one asset");
  BasketCovSpec s;
  s.assets = assets;
  s.steps = steps;
  s.maturity = maturity;
  s.vols.resize(assets);
  for (std::size_t i = 0; i < assets; ++i)
    s.vols[i] = assets == 1 ? sigma_min
                            : sigma_min + (sigma_max - sigma_min) * static_cast<double>(i) /
                                              static_cast<double>(assets - 1);
  s.correlation = Matrix(assets, assets, rho);
  for (std::size_t i = 0; i < assets; ++i) s.correlation(i, i) = 1.0;
  return s;
}

Matrix BasketCovSpec::asset_covariance() const {
  if (vols.size() != assets || correlation.rows() != assets || correlation.cols() != assets)
    throw std::invalid_argument("basket covariance: inconsistent sizes");
  Matrix r(assets, assets);
  for (std::size_t i = 0; i < assets; ++i)
    for (std::size_t j = 0; j < assets; ++j) r(i, j) = correlation(i, j) * vols[i] * vols[j];
  return r;
}

namespace {

// V D with V D² Vᵀ = R; small negative eigenvalues from rounding are zeroed.
Matrix sqrt_factor(const Matrix& r) {
  const SymmetricEigen eig = jacobi_eigen(r);
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  Matrix f(r.rows(), r.cols());
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    double lambda = eig.values[k];
    if (lambda < -1e-12 * std::max(scale, 1.0))
      throw std::domain_error("asset covariance is not positive semidefinite");
    lambda = std::max(lambda, 0.0);
    for (std::size_t i = 0; i < r.rows(); ++i) f(i, k) = eig.vectors(i, k) * std::sqrt(lambda);
  }
  return f;
}

}  // namespace

BasketConstruction BasketConstruction::pca(const BasketCovSpec& spec) {
  return {sqrt_factor(spec.asset_covariance()), PathConstruction::pca(spec.steps, spec.maturity),
          TransformChain()};
}

BasketConstruction BasketConstruction::cholesky_kron(const BasketCovSpec& spec, PathConstruction single) {
  if (single.steps() != spec.steps) throw std::invalid_argument("basket: step count mismatch");
  return {cholesky(spec.asset_covariance()), std::move(single), TransformChain()};
}

BasketConstruction BasketConstruction::with_chain(const BasketCovSpec& spec, TransformChain chain) {
  if (!chain.empty() && chain.dim() != spec.dim())
    throw std::invalid_argument("basket: transform dimension mismatch");
  return {cholesky(spec.asset_covariance()), PathConstruction::forward(spec.steps, spec.maturity),
          std::move(chain)};
}

void BasketConstruction::build(std::span<const double> x, std::span<double> out,
                               std::span<double> scratch) const {
  const std::size_t n = single_.steps();
  const std::size_t total = assets_ * n;
  if (x.size() != total || out.size() != total || scratch.size() < total)
    throw std::invalid_argument("basket construction: dimension mismatch");

  // out <- U x, then scratch_i <- A out_i per asset block, then mix blocks.
  std::copy(x.begin(), x.end(), out.begin());
  if (!chain_.empty()) chain_.apply(out);
  for (std::size_t i = 0; i < assets_; ++i)
    single_.build(out.subspan(i * n, n), scratch.subspan(i * n, n));
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < assets_; ++i)
    for (std::size_t j = 0; j < assets_; ++j) {
      const double p = mixing_(i, j);
      if (p == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) out[i * n + k] += p * scratch[j * n + k];
    }
}

Matrix BasketConstruction::matrix() const {
  const std::size_t d = dim();
  Matrix c(d, d);
  std::vector<double> e(d), col(d), scratch(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    build(e, col, scratch);
    for (std::size_t i = 0; i < d; ++i) c(i, j) = col[i];
  }
  return c;
}

std::vector<double> basket_construct(const BasketCovSpec& spec, std::span<const double> x) {
  const BasketConstruction c = BasketConstruction::pca(spec);
  std::vector<double> out(c.dim()), scratch(c.dim());
  c.build(x, out, scratch);
  return out;
}

}  // namespace qmcft
