#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qmcft/householder.hpp"
#include "qmcft/linalg.hpp"

namespace qmcft {

/// f(X) = Σ_k w_k exp(Σ_j c_{k,j} X_j + d_{k,j}), X standard normal in R^n.
struct LogExpPayoffSpec {
  std::vector<double> weights;  // m
  Matrix coeffs;                // m × n
  Matrix drifts;                // m × n

  std::size_t terms() const { return weights.size(); }
  std::size_t dim() const { return coeffs.cols(); }

  /// Throws std::invalid_argument on inconsistent shapes or non-finite entries.
  void validate() const;

  /// f(x)
  double evaluate(std::span<const double> x) const;
  /// ∇f(x)
  std::vector<double> gradient(std::span<const double> x) const;
};

/// Arithmetic average (S₀/n) Σ_k exp(σ B_{kT/n} + (r - σ²/2) kT/n) with B
/// built by the forward method.
LogExpPayoffSpec asian_logexp_spec(double spot, double rate, double vol, double maturity,
                                   std::size_t steps);

struct RegressionVector {
  std::vector<double> a;  ///< a_j = E(X_j h(X))
  double norm = 0.0;

  static RegressionVector from(std::vector<double> a);
};

struct VarianceReport {
  double captured = 0.0;  ///< |a|²
  double total = 0.0;     ///< V(f(X))
  double residual_fraction = 0.0;
};

/// Exact a_i = Σ_k c_{k,i} w̄_k, w̄_k = w_k exp(Σ_j c²_{k,j}/2 + d_{k,j}).
RegressionVector logexp_coefficients(const LogExpPayoffSpec& spec);

/// |a|² = Σ w̄w̄ c̄ and V = Σ w̄w̄ (e^{c̄} - 1), c̄ = C Cᵀ. O(m² n).
VarianceReport variance_report(const LogExpPayoffSpec& spec);

/// Same quantities for the Asian average using c̄_{k,l} = σ²T min(k,l)/n and
/// w̄_k = e^{rTk/n}/n; O(n²) without materializing the LogExpPayoffSpec.
VarianceReport asian_variance_report(double rate, double vol, double maturity, std::size_t steps);

/// Limit n → ∞ of the Asian report (double integrals in closed form).
/// Throws std::domain_error("use discrete form") for rT below 1e-3.
VarianceReport variance_report_continuum(double rate, double vol, double maturity);

/// a_i = (S₀/n) Σ_{k≥i} σ √(T/n) e^{r k T/n}, the Asian regression vector.
RegressionVector asian_regression_vector(double spot, double rate, double vol, double maturity,
                                         std::size_t steps);

/// Single reflection with U e₁ = a/|a|; empty chain when a = 0.
TransformChain regression_transform(const RegressionVector& a);

/// Supplies a^{(k)} given the chain built so far (entries j < k are zeroed
/// by regression_chain).
using CoefficientProvider = std::function<std::vector<double>(const TransformChain& current)>;

/// Provider for a vector known in the original coordinates: returns Uᵀ a.
CoefficientProvider fixed_coefficients(std::vector<double> a);

/// Multi-function chain: U^{(k)} maps e_k to a^{(k)}/|a^{(k)}|. Stops at the
/// first vanishing a^{(k)}.
TransformChain regression_chain(std::size_t dim, std::span<const CoefficientProvider> providers);

struct ExactLinearChain {
  TransformChain chain;
  std::size_t effective_dim = 0;  ///< m̂
};

/// Chain U with w_kᵀ U x depending on x_1..x_m̂ only. Zero residual vectors
/// are skipped without consuming a coordinate.
ExactLinearChain exact_linear_chain(std::size_t dim, const std::vector<std::vector<double>>& ws);

}  // namespace qmcft
