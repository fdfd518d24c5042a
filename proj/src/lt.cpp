#include "qmcft/lt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcft {

LtTransform lt_transform(std::size_t dim, const GradientFn& gradient, const LtConfig& cfg) {
  if (dim == 0) throw std::invalid_argument("lt_transform: dimension must be positive");
  const std::size_t k = std::min(cfg.columns, dim);
  LtTransform out;
  out.chain = TransformChain(dim);
  if (k == 0) return out;

  TransformChain partial(dim);  // U_1...U_i, used for the degenerate fallback
  std::vector<double> point(dim), grad(dim), target(dim);

  for (std::size_t i = 0; i < k; ++i) {
    // A x̃_i = c (A_{·1} + ... + A_{·i-1})
    std::fill(point.begin(), point.end(), 0.0);
    for (const auto& col : out.columns)
      for (std::size_t j = 0; j < dim; ++j) point[j] += cfg.expansion_value * col[j];
    gradient(point, grad);

    // ∂h(AX)/∂X_i = A_{·i}ᵀ ∇h, so the maximizer is the projection of ∇h onto
    // the complement of the columns found so far.
    std::vector<double> col = grad;
    const double grad_norm = norm2(grad);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& prev : out.columns) {
        const double c = dot(prev, col);
        for (std::size_t j = 0; j < dim; ++j) col[j] -= c * prev[j];
      }
    const double len = norm2(col);
    const bool degenerate = !(len > 1e-10 * grad_norm) || grad_norm == 0.0;
    if (degenerate) {
      std::fill(col.begin(), col.end(), 0.0);
      col[i] = 1.0;
      partial.apply(col);
    } else {
      for (double& v : col) v /= len;
    }

    target = col;
    partial.apply_transpose(target);
    std::fill(target.begin(), target.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
    partial.push_back(householder_from_target(target, i));

    out.columns.push_back(std::move(col));
    out.degenerate.push_back(degenerate);
  }
  out.chain = complete_first_k_columns(out.columns);
  return out;
}

LtTransform lt_transform(const LogExpPayoffSpec& spec, const LtConfig& cfg) {
  spec.validate();
  return lt_transform(
      spec.dim(),
      [&spec](std::span<const double> x, std::span<double> grad) {
        const std::vector<double> g = spec.gradient(x);
        std::copy(g.begin(), g.end(), grad.begin());
      },
      cfg);
}

}  // namespace qmcft
