#include "qmcft/householder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcft {

HouseholderReflection::HouseholderReflection(std::size_t n, std::size_t offset, std::vector<double> tail)
    : n_(n), offset_(offset), tail_(std::move(tail)) {
  if (!tail_.empty() && offset_ + tail_.size() != n_)
    throw std::invalid_argument("Householder vector does not span the trailing coordinates");
  const double vv = dot(tail_, tail_);
  if (vv > 0.0) {
    scale_ = 2.0 / vv;
  } else {
    tail_.clear();
  }
}

void HouseholderReflection::apply(std::span<double> x) const {
  if (x.size() != n_) throw std::invalid_argument("Householder reflection: dimension mismatch");
  if (scale_ == 0.0) return;
  double* xs = x.data() + offset_;
  const double* v = tail_.data();
  const std::size_t m = tail_.size();
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += v[i] * xs[i];
  s *= scale_;
  for (std::size_t i = 0; i < m; ++i) xs[i] -= s * v[i];
}

std::vector<double> HouseholderReflection::vector() const {
  std::vector<double> v(n_, 0.0);
  for (std::size_t i = 0; i < tail_.size(); ++i) v[offset_ + i] = tail_[i];
  return v;
}

std::vector<double> apply_householder(const HouseholderReflection& u, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  u.apply(y);
  return y;
}

HouseholderReflection householder_from_target(std::span<const double> a, std::size_t k) {
  const std::size_t n = a.size();
  if (k >= n) throw std::invalid_argument("Householder target index out of range");
  const double len = norm2(a);
  if (len == 0.0) return HouseholderReflection::identity(n);
  for (std::size_t j = 0; j < k; ++j)
    if (std::abs(a[j]) > 1e-12 * len) throw std::invalid_argument("target not in subspace");

  // v = â - e_k. When â_k > 0 the difference â_k - 1 cancels, so use
  // â_k - 1 = -(Σ_{j>k} â_j²) / (1 + â_k) instead.
  std::vector<double> tail(n - k);
  double rest = 0.0;
  for (std::size_t j = k + 1; j < n; ++j) {
    tail[j - k] = a[j] / len;
    rest += tail[j - k] * tail[j - k];
  }
  const double ak = a[k] / len;
  tail[0] = ak > 0.0 ? -rest / (1.0 + ak) : ak - 1.0;
  return HouseholderReflection(n, k, std::move(tail));
}

void TransformChain::push_back(HouseholderReflection r) {
  if (n_ == 0) n_ = r.dim();
  if (r.dim() != n_) throw std::invalid_argument("transform chain: dimension mismatch");
  factors_.push_back(std::move(r));
}

void TransformChain::apply(std::span<double> x) const {
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) it->apply(x);
}

void TransformChain::apply_transpose(std::span<double> x) const {
  for (const auto& f : factors_) f.apply(x);
}

Matrix TransformChain::materialize() const {
  Matrix m(n_, n_);
  std::vector<double> e(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    apply(e);
    for (std::size_t i = 0; i < n_; ++i) m(i, j) = e[i];
  }
  return m;
}

TransformChain complete_first_k_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return TransformChain();
  const std::size_t n = columns.front().size();
  if (columns.size() > n) throw std::invalid_argument("more columns than dimensions");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != n) throw std::invalid_argument("columns differ in length");
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(dot(columns[i], columns[j]) - expected) > 1e-10)
        throw std::invalid_argument("columns are not orthonormal");
    }
  }

  TransformChain chain(n);
  std::vector<double> target(n);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    // U_{j+1} must map e_j to U_j ... U_1 û_j, which vanishes above j.
    target = columns[j];
    chain.apply_transpose(target);
    std::fill(target.begin(), target.begin() + static_cast<std::ptrdiff_t>(j), 0.0);
    chain.push_back(householder_from_target(target, j));
  }
  return chain;
}

}  // namespace qmcft
