#include "qmcft/paths.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qmcft {

std::string_view to_string(PathMethod m) {
  switch (m) {
    case PathMethod::forward: return "forward";
    case PathMethod::brownian_bridge: return "brownian_bridge";
    case PathMethod::pca: return "pca";
    case PathMethod::chain: return "chain";
    case PathMethod::lt: return "lt";
  }
  return "?";
}

namespace {

void check_steps(std::size_t steps, double maturity) {
  if (steps == 0) throw std::invalid_argument("path construction needs at least one step");
  if (!(maturity > 0.0)) throw std::invalid_argument("maturity must be positive");
}

}  // namespace

PathConstruction PathConstruction::forward(std::size_t steps, double maturity) {
  check_steps(steps, maturity);
  return {PathMethod::forward, steps, maturity};
}

PathConstruction PathConstruction::brownian_bridge(std::size_t steps, double maturity) {
  check_steps(steps, maturity);
  PathConstruction p(PathMethod::brownian_bridge, steps, maturity);
  p.build_bridge_schedule();
  return p;
}

PathConstruction PathConstruction::pca(std::size_t steps, double maturity) {
  check_steps(steps, maturity);
  PathConstruction p(PathMethod::pca, steps, maturity);
  const SymmetricEigen eig = brownian_covariance_eigen(steps, maturity);
  p.pca_ = Matrix(steps, steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double d = std::sqrt(eig.values[k]);
    for (std::size_t j = 0; j < steps; ++j) p.pca_(j, k) = eig.vectors(j, k) * d;
  }
  return p;
}

PathConstruction PathConstruction::with_chain(TransformChain chain, double maturity, PathMethod tag) {
  if (tag != PathMethod::chain && tag != PathMethod::lt)
    throw std::invalid_argument("with_chain: tag must be chain or lt");
  check_steps(chain.dim(), maturity);
  PathConstruction p(tag, chain.dim(), maturity);
  p.chain_ = std::move(chain);
  return p;
}

// Breadth-first bisection on index intervals; for n = 2^k this is the
// classical bridge ordering.
void PathConstruction::build_bridge_schedule() {
  const double dt = maturity_ / static_cast<double>(steps_);
  bridge_.clear();
  bridge_.reserve(steps_);
  bridge_.push_back({steps_, 0, 0, 0.0, 0.0, std::sqrt(maturity_)});

  std::deque<std::pair<std::size_t, std::size_t>> pending{{0, steps_}};
  while (!pending.empty()) {
    const auto [l, r] = pending.front();
    pending.pop_front();
    if (r - l < 2) continue;
    const std::size_t m = (l + r) / 2;
    const double span = static_cast<double>(r - l);
    const double left = static_cast<double>(m - l);
    const double right = static_cast<double>(r - m);
    bridge_.push_back({m, l, r, right / span, left / span, std::sqrt(dt * left * right / span)});
    pending.emplace_back(l, m);
    pending.emplace_back(m, r);
  }
}

void PathConstruction::build(std::span<const double> x, std::span<double> path) const {
  if (x.size() != steps_ || path.size() != steps_)
    throw std::invalid_argument("path construction: dimension mismatch");
  const double sqdt = std::sqrt(maturity_ / static_cast<double>(steps_));

  switch (method_) {
    case PathMethod::forward: {
      double b = 0.0;
      for (std::size_t k = 0; k < steps_; ++k) path[k] = (b += sqdt * x[k]);
      return;
    }
    case PathMethod::brownian_bridge: {
      auto at = [&](std::size_t p) { return p == 0 ? 0.0 : path[p - 1]; };
      for (std::size_t i = 0; i < bridge_.size(); ++i) {
        const BridgeStep& s = bridge_[i];
        path[s.target - 1] = s.w_left * at(s.left) + s.w_right * at(s.right) + s.sd * x[i];
      }
      return;
    }
    case PathMethod::pca:
      multiply(pca_, x, path);
      return;
    case PathMethod::chain:
    case PathMethod::lt: {
      std::copy(x.begin(), x.end(), path.begin());
      chain_.apply(path);
      double b = 0.0;
      for (std::size_t k = 0; k < steps_; ++k) path[k] = (b += sqdt * path[k]);
      return;
    }
  }
}

Matrix PathConstruction::matrix() const {
  Matrix a(steps_, steps_);
  std::vector<double> e(steps_), col(steps_);
  for (std::size_t j = 0; j < steps_; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    build(e, col);
    for (std::size_t i = 0; i < steps_; ++i) a(i, j) = col[i];
  }
  return a;
}

std::vector<double> construct_path(const PathConstruction& method, std::span<const double> x) {
  std::vector<double> path(method.steps());
  method.build(x, path);
  return path;
}

Matrix brownian_covariance(std::size_t steps, double maturity) {
  const double dt = maturity / static_cast<double>(steps);
  Matrix s(steps, steps);
  for (std::size_t j = 0; j < steps; ++j)
    for (std::size_t k = 0; k < steps; ++k) s(j, k) = dt * static_cast<double>(std::min(j, k) + 1);
  return s;
}

SymmetricEigen brownian_covariance_eigen(std::size_t steps, double maturity) {
  const double dt = maturity / static_cast<double>(steps);
  const double m = 2.0 * static_cast<double>(steps) + 1.0;
  const double norm = 2.0 / std::sqrt(m);
  SymmetricEigen e{std::vector<double>(steps), Matrix(steps, steps)};
  for (std::size_t k = 0; k < steps; ++k) {
    const double odd = 2.0 * static_cast<double>(k) + 1.0;
    const double s = std::sin(odd * std::numbers::pi / (2.0 * m));
    e.values[k] = dt / (4.0 * s * s);
    for (std::size_t j = 0; j < steps; ++j)
      e.vectors(j, k) = norm * std::sin(odd * static_cast<double>(j + 1) * std::numbers::pi / m);
  }
  return e;
}

}  // namespace qmcft
