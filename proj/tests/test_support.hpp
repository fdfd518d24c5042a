#pragma once

// Oracles shared by the unit and acceptance tests. Nothing here calls into
// the closed forms under test.

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "qmcft/linalg.hpp"

namespace qmcft::testing {

struct RunningStats {
  double n = 0.0, mean = 0.0, m2 = 0.0;
  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1.0 ? m2 / (n - 1.0) : 0.0; }
  double std_error() const { return std::sqrt(variance() / n); }
};

/// Gram-Schmidt on Gaussian vectors: columns of a random orthogonal matrix.
inline Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (double& x : v) x = z(rng);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += q(i, k) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * q(i, k);
      }
    double len = 0.0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / len;
  }
  return q;
}

/// Maximum of a Brownian bridge of length h from a to b, sampled exactly:
/// P(max ≥ m) = exp(-2 (m-a)(m-b)/h).
inline double bridge_max(double a, double b, double h, double uniform) {
  const double d = b - a;
  return 0.5 * (a + b + std::sqrt(d * d - 2.0 * h * std::log(uniform)));
}

/// One drifted Brownian path observed at t and T, with exact running maxima
/// on [0,t] and [0,T].
struct MaxSample {
  double b_t, b_T, max_t, max_T;
};

inline MaxSample sample_drifted_max(double drift, double t, double horizon, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MaxSample s{};
  s.b_t = drift * t + std::sqrt(t) * z(rng);
  const double tau = horizon - t;
  s.b_T = tau > 0.0 ? s.b_t + drift * tau + std::sqrt(tau) * z(rng) : s.b_t;
  double u1 = u(rng);
  while (u1 == 0.0) u1 = u(rng);
  s.max_t = bridge_max(0.0, s.b_t, t, u1);
  double later = s.b_t;
  if (tau > 0.0) {
    double u2 = u(rng);
    while (u2 == 0.0) u2 = u(rng);
    later = bridge_max(s.b_t, s.b_T, tau, u2);
  }
  s.max_T = std::max(s.max_t, later);
  return s;
}

/// Drifted Brownian path on a uniform grid of `steps` steps (discrete maximum).
inline MaxSample sample_discrete_max(double drift, double t, double horizon, std::size_t steps,
                                     std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  const double dt = horizon / static_cast<double>(steps);
  const double sq = std::sqrt(dt);
  MaxSample s{};
  double b = 0.0, m = 0.0;
  bool seen_t = false;
  for (std::size_t k = 1; k <= steps; ++k) {
    b += drift * dt + sq * z(rng);
    m = std::max(m, b);
    if (!seen_t && static_cast<double>(k) * dt >= t - 1e-12) {
      s.b_t = b;
      s.max_t = m;
      seen_t = true;
    }
  }
  s.b_T = b;
  s.max_T = m;
  return s;
}

}  // namespace qmcft::testing
