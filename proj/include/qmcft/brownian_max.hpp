#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qmcft {

// Expectations involving the running maximum M^ν_T = max_{0≤s≤T} B^ν_s of
// Brownian motion with drift, B^ν_t = B_t + ν t.

enum class MomentKind { one, identity };

/// P(M^ν_t ≥ u) = Φ((νt-u)/√t) + e^{2uν} Φ((-u-νt)/√t) for u ≥ 0; 1 for u < 0.
double prob_max_exceeds(double u, double drift, double t);

/// P(max_{0≤s≤τ} (x + B^ν_s) ≥ u): the barrier shifted by the current value.
double conditional_exceed_prob(double u, double x, double drift, double remaining);

/// E(1_{M^ν_T ≥ u} f(B^ν_t)) for f = 1 or f = id, 0 < t ≤ T, u ≥ 0.
double indicator_moment(double u, double drift, double t, double horizon, MomentKind f);

/// The two parts of E(1_{M^ν_T ≥ u} f(B^ν_t)) split by whether the barrier
/// was reached before t; computed from the joint density of (M_t, B_t) rather
/// than the regrouped form used by indicator_moment.
struct IndicatorMomentParts {
  double before_t = 0.0;  ///< E(f(B_t) 1_{M_t ≥ u})
  double after_t = 0.0;   ///< E(1_{M_t < u} f(B_t) P(M_{t,T} ≥ u | B_t))
};
IndicatorMomentParts indicator_moment_parts(double u, double drift, double t, double horizon,
                                            MomentKind f);

/// E(h(M^ν_T) f(B^ν_t)) = ∫₀^∞ h'(u) E(1_{M^ν_T≥u} f(B^ν_t)) du for h(0) = 0,
/// truncated at |ν|T + 10√T.
double weighted_max_expectation(const std::function<double(double)>& h_prime, double drift,
                                double t, double horizon, MomentKind f);

struct BarrierCoefficients {
  std::vector<double> a;     ///< regression vector of the up-and-in indicator
  std::vector<double> beta;  ///< β_i = E(1_{M ≥ ũ} B^ν_{iT/n})
  double gamma = 0.0;        ///< P(M ≥ ũ)
};

/// Regression coefficients E(X_i 1_{max_k S_k ≥ barrier}) of the digital
/// up-and-in payoff, using the continuous-time maximum in place of the
/// discrete one.
BarrierCoefficients barrier_coefficients(double spot, double rate, double vol, double maturity,
                                         std::size_t steps, double barrier);

}  // namespace qmcft
