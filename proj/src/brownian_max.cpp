#include "qmcft/brownian_max.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmcft/normal.hpp"
#include "qmcft/quadrature.hpp"

namespace qmcft {

namespace {

constexpr double kTruncation = 8.0;  // standard deviations kept by the quadratures
constexpr double kInnerTol = 1e-9;

// log Φ(z), accurate far into the left tail.
double log_normal_cdf(double z) {
  if (z > -30.0) return std::log(normal_cdf(z));
  const double z2 = z * z;
  return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

// e^{c} Φ(z) without overflowing the exponential.
double exp_times_cdf(double c, double z) {
  const double p = normal_cdf(z);
  if (c < 700.0 && p > 1e-300) return std::exp(c) * p;
  return std::exp(c + log_normal_cdf(z));
}

double gaussian_density(double x, double mean, double sd) { return normal_pdf((x - mean) / sd) / sd; }

// E(f(Y) 1_{Y ≥ u}) for Y ~ N(mean, sd²)
double upper_moment(double u, double mean, double sd, MomentKind f) {
  const double z = (mean - u) / sd;
  if (f == MomentKind::one) return normal_cdf(z);
  return mean * normal_cdf(z) + sd * normal_pdf(z);
}

// E(f(Y) 1_{Y ≤ v}) for Y ~ N(mean, sd²)
double lower_moment(double v, double mean, double sd, MomentKind f) {
  const double z = (v - mean) / sd;
  if (f == MomentKind::one) return normal_cdf(z);
  return mean * normal_cdf(z) - sd * normal_pdf(z);
}

double apply_f(MomentKind f, double x) { return f == MomentKind::one ? 1.0 : x; }

void check_times(double t, double horizon) {
  if (!(t > 0.0) || !(horizon >= t)) throw std::invalid_argument("need 0 < t <= T");
}

// E(1_{M_t ≥ u} f(B_t)) in closed form: reflection plus change of measure.
double stopped_moment(double u, double drift, double t, MomentKind f) {
  const double mean = drift * t, sd = std::sqrt(t);
  const double direct = upper_moment(u, mean, sd, f);
  // e^{2uν} E(1_{B_t ≤ -u} f(2u + B_t))
  const double z = (-u - mean) / sd;
  double reflected;
  if (f == MomentKind::one) {
    reflected = exp_times_cdf(2.0 * u * drift, z);
  } else {
    const double lower = lower_moment(-u, mean, sd, MomentKind::identity);
    reflected = std::exp(2.0 * u * drift) * (2.0 * u * normal_cdf(z) + lower);
  }
  return direct + reflected;
}

double indicator_moment_tol(double u, double drift, double t, double horizon, MomentKind f,
                            double tol) {
  check_times(t, horizon);
  if (u < 0.0) throw std::invalid_argument("indicator_moment needs u >= 0");
  if (u == 0.0) return f == MomentKind::one ? 1.0 : drift * t;
  const double tau = horizon - t;
  if (tau <= 1e-14 * horizon) return stopped_moment(u, drift, t, f);

  const double mean = drift * t, sd = std::sqrt(t);
  const double lo = mean - kTruncation * sd, hi = mean + kTruncation * sd;
  const QuadratureOptions opts{tol};

  // E(f(B_t) g(u, B_t)); g = 1 above the barrier.
  double first = upper_moment(u, mean, sd, f);
  if (lo < u) {
    first += adaptive_simpson(
        [&](double x) {
          return gaussian_density(x, mean, sd) * apply_f(f, x) *
                 conditional_exceed_prob(u, x, drift, tau);
        },
        lo, std::min(u, hi), opts);
  }

  // e^{2uν} E(1_{B_t ≤ -u} f(2u + B_t) (1 - g(u, 2u + B_t))); the middle
  // term of the decomposition vanishes because g = 1 on {B_t ≥ u}.
  double third = 0.0;
  if (lo < -u) {
    third = adaptive_simpson(
        [&](double y) {
          const double z = (y - mean) / sd;
          const double weight =
              std::exp(2.0 * u * drift - 0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
          const double x = 2.0 * u + y;
          return weight * apply_f(f, x) * (1.0 - conditional_exceed_prob(u, x, drift, tau));
        },
        lo, std::min(-u, hi), opts);
  }
  return first + third;
}

}  // namespace

double prob_max_exceeds(double u, double drift, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("prob_max_exceeds needs t > 0");
  if (u <= 0.0) return 1.0;
  const double sd = std::sqrt(t);
  const double p = normal_cdf((drift * t - u) / sd) + exp_times_cdf(2.0 * u * drift, (-u - drift * t) / sd);
  return std::min(p, 1.0);
}

double conditional_exceed_prob(double u, double x, double drift, double remaining) {
  if (!(remaining > 0.0)) throw std::invalid_argument("conditional_exceed_prob needs remaining time > 0");
  if (x >= u) return 1.0;
  return prob_max_exceeds(u - x, drift, remaining);
}

double indicator_moment(double u, double drift, double t, double horizon, MomentKind f) {
  return indicator_moment_tol(u, drift, t, horizon, f, kInnerTol);
}

IndicatorMomentParts indicator_moment_parts(double u, double drift, double t, double horizon,
                                            MomentKind f) {
  check_times(t, horizon);
  if (u < 0.0) throw std::invalid_argument("indicator_moment_parts needs u >= 0");
  IndicatorMomentParts parts;
  parts.before_t = u == 0.0 ? (f == MomentKind::one ? 1.0 : drift * t) : stopped_moment(u, drift, t, f);
  const double tau = horizon - t;
  if (u == 0.0 || tau <= 1e-14 * horizon) return parts;

  // density of B_t on {M_t < u}: φ(x) - e^{2uν} φ(x - 2u), x < u
  const double mean = drift * t, sd = std::sqrt(t);
  const double lo = mean - kTruncation * sd;
  if (lo < u) {
    parts.after_t = adaptive_simpson(
        [&](double x) {
          const double z = (x - mean) / sd, zr = (x - 2.0 * u - mean) / sd;
          const double density = (std::exp(-0.5 * z * z) - std::exp(2.0 * u * drift - 0.5 * zr * zr)) /
                                 (sd * std::sqrt(2.0 * std::numbers::pi));
          return density * apply_f(f, x) * conditional_exceed_prob(u, x, drift, tau);
        },
        lo, u, QuadratureOptions{kInnerTol});
  }
  return parts;
}

double weighted_max_expectation(const std::function<double(double)>& h_prime, double drift, double t,
                                double horizon, MomentKind f) {
  check_times(t, horizon);
  const double upper = std::abs(drift) * horizon + 10.0 * std::sqrt(horizon);
  return adaptive_simpson(
      [&](double u) {
        const double w = h_prime(u);
        if (w == 0.0) return 0.0;
        return w * indicator_moment_tol(u, drift, t, horizon, f, 1e-12);
      },
      0.0, upper, QuadratureOptions{1e-7});
}

BarrierCoefficients barrier_coefficients(double spot, double rate, double vol, double maturity,
                                         std::size_t steps, double barrier) {
  if (!(barrier > 0.0) || !(spot > 0.0)) throw std::invalid_argument("barrier and spot must be positive");
  if (!(vol > 0.0)) throw std::invalid_argument("barrier coefficients need σ > 0");
  if (steps == 0 || !(maturity > 0.0)) throw std::invalid_argument("need n >= 1 and T > 0");

  const double drift = (rate - 0.5 * vol * vol) / vol;
  const double level = std::log(barrier / spot) / vol;
  const double dt = maturity / static_cast<double>(steps);
  const double sqdt = std::sqrt(dt);

  BarrierCoefficients c{std::vector<double>(steps, 0.0), std::vector<double>(steps), 1.0};
  if (level <= 0.0) {
    // indicator is identically one
    for (std::size_t i = 0; i < steps; ++i) c.beta[i] = drift * dt * static_cast<double>(i + 1);
    return c;
  }

  c.gamma = prob_max_exceeds(level, drift, maturity);
  double previous = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = i + 1 == steps ? maturity : dt * static_cast<double>(i + 1);
    c.beta[i] = indicator_moment(level, drift, t, maturity, MomentKind::identity);
    c.a[i] = (c.beta[i] - previous) / sqdt - drift * sqdt * c.gamma;
    previous = c.beta[i];
  }
  return c;
}

}  // namespace qmcft
