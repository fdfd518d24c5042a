#include "qmcft/payoffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcft {

std::string_view to_string(PayoffKind k) {
  switch (k) {
    case PayoffKind::asian_call: return "asian_call";
    case PayoffKind::basket_asian_call: return "basket_asian_call";
    case PayoffKind::digital_up_in: return "digital_up_in";
    case PayoffKind::asian_up_in: return "asian_up_in";
  }
  return "?";
}

void gbm_path(const GbmParams& p, std::span<const double> brownian, std::span<double> out) {
  if (brownian.size() != p.steps || out.size() != p.steps)
    throw std::invalid_argument("gbm_path: dimension mismatch");
  const double drift = (p.rate - 0.5 * p.vol * p.vol) * p.dt();
  for (std::size_t k = 0; k < p.steps; ++k)
    out[k] = p.spot * std::exp(drift * static_cast<double>(k + 1) + p.vol * brownian[k]);
}

std::vector<double> gbm_path(const GbmParams& p, std::span<const double> brownian) {
  std::vector<double> out(p.steps);
  gbm_path(p, brownian, out);
  return out;
}

void basket_gbm_paths(std::span<const double> spots, std::span<const double> vols, double rate,
                      double maturity, std::size_t steps, std::span<const double> scaled_brownian,
                      std::span<double> out) {
  const std::size_t m = spots.size();
  if (vols.size() != m || scaled_brownian.size() != m * steps || out.size() != m * steps)
    throw std::invalid_argument("basket_gbm_paths: dimension mismatch");
  const double dt = maturity / static_cast<double>(steps);
  for (std::size_t i = 0; i < m; ++i) {
    const double drift = (rate - 0.5 * vols[i] * vols[i]) * dt;
    for (std::size_t k = 0; k < steps; ++k)
      out[i * steps + k] =
          spots[i] * std::exp(drift * static_cast<double>(k + 1) + scaled_brownian[i * steps + k]);
  }
}

namespace {

double average(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

bool hits(std::span<const double> prices, double barrier) {
  return std::any_of(prices.begin(), prices.end(), [barrier](double s) { return s >= barrier; });
}

}  // namespace

double discounted_payoff(const PayoffSpec& spec, double rate, double maturity,
                         std::span<const double> prices) {
  if (prices.empty()) throw std::invalid_argument("discounted_payoff: empty path");
  const double discount = std::exp(-rate * maturity);
  switch (spec.kind) {
    case PayoffKind::asian_call:
    case PayoffKind::basket_asian_call:
      return discount * std::max(average(prices) - spec.strike, 0.0);
    case PayoffKind::digital_up_in:
      return hits(prices, spec.barrier) ? discount : 0.0;
    case PayoffKind::asian_up_in:
      if (!hits(prices, spec.barrier)) return 0.0;
      return discount * std::max(average(prices) - spec.strike, 0.0);
  }
  return 0.0;
}

}  // namespace qmcft
