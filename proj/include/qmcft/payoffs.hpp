#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qmcft {

struct GbmParams {
  double spot = 100.0;
  double rate = 0.04;
  double vol = 0.2;
  double maturity = 1.0;
  std::size_t steps = 1;

  double dt() const { return maturity / static_cast<double>(steps); }
};

enum class PayoffKind { asian_call, basket_asian_call, digital_up_in, asian_up_in };

std::string_view to_string(PayoffKind k);

struct PayoffSpec {
  PayoffKind kind = PayoffKind::asian_call;
  double strike = 0.0;
  double barrier = 0.0;  // digital_up_in, asian_up_in
};

/// S_k = S₀ exp((r - σ²/2) k T/n + σ B_{kT/n}), k = 1..n.
void gbm_path(const GbmParams& p, std::span<const double> brownian, std::span<double> out);
std::vector<double> gbm_path(const GbmParams& p, std::span<const double> brownian);

/// Asset-major basket paths; `scaled_brownian` already carries σ_i (entry
/// i*n + k is σ_i B^{(i)}).
void basket_gbm_paths(std::span<const double> spots, std::span<const double> vols, double rate,
                      double maturity, std::size_t steps, std::span<const double> scaled_brownian,
                      std::span<double> out);

/// Discounted payoff e^{-rT} g(path). Single-asset kinds take n prices;
/// basket_asian_call takes all m·n prices. Barriers are monitored at k = 1..n.
double discounted_payoff(const PayoffSpec& spec, double rate, double maturity,
                         std::span<const double> prices);

}  // namespace qmcft
