#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmcft/paths.hpp"
#include "qmcft/payoffs.hpp"
#include "test_support.hpp"

namespace qmcft {
namespace {

const GbmParams kParams{100.0, 0.04, 0.2, 1.0, 8};

TEST(Payoffs, ZeroBrownianPath) {
  const auto s = gbm_path(kParams, std::vector<double>(8, 0.0));
  for (std::size_t k = 0; k < 8; ++k)
    EXPECT_NEAR(s[k], 100.0 * std::exp((0.04 - 0.02) * (k + 1) / 8.0), 1e-12);
}

TEST(Payoffs, NoVolatilityIgnoresNoise) {
  GbmParams p = kParams;
  p.vol = 0.0;
  const auto a = gbm_path(p, std::vector<double>(8, 0.0));
  const auto b = gbm_path(p, std::vector<double>{1, -2, 3, -4, 5, -6, 7, -8});
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(a[k], b[k]);
  EXPECT_NEAR(a[7], 100.0 * std::exp(0.04), 1e-12);
}

TEST(Payoffs, DiscountedTerminalIsMartingale) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z;
  const auto fw = PathConstruction::forward(8, 1.0);
  testing::RunningStats st;
  std::vector<double> x(8), b(8);
  for (int k = 0; k < (1 << 16); ++k) {
    for (double& xi : x) xi = z(rng);
    fw.build(x, b);
    st.add(std::exp(-0.04) * gbm_path(kParams, b)[7]);
  }
  EXPECT_NEAR(st.mean, 100.0, 3.0 * st.std_error());
}

TEST(Payoffs, ZeroStrikeIsDiscountedAverage) {
  const std::vector<double> path{90, 100, 110, 120};
  const PayoffSpec asian{PayoffKind::asian_call, 0.0, 0.0};
  EXPECT_NEAR(discounted_payoff(asian, 0.04, 1.0, path), std::exp(-0.04) * 105.0, 1e-12);
  const PayoffSpec otm{PayoffKind::asian_call, 200.0, 0.0};
  EXPECT_EQ(discounted_payoff(otm, 0.04, 1.0, path), 0.0);
}

TEST(Payoffs, DigitalPaysDiscountedOne) {
  const std::vector<double> path{99, 105, 111, 104};
  EXPECT_NEAR(discounted_payoff({PayoffKind::digital_up_in, 0.0, 110.0}, 0.04, 1.0, path), std::exp(-0.04), 1e-15);
  EXPECT_NEAR(discounted_payoff({PayoffKind::digital_up_in, 0.0, 111.0}, 0.04, 1.0, path), std::exp(-0.04), 1e-15);
  EXPECT_EQ(discounted_payoff({PayoffKind::digital_up_in, 0.0, 112.0}, 0.04, 1.0, path), 0.0);
}

TEST(Payoffs, BarrierAtOrBelowSpotPays) {
  // with u ≤ S₀ e^{(r-σ²/2)Δt - 6σ√Δt} the first monitoring date hits for sure
  std::mt19937_64 rng(7);
  std::normal_distribution<double> z;
  const auto fw = PathConstruction::forward(8, 1.0);
  const double dt = kParams.dt();
  const double u = 100.0 * std::exp((0.04 - 0.02) * dt - 6.0 * 0.2 * std::sqrt(dt));
  std::vector<double> x(8), b(8);
  for (int k = 0; k < 2000; ++k) {
    for (double& xi : x) xi = std::clamp(z(rng), -5.9, 5.9);
    fw.build(x, b);
    const auto s = gbm_path(kParams, b);
    EXPECT_NEAR(discounted_payoff({PayoffKind::digital_up_in, 0.0, u}, 0.04, 1.0, s), std::exp(-0.04), 1e-15);
    EXPECT_EQ(discounted_payoff({PayoffKind::asian_up_in, 100.0, u}, 0.04, 1.0, s),
              discounted_payoff({PayoffKind::asian_call, 100.0, 0.0}, 0.04, 1.0, s));
  }
}

TEST(Payoffs, PathwiseOrderings) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  const auto fw = PathConstruction::forward(8, 1.0);
  std::vector<double> x(8), b(8);
  for (int k = 0; k < 5000; ++k) {
    for (double& xi : x) xi = z(rng);
    fw.build(x, b);
    const auto s = gbm_path(kParams, b);
    const double call = discounted_payoff({PayoffKind::asian_call, 100.0, 0.0}, 0.04, 1.0, s);
    const double up_in = discounted_payoff({PayoffKind::asian_up_in, 100.0, 110.0}, 0.04, 1.0, s);
    EXPECT_LE(up_in, call);
    double prev = 1e300;
    for (double u = 90.0; u <= 130.0; u += 2.5) {
      const double d = discounted_payoff({PayoffKind::digital_up_in, 0.0, u}, 0.04, 1.0, s);
      EXPECT_LE(d, prev);
      prev = d;
    }
  }
}

TEST(Payoffs, BasketPaths) {
  const std::vector<double> spots{100.0, 50.0}, vols{0.1, 0.3};
  // scaled Brownian input of zero: deterministic drift per asset
  std::vector<double> out(6);
  basket_gbm_paths(spots, vols, 0.04, 1.0, 3, std::vector<double>(6, 0.0), out);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_NEAR(out[i * 3 + k], spots[i] * std::exp((0.04 - 0.5 * vols[i] * vols[i]) * (k + 1) / 3.0), 1e-12);
  const double avg = (out[0] + out[1] + out[2] + out[3] + out[4] + out[5]) / 6.0;
  EXPECT_NEAR(discounted_payoff({PayoffKind::basket_asian_call, 50.0, 0.0}, 0.04, 1.0, out),
              std::exp(-0.04) * (avg - 50.0), 1e-12);
}

}  // namespace
}  // namespace qmcft
