#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmcft/errors.hpp"
#include "qmcft/experiment.hpp"

namespace qmcft {
namespace {

ExperimentConfig asian(Method m, std::size_t n = 16) {
  ExperimentConfig cfg;
  cfg.payoff = {PayoffKind::asian_call, 100.0, 0.0};
  cfg.gbm = {100.0, 0.04, 0.2, 1.0, n};
  cfg.method = m;
  cfg.batches = 8;
  cfg.log2_min = 1;
  cfg.log2_max = 10;
  cfg.seed = 42;
  return cfg;
}

std::string csv_text(const std::vector<BatchRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qmcft_" + name);
}

TEST(Experiment, NamesRoundTrip) {
  for (Method m : {Method::forward, Method::brownian_bridge, Method::pca, Method::regression, Method::lt})
    EXPECT_EQ(parse_method(cli_name(m)), m);
  for (PayoffKind k : {PayoffKind::asian_call, PayoffKind::basket_asian_call, PayoffKind::digital_up_in,
                       PayoffKind::asian_up_in})
    EXPECT_EQ(parse_payoff(cli_name(k)), k);
  EXPECT_FALSE(parse_method("sobol").has_value());
  EXPECT_FALSE(parse_payoff("lookback").has_value());
}

TEST(Experiment, DeterministicPayoffHasZeroSpread) {
  auto cfg = asian(Method::forward, 4);
  cfg.gbm.vol = 0.0;
  cfg.batches = 2;
  cfg.log2_min = cfg.log2_max = 1;
  const auto stats = run_experiment(cfg);
  ASSERT_EQ(stats.size(), 1u);
  double avg = 0.0;
  for (int k = 1; k <= 4; ++k) avg += 100.0 * std::exp(0.04 * k / 4.0) / 4.0;
  EXPECT_NEAR(stats[0].mean, std::exp(-0.04) * (avg - 100.0), 1e-12);
  EXPECT_EQ(stats[0].stddev, 0.0);
  EXPECT_EQ(stats[0].batches, 2u);
  EXPECT_EQ(stats[0].paths, 2u);
}

TEST(Experiment, GridAndRowLayout) {
  auto cfg = asian(Method::regression);
  cfg.log2_min = 3;
  cfg.log2_max = 6;
  const auto rows = run_batches(cfg);
  ASSERT_EQ(rows.size(), 4u * 8u);
  EXPECT_EQ(rows.front().paths, 8u);
  EXPECT_EQ(rows.back().paths, 64u);
  EXPECT_EQ(rows.front().payoff, "asian");
  EXPECT_EQ(rows.front().method, "regression");
  EXPECT_EQ(rows.front().runtime_ms, 0.0);
  const auto stats = summarize(rows);
  ASSERT_EQ(stats.size(), 4u);
  for (const auto& s : stats) EXPECT_GE(s.stddev, 0.0);
}

TEST(Experiment, IdenticalSeedGivesIdenticalBytes) {
  const auto cfg = asian(Method::pca);
  EXPECT_EQ(csv_text(run_batches(cfg)), csv_text(run_batches(cfg)));
  auto other = cfg;
  other.seed = 43;
  EXPECT_NE(csv_text(run_batches(cfg)), csv_text(run_batches(other)));
}

TEST(Experiment, ThreadCountDoesNotChangeEstimates) {
  for (Method m : {Method::forward, Method::regression, Method::lt}) {
    auto cfg = asian(m);
    const auto seq = run_batches(cfg);
    cfg.threads = 4;
    const auto par = run_batches(cfg);
    ASSERT_EQ(seq.size(), par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(seq[i].estimate, par[i].estimate);
  }
}

TEST(Experiment, CsvRoundTrip) {
  const auto rows = run_batches(asian(Method::brownian_bridge));
  const auto path = temp_file("roundtrip.csv");
  write_csv(rows, path);
  const auto back = read_csv(path);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].payoff, rows[i].payoff);
    EXPECT_EQ(back[i].method, rows[i].method);
    EXPECT_EQ(back[i].n, rows[i].n);
    EXPECT_EQ(back[i].paths, rows[i].paths);
    EXPECT_EQ(back[i].batch, rows[i].batch);
    EXPECT_EQ(back[i].estimate, rows[i].estimate);
  }
  const auto stats = summarize(rows);
  const auto spath = temp_file("summary.csv");
  write_summary_csv(stats, spath);
  const auto sback = read_summary_csv(spath);
  ASSERT_EQ(sback.size(), stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    EXPECT_EQ(sback[i].mean, stats[i].mean);
    EXPECT_EQ(sback[i].stddev, stats[i].stddev);
    EXPECT_EQ(sback[i].batches, stats[i].batches);
  }
  std::filesystem::remove(path);
  std::filesystem::remove(spath);
}

TEST(Experiment, EmptyAndSingleRowFiles) {
  EXPECT_EQ(csv_text({}), std::string(kRawCsvHeader) + "\n");
  BatchRow r{"asian", "forward", 4, 2, 0, 1.5, 0.0};
  const std::string one = csv_text({r});
  EXPECT_EQ(one, std::string(kRawCsvHeader) + "\nasian,forward,4,2,0,1.5,0\n");
  std::ostringstream os;
  write_summary_csv({}, os);
  EXPECT_EQ(os.str(), std::string(kSummaryCsvHeader) + "\n");
}

TEST(Experiment, RowsSortedOnWrite) {
  BatchRow a{"asian", "pca", 4, 4, 1, 1.0, 0.0};
  BatchRow b{"asian", "forward", 4, 8, 0, 2.0, 0.0};
  BatchRow c{"asian", "forward", 4, 4, 1, 3.0, 0.0};
  BatchRow d{"asian", "forward", 4, 4, 0, 4.0, 0.0};
  const std::string text = csv_text({a, b, c, d});
  EXPECT_EQ(text, std::string(kRawCsvHeader) +
                      "\nasian,forward,4,4,0,4,0\nasian,forward,4,4,1,3,0\nasian,forward,4,8,0,2,0\n"
                      "asian,pca,4,4,1,1,0\n");
}

TEST(Experiment, LtRejectedForBarrierPayoffs) {
  auto cfg = asian(Method::lt);
  cfg.payoff = {PayoffKind::digital_up_in, 0.0, 110.0};
  EXPECT_THROW(PricingProblem::create(cfg), UnsupportedCombination);
  try {
    PricingProblem::create(cfg);
  } catch (const UnsupportedCombination& e) {
    EXPECT_NE(std::string(e.what()).find("method unsupported for payoff"), std::string::npos);
  }
  cfg.payoff = {PayoffKind::asian_up_in, 100.0, 110.0};
  EXPECT_THROW(PricingProblem::create(cfg), UnsupportedCombination);
}

TEST(Experiment, InvalidConfigRejected) {
  auto cfg = asian(Method::forward);
  cfg.batches = 1;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = asian(Method::forward);
  cfg.log2_min = 5;
  cfg.log2_max = 4;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = asian(Method::forward);
  cfg.payoff.kind = PayoffKind::basket_asian_call;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(Experiment, RegressionBeatsForwardOnAsian) {
  auto f = asian(Method::forward, 64);
  f.log2_min = f.log2_max = 12;
  auto r = f;
  r.method = Method::regression;
  const double sf = run_experiment(f)[0].stddev, sr = run_experiment(r)[0].stddev;
  EXPECT_LE(sr, 0.5 * sf);
}

TEST(Experiment, BasketRuns) {
  auto cfg = asian(Method::regression, 8);
  cfg.payoff.kind = PayoffKind::basket_asian_call;
  cfg.basket = BasketMarket{BasketCovSpec::equicorrelated(3, 8, 1.0, 0.1, 0.3, 0.05), {100.0, 100.0, 100.0}};
  cfg.log2_min = cfg.log2_max = 8;
  for (Method m : {Method::forward, Method::brownian_bridge, Method::pca, Method::regression, Method::lt}) {
    cfg.method = m;
    const auto s = run_experiment(cfg);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_GT(s[0].mean, 2.0);
    EXPECT_LT(s[0].mean, 8.0);
  }
}

TEST(Experiment, CoefficientsForEachPayoff) {
  auto cfg = asian(Method::regression, 8);
  EXPECT_EQ(payoff_coefficients(cfg).size(), 8u);
  cfg.payoff = {PayoffKind::digital_up_in, 0.0, 110.0};
  const auto a = payoff_coefficients(cfg);
  EXPECT_EQ(a.size(), 8u);
  EXPECT_GT(a[0], 0.0);
}

}  // namespace
}  // namespace qmcft
