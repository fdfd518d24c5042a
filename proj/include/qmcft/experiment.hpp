#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmcft/basket.hpp"
#include "qmcft/lt.hpp"
#include "qmcft/payoffs.hpp"

namespace qmcft {

enum class Method { forward, brownian_bridge, pca, regression, lt };

std::string_view to_string(Method m);
/// CLI names: forward, bb, pca, regression, lt.
std::optional<Method> parse_method(std::string_view s);
/// CLI names: asian, basket, digital-barrier, asian-barrier.
std::optional<PayoffKind> parse_payoff(std::string_view s);
std::string_view cli_name(PayoffKind k);
std::string_view cli_name(Method m);

struct BasketMarket {
  BasketCovSpec cov;
  std::vector<double> spots;
};

struct ExperimentConfig {
  PayoffSpec payoff;
  GbmParams gbm;                      // steps = n; rate/maturity also used by the basket
  std::optional<BasketMarket> basket;  // required for basket_asian_call
  Method method = Method::forward;
  std::size_t batches = 32;
  int log2_min = 1;
  int log2_max = 14;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  LtConfig lt;
  bool record_runtime = false;  // runtime_ms is 0 unless set, keeping output reproducible
};

/// One batch estimate at one sample size.
struct BatchRow {
  std::string payoff;
  std::string method;
  std::size_t n = 0;
  std::uint64_t paths = 0;
  std::size_t batch = 0;
  double estimate = 0.0;
  double runtime_ms = 0.0;
};

/// Aggregate over batches at one sample size.
struct BatchStats {
  std::string payoff;
  std::string method;
  std::size_t n = 0;
  std::uint64_t paths = 0;
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation, divisor batches-1
  std::size_t batches = 0;
  double runtime_ms = 0.0;  ///< summed over batches
};

/// Discounted payoff as a function of the standard-normal input, with the
/// orthogonal transform and path construction baked in. Immutable after
/// construction; evaluate() is safe to call concurrently with distinct
/// workspaces.
class PricingProblem {
 public:
  /// Throws UnsupportedCombination for pairs such as (digital barrier, lt).
  static PricingProblem create(const ExperimentConfig& cfg);

  std::size_t dim() const { return dim_; }
  std::size_t workspace_size() const { return 3 * dim_; }
  double setup_ms() const { return setup_ms_; }

  /// Consumes x (it may be overwritten).
  double evaluate(std::span<double> x, std::span<double> workspace) const;

 private:
  PricingProblem() = default;

  PayoffSpec payoff_;
  GbmParams gbm_;
  std::size_t dim_ = 0;
  std::shared_ptr<const PathConstruction> single_;
  std::shared_ptr<const BasketConstruction> basket_;
  std::vector<double> spots_;
  std::vector<double> vols_;
  double setup_ms_ = 0.0;
};

/// Runs every batch at the largest sample size and records prefix
/// estimates at each power of two in [2^log2_min, 2^log2_max]. Rows are
/// sorted by (N, batch) and identical for any thread count.
std::vector<BatchRow> run_batches(const ExperimentConfig& cfg);

/// Groups rows by (payoff, method, n, N).
std::vector<BatchStats> summarize(std::span<const BatchRow> rows);

std::vector<BatchStats> run_experiment(const ExperimentConfig& cfg);

/// Sorts by (payoff, method, N, batch) and writes
/// `payoff,method,n,N,batch,estimate,runtime_ms`.
void write_csv(std::vector<BatchRow> rows, const std::filesystem::path& path);
void write_csv(std::vector<BatchRow> rows, std::ostream& out);
/// `payoff,method,n,N,mean,stddev,batches`
void write_summary_csv(std::vector<BatchStats> stats, const std::filesystem::path& path);
void write_summary_csv(std::vector<BatchStats> stats, std::ostream& out);

std::vector<BatchRow> read_csv(const std::filesystem::path& path);
std::vector<BatchStats> read_summary_csv(const std::filesystem::path& path);

inline constexpr std::string_view kRawCsvHeader = "payoff,method,n,N,batch,estimate,runtime_ms";
inline constexpr std::string_view kSummaryCsvHeader = "payoff,method,n,N,mean,stddev,batches";

struct MethodTiming {
  Method method;
  double median_ms = 0.0;  ///< total, setup included
  double setup_ms = 0.0;   ///< median transform setup
};

/// Median of `repeats` single-batch pricing runs with `paths` points each.
std::vector<MethodTiming> timing_report(const ExperimentConfig& base, std::span<const Method> methods,
                                        std::uint64_t paths, int repeats = 5);

/// Regression coefficients for the configured payoff (the vector the
/// regression method reflects e₁ onto; for the Asian barrier, a^{(1)}).
std::vector<double> payoff_coefficients(const ExperimentConfig& cfg);

struct ResidualRow {
  double rate = 0.0;
  double vol_squared = 0.0;
  double discrete = 0.0;   ///< residual fraction from the exact sums
  double continuum = 0.0;  ///< n → ∞ limit
};

/// Residual variance fraction of the Asian regression method for
/// r ∈ {0.1, 0.2, 0.3}, σ² ∈ {0.01, ..., 0.04}, T = 1.
std::vector<ResidualRow> residual_fraction_table(std::size_t steps = 4096);

}  // namespace qmcft
