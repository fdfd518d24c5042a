#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmcft/errors.hpp"
#include "qmcft/experiment.hpp"

namespace {

using namespace qmcft;

constexpr int kBadFlags = 2;
constexpr int kUnsupported = 3;
constexpr int kNumerical = 4;

// Reference problem sizes, used with --full-scale.
std::size_t full_scale_steps(PayoffKind k) {
  switch (k) {
    case PayoffKind::asian_call: return 250;
    case PayoffKind::basket_asian_call: return 250;  // 10 assets, 2500 dimensions
    case PayoffKind::digital_up_in: return 2000;
    case PayoffKind::asian_up_in: return 1000;
  }
  return 64;
}

struct Options {
  std::string payoff = "asian";
  std::string method = "forward";
  std::optional<std::size_t> n;
  std::uint64_t paths = 1u << 14;
  std::size_t batches = 32;
  std::uint64_t seed = 1;
  double s0 = 100.0, strike = 100.0, rate = 0.04, sigma = 0.2, maturity = 1.0;
  double barrier = 110.0;
  std::size_t assets = 10;
  double rho = 0.05, sigma_min = 0.1, sigma_max = 0.3;
  int log2_min = 1, log2_max = 14;
  unsigned threads = 1;
  bool record_runtime = false;
  bool full_scale = false;
  std::string out, summary;
  std::size_t lt_columns = 25;
  std::vector<std::string> methods{"forward", "regression", "pca", "lt"};
  int repeats = 5;
};

void add_market_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--payoff", o.payoff, "asian | basket | digital-barrier | asian-barrier")
      ->check(CLI::IsMember({"asian", "basket", "digital-barrier", "asian-barrier"}));
  cmd->add_option("--n", o.n, "time steps (default 64, or the reference size with --full-scale)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--s0", o.s0, "spot")->check(CLI::PositiveNumber);
  cmd->add_option("--strike", o.strike, "strike")->check(CLI::NonNegativeNumber);
  cmd->add_option("--rate", o.rate, "interest rate");
  cmd->add_option("--sigma", o.sigma, "volatility")->check(CLI::NonNegativeNumber);
  cmd->add_option("--maturity", o.maturity, "maturity in years")->check(CLI::PositiveNumber);
  cmd->add_option("--barrier", o.barrier, "up-and-in barrier level")->check(CLI::PositiveNumber);
  cmd->add_option("--assets", o.assets, "basket size")->check(CLI::PositiveNumber);
  cmd->add_option("--rho", o.rho, "basket correlation")->check(CLI::Range(-1.0, 1.0));
  cmd->add_option("--sigma-min", o.sigma_min, "smallest basket volatility")->check(CLI::NonNegativeNumber);
  cmd->add_option("--sigma-max", o.sigma_max, "largest basket volatility")->check(CLI::NonNegativeNumber);
  cmd->add_option("--lt-columns", o.lt_columns, "columns optimized by lt");
  cmd->add_option("--seed", o.seed, "seed for the random shifts");
  cmd->add_flag("--full-scale", o.full_scale, "use the large reference problem sizes");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  add_market_flags(cmd, o);
  cmd->add_option("--method", o.method, "forward | bb | pca | regression | lt")
      ->check(CLI::IsMember({"forward", "bb", "pca", "regression", "lt"}));
  cmd->add_option("--batches", o.batches, "independent shifts")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 1024));
  cmd->add_option("--out", o.out, "raw CSV (stdout when omitted)");
  cmd->add_option("--summary", o.summary, "summary CSV");
  cmd->add_flag("--record-runtime", o.record_runtime, "write wall times (output no longer reproducible)");
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig cfg;
  const PayoffKind kind = *parse_payoff(o.payoff);
  const std::size_t n = o.n.value_or(o.full_scale ? full_scale_steps(kind) : 64);
  cfg.payoff = {kind, kind == PayoffKind::digital_up_in ? 0.0 : o.strike, o.barrier};
  cfg.gbm = {o.s0, o.rate, o.sigma, o.maturity, n};
  cfg.method = *parse_method(o.method);
  cfg.batches = o.batches;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.record_runtime = o.record_runtime;
  cfg.lt.columns = o.lt_columns;
  if (kind == PayoffKind::basket_asian_call) {
    if (o.sigma_min > o.sigma_max) throw CLI::ValidationError("--sigma-min", "must not exceed --sigma-max");
    cfg.basket = BasketMarket{
        BasketCovSpec::equicorrelated(o.assets, n, o.maturity, o.sigma_min, o.sigma_max, o.rho),
        std::vector<double>(o.assets, o.s0)};
  }
  return cfg;
}

void emit(const ExperimentConfig& cfg, const Options& o) {
  const auto rows = run_batches(cfg);
  if (o.out.empty())
    write_csv(rows, std::cout);
  else
    write_csv(rows, o.out);
  if (!o.summary.empty()) write_summary_csv(summarize(rows), o.summary);
}

int run_price(const Options& o) {
  if (o.paths == 0 || !std::has_single_bit(o.paths)) throw CLI::ValidationError("--paths", "must be a power of two");
  ExperimentConfig cfg = make_config(o);
  cfg.log2_min = cfg.log2_max = std::countr_zero(o.paths);
  emit(cfg, o);
  return 0;
}

int run_convergence(const Options& o) {
  ExperimentConfig cfg = make_config(o);
  cfg.log2_min = o.log2_min;
  cfg.log2_max = o.log2_max;
  emit(cfg, o);
  return 0;
}

int run_table1(std::size_t steps) {
  std::printf("r,sigma2,residual_n%zu,residual_continuum\n", steps);
  for (const auto& row : residual_fraction_table(steps))
    std::printf("%.1f,%.2f,%.5f,%.5f\n", row.rate, row.vol_squared, row.discrete, row.continuum);
  return 0;
}

int run_timing(const Options& o) {
  if (o.paths == 0 || !std::has_single_bit(o.paths)) throw CLI::ValidationError("--paths", "must be a power of two");
  Options sized = o;
  if (!sized.n) sized.n = 250;
  const ExperimentConfig cfg = make_config(sized);
  std::vector<Method> methods;
  for (const auto& m : o.methods) {
    const auto parsed = parse_method(m);
    if (!parsed) throw CLI::ValidationError("--methods", "unknown method " + m);
    methods.push_back(*parsed);
  }
  const auto report = timing_report(cfg, methods, o.paths, o.repeats);
  std::printf("method,n,N,median_ms,setup_ms\n");
  for (const auto& t : report)
    std::printf("%s,%zu,%llu,%.3f,%.3f\n", std::string(cli_name(t.method)).c_str(), cfg.gbm.steps,
                static_cast<unsigned long long>(o.paths), t.median_ms, t.setup_ms);
  return 0;
}

int run_coeffs(const Options& o) {
  const auto a = payoff_coefficients(make_config(o));
  std::printf("i,a\n");
  for (std::size_t i = 0; i < a.size(); ++i) std::printf("%zu,%.17g\n", i + 1, a[i]);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QMC pricing with fast orthogonal transforms"};
  app.require_subcommand(1);
  Options o;
  std::size_t table_steps = 4096;

  auto* price = app.add_subcommand("price", "price one payoff at one sample size");
  add_run_flags(price, o);
  price->add_option("--paths", o.paths, "points per batch (power of two)");

  auto* conv = app.add_subcommand("convergence", "batch estimates for N = 2^log2-min .. 2^log2-max");
  add_run_flags(conv, o);
  conv->add_option("--log2-min", o.log2_min)->check(CLI::Range(0, 31));
  conv->add_option("--log2-max", o.log2_max)->check(CLI::Range(0, 31));

  auto* table = app.add_subcommand("table1", "residual variance fractions of the Asian regression method");
  table->add_option("--n", table_steps, "time steps for the exact sums")->check(CLI::PositiveNumber);

  auto* timing = app.add_subcommand("timing", "median wall times per method");
  add_market_flags(timing, o);
  timing->add_option("--paths", o.paths, "points per run (power of two)");
  timing->add_option("--methods", o.methods, "methods to time")->delimiter(',');
  timing->add_option("--repeats", o.repeats, "runs per method")->check(CLI::Range(1, 1000));

  auto* coeffs = app.add_subcommand("coeffs", "print the regression vector of a payoff");
  add_market_flags(coeffs, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadFlags;
  }

  try {
    if (*price) return run_price(o);
    if (*conv) return run_convergence(o);
    if (*table) return run_table1(table_steps);
    if (*timing) return run_timing(o);
    if (*coeffs) return run_coeffs(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kBadFlags;
  } catch (const UnsupportedCombination& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
