#include "qmcft/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <bit>

#include "qmcft/brownian_max.hpp"
#include "qmcft/errors.hpp"
#include "qmcft/normal.hpp"
#include "qmcft/regression.hpp"
#include "qmcft/sobol.hpp"

namespace qmcft {

std::string_view to_string(Method m) { return cli_name(m); }

std::string_view cli_name(Method m) {
  switch (m) {
    case Method::forward: return "forward";
    case Method::brownian_bridge: return "bb";
    case Method::pca: return "pca";
    case Method::regression: return "regression";
    case Method::lt: return "lt";
  }
  return "?";
}

std::string_view cli_name(PayoffKind k) {
  switch (k) {
    case PayoffKind::asian_call: return "asian";
    case PayoffKind::basket_asian_call: return "basket";
    case PayoffKind::digital_up_in: return "digital-barrier";
    case PayoffKind::asian_up_in: return "asian-barrier";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::forward, Method::brownian_bridge, Method::pca, Method::regression, Method::lt})
    if (cli_name(m) == s) return m;
  return std::nullopt;
}

std::optional<PayoffKind> parse_payoff(std::string_view s) {
  for (PayoffKind k : {PayoffKind::asian_call, PayoffKind::basket_asian_call, PayoffKind::digital_up_in,
                       PayoffKind::asian_up_in})
    if (cli_name(k) == s) return k;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// (Sᵀ v)_k = √Δt Σ_{l≥k} v_l
void summation_transpose(std::span<const double> v, double sqdt, std::span<double> out) {
  double tail = 0.0;
  for (std::size_t k = v.size(); k-- > 0;) {
    tail += v[k];
    out[k] = sqdt * tail;
  }
}

// (Lᵀ ⊗ Sᵀ) g for asset-major g
std::vector<double> basket_transpose(const Matrix& chol, std::size_t steps, double sqdt,
                                     std::span<const double> g) {
  const std::size_t m = chol.rows();
  std::vector<double> summed(g.size()), out(g.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i)
    summation_transpose(g.subspan(i * steps, steps), sqdt,
                        std::span<double>(summed).subspan(i * steps, steps));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const double l = chol(i, j);
      if (l == 0.0) continue;
      for (std::size_t k = 0; k < steps; ++k) out[j * steps + k] += l * summed[i * steps + k];
    }
  return out;
}

const BasketMarket& require_basket(const ExperimentConfig& cfg) {
  if (!cfg.basket) throw std::invalid_argument("basket payoff needs basket market data");
  const BasketMarket& b = *cfg.basket;
  if (b.spots.size() != b.cov.assets || b.cov.steps != cfg.gbm.steps)
    throw std::invalid_argument("basket market data inconsistent with config");
  return b;
}

// E(X h(X)) for the basket average under the forward (Cholesky ⊗ S) construction.
std::vector<double> basket_regression_vector(const ExperimentConfig& cfg) {
  const BasketMarket& b = require_basket(cfg);
  const std::size_t m = b.cov.assets, n = b.cov.steps;
  const double dt = cfg.gbm.maturity / static_cast<double>(n);
  std::vector<double> wbar(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k)
      wbar[i * n + k] = b.spots[i] / static_cast<double>(m * n) *
                        std::exp(cfg.gbm.rate * dt * static_cast<double>(k + 1));
  return basket_transpose(cholesky(b.cov.asset_covariance()), n, std::sqrt(dt), wbar);
}

std::vector<double> barrier_vector(const ExperimentConfig& cfg) {
  const GbmParams& g = cfg.gbm;
  return barrier_coefficients(g.spot, g.rate, g.vol, g.maturity, g.steps, cfg.payoff.barrier).a;
}

std::vector<double> asian_vector(const ExperimentConfig& cfg) {
  const GbmParams& g = cfg.gbm;
  return asian_regression_vector(g.spot, g.rate, g.vol, g.maturity, g.steps).a;
}

// ∇_x of the arithmetic average (S₀/n) Σ_k exp(σ (S x)_k + μ k Δt).
GradientFn asian_gradient(const GbmParams& g) {
  return [g](std::span<const double> x, std::span<double> grad) {
    const std::size_t n = g.steps;
    const double dt = g.dt(), sqdt = std::sqrt(dt);
    const double mu = g.rate - 0.5 * g.vol * g.vol;
    std::vector<double> dh(n);
    double b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      b += sqdt * x[k];
      dh[k] = g.spot / static_cast<double>(n) * g.vol *
              std::exp(g.vol * b + mu * dt * static_cast<double>(k + 1));
    }
    summation_transpose(dh, sqdt, grad);
  };
}

GradientFn basket_gradient(const ExperimentConfig& cfg) {
  const BasketMarket& b = require_basket(cfg);
  auto construction = std::make_shared<const BasketConstruction>(
      BasketConstruction::cholesky_kron(b.cov, PathConstruction::forward(b.cov.steps, cfg.gbm.maturity)));
  auto chol = std::make_shared<const Matrix>(cholesky(b.cov.asset_covariance()));
  const double rate = cfg.gbm.rate, maturity = cfg.gbm.maturity;
  return [construction, chol, b, rate, maturity](std::span<const double> x, std::span<double> grad) {
    const std::size_t m = b.cov.assets, n = b.cov.steps, d = m * n;
    const double dt = maturity / static_cast<double>(n);
    std::vector<double> y(d), scratch(d);
    construction->build(x, y, scratch);
    for (std::size_t i = 0; i < m; ++i) {
      const double mu = rate - 0.5 * b.cov.vols[i] * b.cov.vols[i];
      for (std::size_t k = 0; k < n; ++k)
        y[i * n + k] = b.spots[i] / static_cast<double>(d) *
                       std::exp(mu * dt * static_cast<double>(k + 1) + y[i * n + k]);
    }
    const std::vector<double> g = basket_transpose(*chol, n, std::sqrt(dt), y);
    std::copy(g.begin(), g.end(), grad.begin());
  };
}

[[noreturn]] void unsupported(const ExperimentConfig& cfg) {
  throw UnsupportedCombination("method unsupported for payoff: " + std::string(cli_name(cfg.method)) +
                               " with " + std::string(cli_name(cfg.payoff.kind)));
}

void validate(const ExperimentConfig& cfg) {
  const GbmParams& g = cfg.gbm;
  if (g.steps == 0) throw std::invalid_argument("n must be positive");
  if (!(g.spot > 0.0) || !(g.vol >= 0.0) || !(g.maturity > 0.0))
    throw std::invalid_argument("need S0 > 0, sigma >= 0, T > 0");
  if (cfg.batches < 2) throw std::invalid_argument("need at least two batches");
  if (cfg.log2_min < 0 || cfg.log2_max > 31 || cfg.log2_min > cfg.log2_max)
    throw std::invalid_argument("invalid log2 path range");
  if (cfg.payoff.strike < 0.0) throw std::invalid_argument("strike must be nonnegative");
  if ((cfg.payoff.kind == PayoffKind::digital_up_in || cfg.payoff.kind == PayoffKind::asian_up_in) &&
      !(cfg.payoff.barrier > 0.0))
    throw std::invalid_argument("barrier payoffs need a positive barrier");
}

}  // namespace

PricingProblem PricingProblem::create(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  PricingProblem p;
  p.payoff_ = cfg.payoff;
  p.gbm_ = cfg.gbm;
  const std::size_t n = cfg.gbm.steps;
  const double T = cfg.gbm.maturity;

  if (cfg.payoff.kind == PayoffKind::basket_asian_call) {
    const BasketMarket& b = require_basket(cfg);
    p.spots_ = b.spots;
    p.vols_ = b.cov.vols;
    p.dim_ = b.cov.dim();
    switch (cfg.method) {
      case Method::forward:
        p.basket_ = std::make_shared<const BasketConstruction>(
            BasketConstruction::cholesky_kron(b.cov, PathConstruction::forward(n, T)));
        break;
      case Method::brownian_bridge:
        p.basket_ = std::make_shared<const BasketConstruction>(
            BasketConstruction::cholesky_kron(b.cov, PathConstruction::brownian_bridge(n, T)));
        break;
      case Method::pca:
        p.basket_ = std::make_shared<const BasketConstruction>(BasketConstruction::pca(b.cov));
        break;
      case Method::regression:
        p.basket_ = std::make_shared<const BasketConstruction>(BasketConstruction::with_chain(
            b.cov, regression_transform(RegressionVector::from(basket_regression_vector(cfg)))));
        break;
      case Method::lt:
        p.basket_ = std::make_shared<const BasketConstruction>(BasketConstruction::with_chain(
            b.cov, lt_transform(p.dim_, basket_gradient(cfg), cfg.lt).chain));
        break;
    }
  } else {
    p.dim_ = n;
    switch (cfg.method) {
      case Method::forward:
        p.single_ = std::make_shared<const PathConstruction>(PathConstruction::forward(n, T));
        break;
      case Method::brownian_bridge:
        p.single_ = std::make_shared<const PathConstruction>(PathConstruction::brownian_bridge(n, T));
        break;
      case Method::pca:
        p.single_ = std::make_shared<const PathConstruction>(PathConstruction::pca(n, T));
        break;
      case Method::regression: {
        TransformChain chain;
        switch (cfg.payoff.kind) {
          case PayoffKind::asian_call:
            chain = regression_transform(RegressionVector::from(asian_vector(cfg)));
            break;
          case PayoffKind::digital_up_in:
            chain = regression_transform(RegressionVector::from(barrier_vector(cfg)));
            break;
          case PayoffKind::asian_up_in: {
            const std::vector<CoefficientProvider> providers{fixed_coefficients(barrier_vector(cfg)),
                                                             fixed_coefficients(asian_vector(cfg))};
            chain = regression_chain(n, providers);
            break;
          }
          case PayoffKind::basket_asian_call:
            break;
        }
        if (chain.dim() == 0) chain = TransformChain(n);
        p.single_ = std::make_shared<const PathConstruction>(
            PathConstruction::with_chain(std::move(chain), T, PathMethod::chain));
        break;
      }
      case Method::lt:
        if (cfg.payoff.kind != PayoffKind::asian_call) unsupported(cfg);
        p.single_ = std::make_shared<const PathConstruction>(PathConstruction::with_chain(
            lt_transform(n, asian_gradient(cfg.gbm), cfg.lt).chain, T, PathMethod::lt));
        break;
    }
  }
  p.setup_ms_ = elapsed_ms(start);
  return p;
}

double PricingProblem::evaluate(std::span<double> x, std::span<double> workspace) const {
  if (x.size() != dim_ || workspace.size() < workspace_size())
    throw std::invalid_argument("PricingProblem::evaluate: size mismatch");
  auto path = workspace.subspan(0, dim_);
  auto prices = workspace.subspan(dim_, dim_);
  if (basket_) {
    basket_->build(x, path, workspace.subspan(2 * dim_, dim_));
    basket_gbm_paths(spots_, vols_, gbm_.rate, gbm_.maturity, gbm_.steps, path, prices);
  } else {
    single_->build(x, path);
    gbm_path(gbm_, path, prices);
  }
  return discounted_payoff(payoff_, gbm_.rate, gbm_.maturity, prices);
}

namespace {

struct BatchResult {
  std::vector<double> estimates;  // one per checkpoint
  std::vector<double> times_ms;
};

// Prefix means of one shifted Sobol batch at the checkpoints 2^lo..2^hi.
BatchResult price_batch(const PricingProblem& problem, std::uint64_t seed, std::size_t batch, int lo,
                        int hi) {
  const std::size_t dim = problem.dim();
  const SobolSequence& sobol = SobolSequence::shared();
  const ShiftVector shift = batch_shift(seed, batch, dim);
  SobolSequence::Cursor cursor(sobol, dim);
  std::vector<double> x(dim), ws(problem.workspace_size());

  BatchResult r;
  const auto start = Clock::now();
  const std::uint64_t total = std::uint64_t{1} << hi;
  std::uint64_t next_checkpoint = std::uint64_t{1} << lo;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < total; ++i) {
    cursor.next(x);
    apply_shift(x, shift.coords);
    to_normal(x);
    sum += problem.evaluate(x, ws);
    if (i + 1 == next_checkpoint) {
      r.estimates.push_back(sum / static_cast<double>(i + 1));
      r.times_ms.push_back(elapsed_ms(start));
      next_checkpoint <<= 1;
    }
  }
  return r;
}

}  // namespace

std::vector<BatchRow> run_batches(const ExperimentConfig& cfg) {
  const PricingProblem problem = PricingProblem::create(cfg);
  if (problem.dim() > SobolSequence::shared().max_dim())
    throw std::invalid_argument("unsupported dimension");

  std::vector<BatchResult> results(cfg.batches);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < cfg.batches; b = next++)
      results[b] = price_batch(problem, cfg.seed, b, cfg.log2_min, cfg.log2_max);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.batches)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<BatchRow> rows;
  const std::string payoff(cli_name(cfg.payoff.kind)), method(cli_name(cfg.method));
  for (int l = cfg.log2_min; l <= cfg.log2_max; ++l)
    for (std::size_t b = 0; b < cfg.batches; ++b) {
      const auto idx = static_cast<std::size_t>(l - cfg.log2_min);
      rows.push_back({payoff, method, cfg.gbm.steps, std::uint64_t{1} << l, b, results[b].estimates[idx],
                      cfg.record_runtime ? results[b].times_ms[idx] : 0.0});
    }
  return rows;
}

std::vector<BatchStats> summarize(std::span<const BatchRow> rows) {
  std::vector<BatchRow> sorted(rows.begin(), rows.end());
  auto key = [](const BatchRow& r) { return std::tie(r.payoff, r.method, r.n, r.paths); };
  std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
    return std::tie(a.payoff, a.method, a.n, a.paths, a.batch) <
           std::tie(b.payoff, b.method, b.n, b.paths, b.batch);
  });

  std::vector<BatchStats> out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    double sum = 0.0, time = 0.0;
    while (j < sorted.size() && key(sorted[j]) == key(sorted[i])) {
      sum += sorted[j].estimate;
      time += sorted[j].runtime_ms;
      ++j;
    }
    const std::size_t count = j - i;
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (std::size_t k = i; k < j; ++k) ss += (sorted[k].estimate - mean) * (sorted[k].estimate - mean);
    const double sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
    out.push_back({sorted[i].payoff, sorted[i].method, sorted[i].n, sorted[i].paths, mean, sd, count, time});
    i = j;
  }
  return out;
}

std::vector<BatchStats> run_experiment(const ExperimentConfig& cfg) {
  const std::vector<BatchRow> rows = run_batches(cfg);
  return summarize(rows);
}

std::vector<MethodTiming> timing_report(const ExperimentConfig& base, std::span<const Method> methods,
                                        std::uint64_t paths, int repeats) {
  if (paths == 0 || (paths & (paths - 1)) != 0) throw std::invalid_argument("paths must be a power of two");
  const int log2 = std::countr_zero(paths);
  std::vector<std::vector<double>> totals(methods.size()), setups(methods.size());

  // rounds interleave the methods so slow drifts in machine load hit all of them
  for (int r = 0; r < repeats; ++r)
    for (std::size_t m = 0; m < methods.size(); ++m) {
      ExperimentConfig cfg = base;
      cfg.method = methods[m];
      const auto start = Clock::now();
      const PricingProblem problem = PricingProblem::create(cfg);
      const BatchResult result = price_batch(problem, cfg.seed, 0, log2, log2);
      totals[m].push_back(elapsed_ms(start));
      setups[m].push_back(problem.setup_ms());
      if (!std::isfinite(result.estimates.back())) throw NumericalFailure("non-finite estimate");
    }

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  };
  std::vector<MethodTiming> out;
  for (std::size_t m = 0; m < methods.size(); ++m)
    out.push_back({methods[m], median(totals[m]), median(setups[m])});
  return out;
}

std::vector<double> payoff_coefficients(const ExperimentConfig& cfg) {
  validate(cfg);
  switch (cfg.payoff.kind) {
    case PayoffKind::asian_call: return asian_vector(cfg);
    case PayoffKind::basket_asian_call: return basket_regression_vector(cfg);
    case PayoffKind::digital_up_in:
    case PayoffKind::asian_up_in: return barrier_vector(cfg);
  }
  return {};
}

std::vector<ResidualRow> residual_fraction_table(std::size_t steps) {
  std::vector<ResidualRow> rows;
  for (double r : {0.1, 0.2, 0.3})
    for (int k = 1; k <= 4; ++k) {
      const double s2 = 0.01 * k;
      const double vol = std::sqrt(s2);
      rows.push_back({r, s2, asian_variance_report(r, vol, 1.0, steps).residual_fraction,
                      variance_report_continuum(r, vol, 1.0).residual_fraction});
    }
  return rows;
}

}  // namespace qmcft
