#include "qmcft/regression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmcft {

void LogExpPayoffSpec::validate() const {
  if (coeffs.rows() != weights.size() || drifts.rows() != weights.size() ||
      drifts.cols() != coeffs.cols())
    throw std::invalid_argument("log-exp spec: inconsistent shapes");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) ||
      !std::all_of(coeffs.data().begin(), coeffs.data().end(), finite) ||
      !std::all_of(drifts.data().begin(), drifts.data().end(), finite))
    throw std::invalid_argument("log-exp spec: non-finite entry");
}

double LogExpPayoffSpec::evaluate(std::span<const double> x) const {
  double f = 0.0;
  for (std::size_t k = 0; k < terms(); ++k) {
    double e = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) e += coeffs(k, j) * x[j] + drifts(k, j);
    f += weights[k] * std::exp(e);
  }
  return f;
}

std::vector<double> LogExpPayoffSpec::gradient(std::span<const double> x) const {
  std::vector<double> g(dim(), 0.0);
  for (std::size_t k = 0; k < terms(); ++k) {
    double e = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) e += coeffs(k, j) * x[j] + drifts(k, j);
    const double term = weights[k] * std::exp(e);
    for (std::size_t j = 0; j < dim(); ++j) g[j] += term * coeffs(k, j);
  }
  return g;
}

LogExpPayoffSpec asian_logexp_spec(double spot, double rate, double vol, double maturity,
                                   std::size_t steps) {
  const double dt = maturity / static_cast<double>(steps);
  LogExpPayoffSpec s{std::vector<double>(steps, spot / static_cast<double>(steps)),
                     Matrix(steps, steps), Matrix(steps, steps)};
  for (std::size_t k = 0; k < steps; ++k)
    for (std::size_t j = 0; j <= k; ++j) {
      s.coeffs(k, j) = vol * std::sqrt(dt);
      s.drifts(k, j) = (rate - 0.5 * vol * vol) * dt;
    }
  return s;
}

RegressionVector RegressionVector::from(std::vector<double> a) {
  RegressionVector r{std::move(a), 0.0};
  r.norm = norm2(r.a);
  return r;
}

namespace {

std::vector<double> effective_weights(const LogExpPayoffSpec& spec) {
  std::vector<double> wbar(spec.terms());
  for (std::size_t k = 0; k < spec.terms(); ++k) {
    double e = 0.0;
    for (std::size_t j = 0; j < spec.dim(); ++j)
      e += 0.5 * spec.coeffs(k, j) * spec.coeffs(k, j) + spec.drifts(k, j);
    wbar[k] = spec.weights[k] * std::exp(e);
  }
  return wbar;
}

VarianceReport make_report(double captured, double total) {
  VarianceReport r{captured, total, 0.0};
  if (total > 0.0) r.residual_fraction = std::clamp((total - captured) / total, 0.0, 1.0);
  return r;
}

}  // namespace

RegressionVector logexp_coefficients(const LogExpPayoffSpec& spec) {
  spec.validate();
  const std::vector<double> wbar = effective_weights(spec);
  std::vector<double> a(spec.dim(), 0.0);
  for (std::size_t k = 0; k < spec.terms(); ++k)
    for (std::size_t i = 0; i < spec.dim(); ++i) a[i] += spec.coeffs(k, i) * wbar[k];
  return RegressionVector::from(std::move(a));
}

VarianceReport variance_report(const LogExpPayoffSpec& spec) {
  spec.validate();
  const std::vector<double> wbar = effective_weights(spec);
  double captured = 0.0, total = 0.0;
  for (std::size_t k1 = 0; k1 < spec.terms(); ++k1)
    for (std::size_t k2 = 0; k2 < spec.terms(); ++k2) {
      const double cbar = dot(spec.coeffs.row(k1), spec.coeffs.row(k2));
      const double ww = wbar[k1] * wbar[k2];
      captured += ww * cbar;
      total += ww * std::expm1(cbar);
    }
  return make_report(captured, total);
}

VarianceReport asian_variance_report(double rate, double vol, double maturity, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("asian_variance_report: steps must be positive");
  const double n = static_cast<double>(steps);
  std::vector<double> wbar(steps);
  for (std::size_t k = 0; k < steps; ++k) wbar[k] = std::exp(rate * maturity * (k + 1) / n) / n;

  // Σ_{k,l} w̄_k w̄_l g(min(k,l)) = Σ_m g(m) w̄_m (w̄_m + 2 Σ_{l>m} w̄_l)
  double captured = 0.0, total = 0.0, tail = 0.0;
  for (std::size_t m = steps; m-- > 0;) {
    const double cbar = vol * vol * maturity * (m + 1) / n;
    const double weight = wbar[m] * (wbar[m] + 2.0 * tail);
    captured += weight * cbar;
    total += weight * std::expm1(cbar);
    tail += wbar[m];
  }
  return make_report(captured, total);
}

VarianceReport variance_report_continuum(double r, double vol, double T) {
  if (!(vol > 0.0) || !(T > 0.0)) throw std::invalid_argument("continuum report needs σ > 0, T > 0");
  if (!(r * T >= 1e-3)) throw std::domain_error("use discrete form");
  const double s2 = vol * vol;
  const double e1 = std::exp(r * T), e2 = std::exp(2.0 * r * T);
  const double captured = s2 * (4.0 * e1 + 2.0 * e2 * r * T - (3.0 * e2 + 1.0)) / (2.0 * r * r * r * T * T);
  const double total =
      (2.0 * e1 * (2.0 * r * s2 + s2 * s2) + 2.0 * std::exp(T * (2.0 * r + s2)) * r * r -
       (e2 * (2.0 * r * r + 3.0 * r * s2 + s2 * s2) + r * s2 + s2 * s2)) /
      (r * r * T * T * (r + s2) * (2.0 * r + s2));
  return make_report(captured, total);
}

RegressionVector asian_regression_vector(double spot, double rate, double vol, double maturity,
                                         std::size_t steps) {
  const double n = static_cast<double>(steps);
  const double dt = maturity / n;
  std::vector<double> a(steps);
  double tail = 0.0;
  for (std::size_t i = steps; i-- > 0;) {
    tail += std::exp(rate * (i + 1) * dt);
    a[i] = spot / n * vol * std::sqrt(dt) * tail;
  }
  return RegressionVector::from(std::move(a));
}

TransformChain regression_transform(const RegressionVector& a) {
  TransformChain chain(a.a.size());
  if (a.norm == 0.0) return chain;
  chain.push_back(householder_from_target(a.a, 0));
  return chain;
}

CoefficientProvider fixed_coefficients(std::vector<double> a) {
  return [a = std::move(a)](const TransformChain& current) {
    std::vector<double> out = a;
    current.apply_transpose(out);
    return out;
  };
}

TransformChain regression_chain(std::size_t dim, std::span<const CoefficientProvider> providers) {
  TransformChain chain(dim);
  for (std::size_t k = 0; k < providers.size() && k < dim; ++k) {
    std::vector<double> a = providers[k](chain);
    if (a.size() != dim) throw std::invalid_argument("coefficient provider returned wrong size");
    const double full = norm2(a);
    std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    // relative cutoff: rounding in the earlier reflections leaves ~1e-16 residue
    if (norm2(a) <= 1e-13 * full) break;
    chain.push_back(householder_from_target(a, k));
  }
  return chain;
}

ExactLinearChain exact_linear_chain(std::size_t dim, const std::vector<std::vector<double>>& ws) {
  ExactLinearChain out{TransformChain(dim), 0};
  for (const auto& w : ws) {
    if (w.size() != dim) throw std::invalid_argument("exact_linear_chain: vector size mismatch");
    if (out.effective_dim == dim) break;
    std::vector<double> r = w;
    out.chain.apply_transpose(r);
    const auto head = static_cast<std::ptrdiff_t>(out.effective_dim);
    std::fill(r.begin(), r.begin() + head, 0.0);
    if (norm2(r) <= 1e-13 * norm2(w)) continue;
    out.chain.push_back(householder_from_target(r, out.effective_dim));
    ++out.effective_dim;
  }
  return out;
}

}  // namespace qmcft
