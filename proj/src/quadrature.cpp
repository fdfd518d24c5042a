#include "qmcft/quadrature.hpp"

#include <cmath>
#include <string>

#include "qmcft/errors.hpp"

namespace qmcft {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int min_depth;
  int max_depth;

  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (!std::isfinite(delta)) throw NumericalFailure("adaptive_simpson: non-finite integrand");
    if (depth >= min_depth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth)
      throw NumericalFailure("adaptive_simpson: no convergence on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]");
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        QuadratureOptions opts) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, opts);
  const Simpson s{f, opts.min_depth, opts.max_depth};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return s.refine(a, b, fa, fm, fb, whole, opts.abs_tol, 0);
}

}  // namespace qmcft
