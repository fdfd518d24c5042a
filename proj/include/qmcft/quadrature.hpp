#pragma once

#include <functional>

namespace qmcft {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  int min_depth = 4;  ///< levels always bisected before accepting
  int max_depth = 60;
};

/// Adaptive Simpson on [a, b] with Richardson correction. Throws
/// NumericalFailure if a subinterval at max_depth still misses its share of
/// the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        QuadratureOptions opts = {});

}  // namespace qmcft
