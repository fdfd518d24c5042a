#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qmcft/sobol.hpp"

namespace qmcft {

struct NormalVector {
  std::vector<double> values;
  std::size_t dim() const { return values.size(); }
};

inline constexpr double kUniformFloor = 0x1p-53;
inline constexpr double kUniformCeil = 1.0 - 0x1p-53;

double normal_pdf(double x);
double normal_cdf(double x);

/// Quantile of the standard normal distribution (Wichura AS241, ~1e-16
/// relative accuracy). Throws std::domain_error("out of domain") unless
/// 0 < u < 1.
double inv_normal_cdf(double u);

/// Clamps u into [2^-53, 1 - 2^-53] and inverts.
double clamped_inv_normal_cdf(double u);

/// Standard-normal vector from the shifted index-th Sobol point.
NormalVector normal_vector(const SobolSequence& seq, std::uint64_t index, const ShiftVector& shift,
                           std::size_t dim);

/// Maps a uniform point to normals in place (clamping as above).
void to_normal(std::span<double> u);

}  // namespace qmcft
