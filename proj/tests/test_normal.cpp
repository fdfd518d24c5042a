#include <gtest/gtest.h>

#include <cmath>

#include "qmcft/normal.hpp"
#include "test_support.hpp"

namespace qmcft {
namespace {

// Bisection against the erf-based CDF, independent of the rational
// approximation used by inv_normal_cdf.
double bisect_quantile(double u) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(InvNormal, Median) { EXPECT_EQ(inv_normal_cdf(0.5), 0.0); }

TEST(InvNormal, KnownQuantiles) {
  EXPECT_NEAR(inv_normal_cdf(0.975), 1.959964, 1e-6);
  EXPECT_NEAR(inv_normal_cdf(0.975), bisect_quantile(0.975), 1e-9);
  EXPECT_NEAR(inv_normal_cdf(0.00134990), -3.000, 1e-4);
  EXPECT_NEAR(inv_normal_cdf(0.00134990), bisect_quantile(0.00134990), 1e-9);
}

TEST(InvNormal, CdfResidualOnGrid) {
  for (int i = 1; i < 10000; ++i) {
    const double u = i / 10000.0;
    ASSERT_LE(std::abs(normal_cdf(inv_normal_cdf(u)) - u), 1e-9) << u;
  }
  for (double u : {1e-300, 1e-100, 1e-20, 0x1p-53, 1e-10, 1.0 - 1e-10, kUniformCeil})
    EXPECT_LE(std::abs(normal_cdf(inv_normal_cdf(u)) - u), 1e-9 * std::max(u, 1e-3)) << u;
}

TEST(InvNormal, StrictlyIncreasing) {
  double prev = -INFINITY;
  for (int i = 1; i <= 10000; ++i) {
    const double z = inv_normal_cdf(i / 10001.0);
    ASSERT_GT(z, prev);
    prev = z;
  }
}

TEST(InvNormal, OutOfDomain) {
  EXPECT_THROW(inv_normal_cdf(0.0), std::domain_error);
  EXPECT_THROW(inv_normal_cdf(1.0), std::domain_error);
  EXPECT_THROW(inv_normal_cdf(-0.1), std::domain_error);
  EXPECT_THROW(inv_normal_cdf(NAN), std::domain_error);
}

TEST(InvNormal, ClampKeepsValuesFinite) {
  EXPECT_TRUE(std::isfinite(clamped_inv_normal_cdf(0.0)));
  EXPECT_TRUE(std::isfinite(clamped_inv_normal_cdf(1.0)));
  EXPECT_EQ(clamped_inv_normal_cdf(0.0), inv_normal_cdf(0x1p-53));
}

TEST(NormalVector, HalfPointMapsToZero) {
  // point 1 is (0.5, ..., 0.5) in every dimension
  const NormalVector v = normal_vector(SobolSequence::shared(), 1, ShiftVector{std::vector<double>(6, 0.0)}, 6);
  for (double x : v.values) EXPECT_EQ(x, 0.0);
}

TEST(NormalVector, ShiftedMomentsOfFirstCoordinate) {
  const ShiftVector shift = batch_shift(2024, 0, 3);
  testing::RunningStats stats;
  for (std::uint64_t i = 0; i < (1u << 14); ++i)
    stats.add(normal_vector(SobolSequence::shared(), i, shift, 3).values[0]);
  const double sd = std::sqrt(stats.variance());
  EXPECT_LE(std::abs(stats.mean), 3.0 * sd / 128.0);
  EXPECT_NEAR(stats.variance(), 1.0, 0.1);
}

TEST(NormalVector, ValuesFiniteWithWorstCaseShift) {
  // shift that sends point 0 to exactly 0 after wrapping
  const NormalVector v = normal_vector(SobolSequence::shared(), 0, ShiftVector{{0.0, 0.0}}, 2);
  for (double x : v.values) EXPECT_TRUE(std::isfinite(x));
}

}  // namespace
}  // namespace qmcft
