#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

#include "ostat/special.hpp"

namespace {

using ostat::std_normal_tail;

struct TailCase {
  double u;
  double expected;
};

// 40-digit reference values of erfc(u / sqrt 2) / 2.
constexpr TailCase kTail[] = {
    {-5.0, 0.99999971334842812081}, {-1.0, 0.84134474606854294859}, {0.0, 0.5},
    {0.5, 0.30853753872598689636},  {1.0, 0.15865525393145705141},  {3.0, 0.0013498980316300945267},
    {5.0, 2.8665157187919391167e-7}, {8.0, 6.2209605742717841235e-16}, {10.0, 7.619853024160526066e-24},
    {20.0, 2.7536241186062336951e-89}, {30.0, 4.9067139271481870595e-198},
    {37.0, 5.7255712225245768227e-300},
};

TEST(NormalTail, MatchesHighPrecisionReference) {
  for (const auto& c : kTail) {
    EXPECT_NEAR(std_normal_tail(c.u) / c.expected, 1.0, 1e-14) << "u = " << c.u;
  }
}

TEST(NormalTail, ComplementsCdfAndIsMonotone) {
  double prev = 1.0;
  for (double u = -8.0; u <= 8.0; u += 0.25) {
    EXPECT_NEAR(ostat::std_normal_cdf(u) + std_normal_tail(u), 1.0, 1e-15);
    EXPECT_LT(std_normal_tail(u), prev);
    prev = std_normal_tail(u);
  }
}

TEST(NormalTail, Limits) {
  EXPECT_EQ(std_normal_tail(-40.0), 1.0);
  EXPECT_EQ(std_normal_tail(40.0), 0.0);
  EXPECT_DOUBLE_EQ(ostat::std_normal_pdf(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi));
}

TEST(GammaFunction, KnownValues) {
  EXPECT_NEAR(ostat::gamma_function(0.5), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(ostat::gamma_function(1.5), 0.5 * std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_DOUBLE_EQ(ostat::gamma_function(5.0), 24.0);
  EXPECT_THROW(ostat::gamma_function(0.0), std::domain_error);
  EXPECT_THROW(ostat::gamma_function(-1.5), std::domain_error);
}

boost::multiprecision::cpp_int factorial(int k) {
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

TEST(Binomial, ExactAgainstBigIntegerFactorials) {
  for (int n = 1; n <= 64; ++n) {
    for (int r = 1; r <= n; ++r) {
      const auto expected = factorial(n) / (factorial(r) * factorial(n - r));
      const auto c = ostat::binomial(r, n);
      EXPECT_EQ(boost::multiprecision::cpp_int(c.value), expected) << r << " of " << n;
      EXPECT_EQ(c.r, r);
      EXPECT_EQ(c.n, n);
    }
  }
}

TEST(Binomial, RejectsOutOfRange) {
  EXPECT_THROW(ostat::binomial(0, 3), std::out_of_range);
  EXPECT_THROW(ostat::binomial(4, 3), std::out_of_range);
  EXPECT_THROW(ostat::binomial(1, 65), std::out_of_range);
}

}  // namespace
