#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ostat/asymptotics.hpp"
#include "ostat/special.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

TEST(ScaleFunction, Values) {
  EXPECT_DOUBLE_EQ(ostat::q_of_u(2.0, 1.0), 0.25);
  EXPECT_DOUBLE_EQ(ostat::q_of_u(1.0, 0.7), 1.0);
  EXPECT_NEAR(ostat::q_of_u(3.0, 2.0), 1.0 / 3.0, 1e-16);
  const ostat::GaussianTailModel model{1.0};
  EXPECT_EQ(model.w(2.5), 2.5);
  EXPECT_DOUBLE_EQ(model.q(2.0), 0.25);
}

TEST(PointwiseTail, LeadingTerms) {
  EXPECT_NEAR(ostat::pointwise_orderstat_tail(1, 1, 3.0) / 0.0013498980316300945267, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(ostat::pointwise_orderstat_tail(2, 2, 0.0), 0.25);
  const double lead = ostat::pointwise_orderstat_tail(1, 2, 3.0);
  const double p = ostat::std_normal_tail(3.0);
  EXPECT_NEAR(lead / (1.0 - (1.0 - p) * (1.0 - p)), 1.0, 7e-4);
}

TEST(Thm1Tail, WorkedValueAndLinearity) {
  const auto t = ostat::thm1_tail(1, 1, 10.0, 3.0, 1.0, 1.0);
  EXPECT_NEAR(t.value, 0.1214908228467085074, 1e-15);
  EXPECT_FALSE(t.regime_warning);
  EXPECT_DOUBLE_EQ(ostat::thm1_tail(1, 1, 20.0, 3.0, 1.0, 1.0).value, 2.0 * t.value);
  EXPECT_TRUE(ostat::thm1_tail(1, 1, 100.0, 3.0, 1.0, 1.0).regime_warning);
}

TEST(Thm1Tail, SecondOrderRatio) {
  const double a2 = 2.7;
  const double r1 = ostat::thm1_tail(1, 1, 10.0, 3.0, 1.0, 1.0).value;
  const double r2 = ostat::thm1_tail(2, 2, 10.0, 3.0, 1.0, a2).value;
  EXPECT_NEAR(r2 / r1, a2 * ostat::std_normal_tail(3.0), 1e-15);
}

TEST(Thm1Tail, MonotoneInTAndU) {
  double prev_u = 2.0;
  for (double u = 1.0; u <= 8.0; u += 0.5) {
    const double v = ostat::thm1_tail(1, 2, 50.0, u, 1.5, 0.8).value;
    if (u > 1.0) {
      EXPECT_LT(v, prev_u);
    }
    prev_u = v;
    EXPECT_LT(v, ostat::thm1_tail(1, 2, 51.0, u, 1.5, 0.8).value);
  }
}

TEST(ChiTail, ExactForTwoDegrees) {
  for (double u : {0.5, 1.0, 2.0, 4.0, 6.0, 10.0}) {
    EXPECT_NEAR(ostat::chi_tail(2, u) / std::exp(-u * u / 2.0), 1.0, 1e-15);
  }
  EXPECT_NEAR(ostat::chi_tail(2, 2.0), 0.1353352832366127, 1e-16);
}

TEST(ChiTail, LeadingOrderAgainstExactTails) {
  EXPECT_NEAR(ostat::chi_tail(1, 3.0), 0.0029545656079586714504, 1e-17);
  EXPECT_NEAR(ostat::chi_tail(3, 5.0), 0.000014867195147342977079, 1e-19);
  // Exact chi(3) survival at 5 is 1.5440e-5.
  EXPECT_NEAR(ostat::chi_tail(3, 5.0) / 0.000015440498291101364902, 1.0, 0.1);
}

TEST(SkewTail, Cases) {
  for (int m : {1, 2, 3, 5}) {
    for (double u : {1.0, 3.0, 6.0}) EXPECT_EQ(ostat::skew_tail(m, 1.0, u), ostat::chi_tail(m, u));
  }
  EXPECT_NEAR(ostat::skew_tail(2, 0.5, 4.0), 0.00016773131395125591941, 1e-19);
  // Exact skew-normal tails at u = 5 from numerical integration.
  EXPECT_NEAR(ostat::skew_tail(1, 0.3, 5.0) / 5.4366051406556079467e-7, 1.0, 0.1);
  EXPECT_NEAR(ostat::skew_tail(1, 0.7, 5.0) / 5.7330300444080794298e-7, 1.0, 0.1);
}

TEST(ThmATail, ReflectionConsistency) {
  const double a = ostat::thmA_tail(1, 1, 1, 1.0, 1.0, 10.0, 5.0, 1.0).value;
  const double b = ostat::thm1_tail(1, 1, 10.0, 5.0, 1.0, 1.0).value;
  EXPECT_NEAR(a / (2.0 * b), 1.0, 0.05);
  EXPECT_NEAR(a, 10.0 * 0.000014867195147342977079, 1e-18);
}

TEST(ThmATail, MatchesChiTailAtUnitDelta) {
  for (int m : {1, 2, 3}) {
    const double v = ostat::thmA_tail(1, 1, m, 1.0, 1.0, 10.0, 6.0, 1.0).value;
    EXPECT_NEAR(v / (10.0 * 36.0 * ostat::chi_tail(m, 6.0)), 1.0, 0.02);
  }
  const double v = ostat::thmA_tail(2, 3, 2, 0.8, 1.2, 5.0, 4.0, 1.7).value;
  EXPECT_DOUBLE_EQ(ostat::thmA_tail(2, 3, 2, 0.8, 1.2, 10.0, 4.0, 1.7).value, 2.0 * v);
}

TEST(GumbelConstants, WorkedValues) {
  const auto c1 = ostat::gumbel_constants_log(1, 2.0, 1.0 / std::sqrt(kPi), 8.0);
  EXPECT_EQ(c1.a_T, 4.0);
  EXPECT_NEAR(c1.D, 1.0 / (kPi * std::sqrt(2.0)), 1e-14);
  const auto c2 = ostat::gumbel_constants(2, 1.0, 1.0, std::exp(8.0));
  EXPECT_NEAR(c2.a_T, 5.6568542494923801952, 1e-14);
  EXPECT_NEAR(c2.b_T, 2.5035332905848683651, 1e-14);
  EXPECT_THROW(ostat::gumbel_constants(1, 1.0, 1.0, std::exp(1.0)), std::domain_error);
  EXPECT_THROW(ostat::gumbel_constants(1, 1.0, 1.0, 2.0), std::domain_error);
}

TEST(GumbelConstants, NormingIsIncreasingAndConsistent) {
  double prev = 0.0;
  for (double T = 3.0; T < 1e9; T *= 3.7) {
    const auto c = ostat::gumbel_constants(2, 1.3, 2.1, T);
    EXPECT_GT(c.a_T, prev);
    prev = c.a_T;
    const double L = std::log(T);
    const double expected = (1.0 / 1.3 - 1.0) * std::log(L) + std::log(c.D);
    EXPECT_NEAR(c.b_T * c.a_T - c.a_T * c.a_T / 2.0, expected, 1e-9 * (1.0 + L));
  }
}

TEST(Threshold, RoundTripOnGrid) {
  EXPECT_NEAR(std::exp(ostat::log_time_for_threshold(1, 1.0, 1.0, 4.0)), 1868.0383939514769247, 1e-9);
  EXPECT_NEAR(ostat::threshold_for_T(1, 1.0, 1.0, 1868.0383939514769247), 4.0, 1e-9);
  for (int n : {1, 2, 3}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (double u = 2.0; u <= 8.0; u += 0.25) {
        const double logT = ostat::log_time_for_threshold(n, alpha, 0.9, u);
        EXPECT_NEAR(ostat::threshold_for_log_T(n, alpha, 0.9, logT), u, 1e-9) << n << " " << alpha << " " << u;
      }
    }
  }
}

TEST(Threshold, MonotoneAndExpansion) {
  double prev = 0.0;
  for (double T = 50.0; T < 1e12; T *= 10.0) {
    const double u = ostat::threshold_for_T(1, 1.0, 1.0, T);
    EXPECT_GT(u, prev);
    prev = u;
  }
  const double u = ostat::threshold_for_T(1, 1.0, 1.0, 1e6);
  EXPECT_NEAR(u * u, 29.166152940594201203, 1e-8);
  EXPECT_NEAR(ostat::threshold_squared_expansion(1, 1.0, 1.0, 1e6), 29.112083144555158835, 1e-10);
  EXPECT_NEAR(u * u / ostat::threshold_squared_expansion(1, 1.0, 1.0, 1e6), 1.0, 0.02);
  EXPECT_THROW(ostat::threshold_for_T(1, 1.0, 1.0, 1e-3), std::domain_error);
}

TEST(GumbelCdf, Values) {
  EXPECT_NEAR(ostat::gumbel_cdf(0.0), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(ostat::gumbel_cdf(40.0), 1.0, 1e-15);
  // The median sits at -ln ln 2.
  EXPECT_NEAR(ostat::gumbel_cdf(-std::log(std::log(2.0))), 0.5, 1e-15);
  EXPECT_EQ(ostat::gumbel_cdf(-10.0), std::exp(-std::exp(10.0)));
}

}  // namespace
