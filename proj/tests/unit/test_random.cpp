#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ostat/parallel.hpp"
#include "ostat/random.hpp"

namespace {

using ostat::RandomStream;

TEST(RandomStream, SameSeedAndIndexReplays) {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  RandomStream c(42, 7), d(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(c.normal(), d.normal());
}

TEST(RandomStream, DistinctStreamsDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t i = 0; i < 256; ++i) first.insert(ostat::split_stream(1, i).next_u64());
  for (std::uint64_t s = 0; s < 256; ++s) first.insert(RandomStream(s + 1000, 0).next_u64());
  EXPECT_EQ(first.size(), 512u);
}

TEST(RandomStream, UniformIsInOpenUnitInterval) {
  RandomStream s(3, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RandomStream, NormalMoments) {
  RandomStream s(11, 2);
  const int n = 400000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  EXPECT_NEAR(m1 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(m2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m4 / n, 3.0, 4.0 * std::sqrt(96.0 / n));
}

TEST(RandomStream, ExponentialMean) {
  RandomStream s(5, 9);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = s.exponential();
    ASSERT_GT(e, 0.0);
    sum += e;
  }
  EXPECT_NEAR(sum / n, 1.0, 4.0 / std::sqrt(n));
}

TEST(RandomStream, FillNormalMatchesScalarDraws) {
  RandomStream a(8, 1), b(8, 1);
  std::vector<double> v(101);
  a.fill_normal(v);
  for (double x : v) EXPECT_EQ(x, b.normal());
}

TEST(DeriveSeed, DependsOnBothInputs) {
  EXPECT_NE(ostat::derive_seed(1, 2), ostat::derive_seed(1, 3));
  EXPECT_NE(ostat::derive_seed(1, 2), ostat::derive_seed(2, 2));
  EXPECT_EQ(ostat::derive_seed(9, 9), ostat::derive_seed(9, 9));
}

TEST(RunBlocks, ResultsAreInBlockOrderForAnyThreadCount) {
  auto run = [](unsigned threads) {
    auto blocks = ostat::run_blocks<std::vector<std::size_t>>(
        1003, 17, threads, [] { return 0; },
        [](int&, std::size_t begin, std::size_t end) {
          std::vector<std::size_t> v;
          for (std::size_t i = begin; i < end; ++i) v.push_back(i * i);
          return v;
        });
    std::vector<std::size_t> flat;
    for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
    return flat;
  };
  const auto one = run(1);
  ASSERT_EQ(one.size(), 1003u);
  EXPECT_EQ(one, run(3));
  EXPECT_EQ(one, run(8));
}

TEST(RunBlocks, PropagatesExceptions) {
  EXPECT_THROW((ostat::run_blocks<int>(
                   100, 10, 4, [] { return 0; },
                   [](int&, std::size_t begin, std::size_t) -> int {
                     if (begin == 50) throw std::runtime_error("boom");
                     return 0;
                   })),
               std::runtime_error);
}

}  // namespace
