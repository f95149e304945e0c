#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ostat/gaussian_paths.hpp"
#include "ostat/random.hpp"

namespace ostat {

/// r-th largest of n: r = 1 is the maximum, r = n the minimum.
struct OrderStatSpec {
  int r = 1;
  int n = 1;

  void validate() const;
};

struct SkewParams {
  double delta = 1.0;
  int m = 1;

  void validate() const;
};

/// r-th largest entry of `values` (reorders the span).
double rth_largest(std::span<double> values, int r);

SamplePath order_statistics_path(std::span<const SamplePath> paths, const OrderStatSpec& spec);

/// zeta(t) = delta * |(X_1..X_m)(t)| + sqrt(1 - delta^2) * X_{m+1}(t).
/// Expects exactly m + 1 paths on one grid.
SamplePath skew_gaussian_path(std::span<const SamplePath> paths, const SkewParams& params);

/// Pointwise minimum over r independent copies of
///   xi(t) = sqrt(2) Z(t) - t^alpha + E
/// on the grid {a, 2a, ..., K a}; the origin is excluded.
struct LimitFieldSample {
  double a = 0.0;
  std::size_t horizon_points = 0;
  std::vector<double> values;
};

/// Reusable generator for limit-field samples: one fBm embedding per
/// (alpha, a, K), shared scratch, one instance per thread.
///
/// Copies are drawn in order from the supplied stream (for each copy the
/// exponential first, then the fBm path), so sampling r' > r copies from a
/// fresh copy of the same stream reuses the first r copies exactly.
class LimitFieldSampler {
 public:
  LimitFieldSampler(double alpha, double a, std::size_t horizon_points);

  double alpha() const { return alpha_; }
  double a() const { return a_; }
  std::size_t horizon_points() const { return drift_.size(); }

  void sample(int r, RandomStream& stream, std::span<double> out);

  /// max_k min_i xi_i(a k) for one draw.
  double sample_sup(int r, RandomStream& stream);

 private:
  double alpha_;
  double a_;
  std::vector<double> drift_;
  FbmSampler fbm_;
  std::vector<double> path_;
  std::vector<double> field_;
};

LimitFieldSample sample_limit_field(int r, double alpha, double a, std::size_t horizon_points,
                                    RandomStream& stream);

}  // namespace ostat
