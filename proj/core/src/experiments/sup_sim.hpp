#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ostat::detail {

/// Sup over a uniform grid on [0, T] of X_{r:n}(t), the r-th largest of n
/// independent copies of a base process. The base process is either the
/// stationary Gaussian with correlation exp(-|t|^alpha), or the skew form
/// delta * |(X_1..X_m)| + sqrt(1 - delta^2) * X_{m+1}.
struct SupSimulation {
  double alpha = 1.0;
  double spacing = 0.01;
  std::size_t n_points = 1;
  int r = 1;
  int n = 1;
  bool skew = false;
  int m = 1;
  double delta = 1.0;
};

/// Grid points covering [0, T] at the given spacing (the last point may fall
/// short of T by less than one step).
std::size_t grid_points_for(double T, double spacing);

/// One sup per replication, in replication order; replication i draws from
/// split_stream(seed, i) only, so the output does not depend on `threads`.
std::vector<double> simulate_sups(const SupSimulation& sim, std::uint64_t reps, std::uint64_t seed,
                                  unsigned threads);

}  // namespace ostat::detail
