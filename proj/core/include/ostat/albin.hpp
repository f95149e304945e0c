#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ostat {

/// Monte Carlo set-up for (1/a) P(sup_{k>=1} min_{i<=r} xi_i(a k) <= 0).
struct AlbinConfig {
  int r = 1;
  double alpha = 1.0;
  double grid_a = 0.01;
  double horizon_T = 30.0;
  std::uint64_t reps = 100000;
  std::uint64_t seed = 0;
  /// Width, in standard deviations of sqrt(2) Z(T), of the drift margin the
  /// horizon must clear on top of the 0.9999 exponential quantile.
  double margin_sigmas = 2.5;

  std::size_t horizon_points() const;
  void validate() const;
};

/// Unit-exponential 0.9999 quantile, ln(1e4).
inline constexpr double kExponentialQuantile9999 = 9.2103403719761836;

/// Smallest horizon accepted by AlbinConfig::validate for this alpha.
double minimum_albin_horizon(double alpha, double margin_sigmas);

struct AlbinEstimate {
  double value = 0.0;
  double std_err = 0.0;
  AlbinConfig config;
  std::uint64_t hit_count = 0;
};

/// Throws std::invalid_argument (including a too-short horizon).
AlbinEstimate estimate_albin(const AlbinConfig& config, unsigned threads = 0);

/// Weighted least-squares fit value(a) = intercept + slope * a^rate_exponent
/// over a ladder of estimates with strictly decreasing a. Discrete-grid
/// values converge at rate a^(alpha/2), which is the default exponent.
struct AlbinLadder {
  std::vector<AlbinEstimate> estimates;
  double value = 0.0;
  double std_err = 0.0;
  double slope = 0.0;
  double rate_exponent = 1.0;
  /// Weighted residual sum of squares and its degrees of freedom.
  double lack_of_fit = 0.0;
  int dof = 0;
};

/// Uses rate exponent alpha / 2 taken from the first estimate's config.
AlbinLadder extrapolate_albin(std::span<const AlbinEstimate> ladder);
AlbinLadder extrapolate_albin(std::span<const AlbinEstimate> ladder, double rate_exponent);

/// Runs estimate_albin for each a in `grid_a_ladder` (same seed) and fits.
/// A non-positive rate_exponent selects the default alpha / 2.
AlbinLadder estimate_albin_ladder(const AlbinConfig& base, std::span<const double> grid_a_ladder,
                                  unsigned threads = 0, double rate_exponent = 0.0);

}  // namespace ostat
