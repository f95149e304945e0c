#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>

#include "ostat/random.hpp"

namespace ostat {

/// Two correlation matrices of a common dimension.
struct GaussianPair {
  Eigen::MatrixXd sigma1;
  Eigen::MatrixXd sigma0;

  int dimension() const { return static_cast<int>(sigma1.rows()); }
  /// Throws std::invalid_argument unless both are symmetric, unit-diagonal
  /// and positive semidefinite up to an eigenvalue floor of -1e-10.
  void validate() const;
};

void validate_correlation_matrix(const Eigen::MatrixXd& sigma);

/// Li-Shao normal comparison bound
///   (1/2pi) sum_{i<j} |asin s1_ij - asin s0_ij| exp(-(u_i^2+u_j^2) / (2(1+rho_ij)))
/// with rho_ij = max(|s1_ij|, |s0_ij|).
double li_shao_bound(const GaussianPair& pair, std::span<const double> u);

/// Bound on |P(X_{k:n} <= u) - P(Y_{k:n} <= u)| for the componentwise
/// maximum (k = 1) or minimum (k = n) of n i.i.d. copies: n * li_shao_bound.
double orderstat_comparison_bound(const GaussianPair& pair, std::span<const double> u, int n, int k);

/// Signed integral of (1+|h|)^(2(n-1)) / (1-h^2)^(n/2) from sigma0 to sigma1.
/// Both endpoints must lie strictly inside (-1, 1).
double a_star(double sigma1, double sigma0, int n);

/// Sharper bound for the minimum (k = n) with all thresholds positive:
///   n/(2pi)^n ubar^(-2(n-1)) sum_{i<l} |A*_il| exp(-n ubar^2 / (1+rho_il)),
/// ubar = min_i u_i.
double minstat_sharp_bound(const GaussianPair& pair, std::span<const double> u, int n);

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
};

/// Monte Carlo estimate of P(X_{i(k)} <= u_i for all i) where X_{i(1)} is
/// the maximum and X_{i(n)} the minimum over n i.i.d. N(0, sigma) vectors.
/// Replications are split into fixed blocks seeded from `stream`, so the
/// result does not depend on the thread count.
McEstimate mc_orderstat_cdf(const Eigen::MatrixXd& sigma, std::span<const double> u, int n, int k,
                            std::uint64_t reps, const RandomStream& stream, unsigned threads = 0);

enum class BoundKind { orderstat, sharp_minimum };

std::string_view to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::orderstat;
  double bound = 0.0;
  double lhs_estimate = 0.0;
  double lhs_std_err = 0.0;
  bool pass = false;
  /// (bound - |lhs|) / se; the check passes iff this is >= -3.
  /// Infinite when se == 0.
  double margin_sigmas = 0.0;
};

/// Estimates P(X_{k:n} <= u) - P(Y_{k:n} <= u) with common random numbers
/// and checks it against the selected bound. sharp_minimum requires k = n
/// and u > 0.
BoundReport verify_bound(const GaussianPair& pair, std::span<const double> u, int n, int k,
                         std::uint64_t reps, const RandomStream& stream,
                         BoundKind kind = BoundKind::orderstat, unsigned threads = 0);

}  // namespace ostat
