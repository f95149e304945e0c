#pragma once

namespace ostat {

/// Leading-order approximation with a flag raised once the value leaves the
/// rare-event regime (value > 0.5).
struct TailApproximation {
  double value = 0.0;
  bool regime_warning = false;
};

inline constexpr double kRegimeThreshold = 0.5;

/// Standard Gaussian marginal with local index alpha: w(u) = u and
/// q(u) = u^(-2/alpha).
struct GaussianTailModel {
  double alpha = 1.0;

  double w(double u) const { return u; }
  double q(double u) const;
};

double q_of_u(double u, double alpha);

/// c_{r,n} * Phibar(u)^r, the pointwise tail of X_{r:n}(t) to leading order.
double pointwise_orderstat_tail(int r, int n, double u);

/// T * A_r * c_{r,n} * Phibar(u)^r / q(u).
TailApproximation thm1_tail(int r, int n, double T, double u, double alpha, double albin);

/// 2^(1 - m/2) / Gamma(m/2) * u^(m-2) * exp(-u^2/2), tail of a chi_m variable.
double chi_tail(int m, double u);

/// delta^(m-1) * chi_tail(m, u), tail of the skew-Gaussian marginal.
double skew_tail(int m, double delta, double u);

/// Tail of sup over [0, T] of the r-th order statistic of n skew-Gaussian
/// processes:
///   T A c_{r,n} delta^(rm-r) 2^(r-rm/2) / Gamma(m/2)^r u^(2/alpha+rm-2r) e^(-r u^2/2).
TailApproximation thmA_tail(int r, int n, int m, double delta, double alpha, double T, double u,
                            double albin);

/// Normalizing constants for the Gumbel limit of the minimum order statistic.
struct GumbelConstants {
  double a_T = 0.0;
  double b_T = 0.0;
  double D = 0.0;
  int n = 1;
  double alpha = 1.0;
  double albin = 1.0;
};

double gumbel_D(int n, double alpha, double albin);

/// Requires T > e. Throws std::domain_error otherwise.
GumbelConstants gumbel_constants(int n, double alpha, double albin, double T);
/// Same, parameterized by ln T (> 1) to avoid a round trip through exp.
GumbelConstants gumbel_constants_log(int n, double alpha, double albin, double log_T);

/// ln T(u) where T(u) = (2 pi)^(n/2) / A * u^(n - 2/alpha) * exp(n u^2 / 2).
double log_time_for_threshold(int n, double alpha, double albin, double u);

/// Inverse of T(u) on the branch where T(u) increases. Throws
/// std::domain_error when T is below the branch minimum.
double threshold_for_T(int n, double alpha, double albin, double T);
double threshold_for_log_T(int n, double alpha, double albin, double log_T);

/// Two-term expansion of u^2 for large T.
double threshold_squared_expansion(int n, double alpha, double albin, double T);

double gumbel_cdf(double x);

}  // namespace ostat
