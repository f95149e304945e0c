#include "ostat/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ostat/special.hpp"

namespace ostat {
namespace {

void require_orderstat(int r, int n) {
  if (n < 1 || n > 64 || r < 1 || r > n) throw std::invalid_argument("need 1 <= r <= n <= 64");
}

double c_rn(int r, int n) { return static_cast<double>(binomial(r, n).value); }

TailApproximation flagged(double value) { return {value, value > kRegimeThreshold}; }

}  // namespace

double GaussianTailModel::q(double u) const { return q_of_u(u, alpha); }

double q_of_u(double u, double alpha) {
  if (!(u > 0.0)) throw std::domain_error("q_of_u: u must be positive");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("q_of_u: alpha must lie in (0, 2]");
  return std::pow(u, -2.0 / alpha);
}

double pointwise_orderstat_tail(int r, int n, double u) {
  require_orderstat(r, n);
  return c_rn(r, n) * std::pow(std_normal_tail(u), r);
}

TailApproximation thm1_tail(int r, int n, double T, double u, double alpha, double albin) {
  require_orderstat(r, n);
  if (!(T > 0.0)) throw std::domain_error("thm1_tail: T must be positive");
  if (!(albin > 0.0)) throw std::domain_error("thm1_tail: Albin constant must be positive");
  return flagged(T * albin * pointwise_orderstat_tail(r, n, u) / q_of_u(u, alpha));
}

double chi_tail(int m, double u) {
  if (m < 1) throw std::domain_error("chi_tail: m must be >= 1");
  if (!(u > 0.0)) throw std::domain_error("chi_tail: u must be positive");
  if (m == 2) return std::exp(-0.5 * u * u);
  const double half_m = 0.5 * m;
  return std::pow(2.0, 1.0 - half_m) / gamma_function(half_m) * std::pow(u, m - 2) *
         std::exp(-0.5 * u * u);
}

double skew_tail(int m, double delta, double u) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("skew_tail: delta must lie in (0, 1]");
  if (delta == 1.0) return chi_tail(m, u);
  return std::pow(delta, m - 1) * chi_tail(m, u);
}

TailApproximation thmA_tail(int r, int n, int m, double delta, double alpha, double T, double u,
                            double albin) {
  require_orderstat(r, n);
  if (m < 1) throw std::domain_error("thmA_tail: m must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("thmA_tail: delta must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("thmA_tail: alpha must lie in (0, 2]");
  if (!(T > 0.0) || !(u > 0.0)) throw std::domain_error("thmA_tail: T and u must be positive");
  if (!(albin > 0.0)) throw std::domain_error("thmA_tail: Albin constant must be positive");
  const double rd = r;
  const double md = m;
  // Assemble on the log scale; the exponential factor underflows long
  // before the polynomial prefactor matters.
  const double log_value = std::log(T) + std::log(albin) + std::log(c_rn(r, n)) +
                           (rd * md - rd) * std::log(delta) +
                           (rd - rd * md / 2.0) * std::numbers::ln2 - rd * std::lgamma(md / 2.0) +
                           (2.0 / alpha + rd * md - 2.0 * rd) * std::log(u) - rd * u * u / 2.0;
  return flagged(std::exp(log_value));
}

double gumbel_D(int n, double alpha, double albin) {
  const double nd = n;
  return std::pow(nd / 2.0, nd / 2.0 - 1.0 / alpha) * albin * std::pow(2.0 * std::numbers::pi, -nd / 2.0);
}

GumbelConstants gumbel_constants_log(int n, double alpha, double albin, double log_T) {
  if (n < 1) throw std::domain_error("gumbel_constants: n must be >= 1");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("gumbel_constants: alpha must lie in (0, 2]");
  if (!(albin > 0.0)) throw std::domain_error("gumbel_constants: Albin constant must be positive");
  if (!(log_T > 1.0)) throw std::domain_error("gumbel_constants: need T > e");
  const double nd = n;
  GumbelConstants g;
  g.n = n;
  g.alpha = alpha;
  g.albin = albin;
  g.D = gumbel_D(n, alpha, albin);
  g.a_T = std::sqrt(2.0 * nd * log_T);
  g.b_T = std::sqrt(2.0 * log_T / nd) +
          ((1.0 / alpha - nd / 2.0) * std::log(log_T) + std::log(g.D)) / g.a_T;
  return g;
}

GumbelConstants gumbel_constants(int n, double alpha, double albin, double T) {
  if (!(T > std::numbers::e)) throw std::domain_error("gumbel_constants: need T > e");
  return gumbel_constants_log(n, alpha, albin, std::log(T));
}

double log_time_for_threshold(int n, double alpha, double albin, double u) {
  const double nd = n;
  return 0.5 * nd * std::log(2.0 * std::numbers::pi) - std::log(albin) +
         (nd - 2.0 / alpha) * std::log(u) + 0.5 * nd * u * u;
}

double threshold_for_log_T(int n, double alpha, double albin, double log_T) {
  if (n < 1) throw std::domain_error("threshold_for_T: n must be >= 1");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("threshold_for_T: alpha must lie in (0, 2]");
  if (!(albin > 0.0)) throw std::domain_error("threshold_for_T: Albin constant must be positive");
  const double nd = n;
  // d/du ln T(u) = (n - 2/alpha)/u + n u vanishes at u^2 = 2/(n alpha) - 1;
  // beyond that point (and beyond 1) the map is strictly increasing.
  const double lo_start = std::max(1.0, std::sqrt(std::max(0.0, 2.0 / (nd * alpha) - 1.0)));
  double lo = lo_start;
  double hi = std::sqrt(4.0 * std::max(log_T, 0.0) / nd) + 10.0;
  auto f = [&](double u) { return log_time_for_threshold(n, alpha, albin, u) - log_T; };
  if (f(lo) > 0.0) throw std::domain_error("threshold_for_T: T too small, no root above the branch minimum");
  while (f(hi) < 0.0) hi *= 2.0;

  // Newton steps safeguarded by the bracket.
  double u = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fu = f(u);
    if (std::abs(fu) < 1e-13 * std::max(1.0, std::abs(log_T))) return u;
    if (fu < 0.0) lo = u; else hi = u;
    const double deriv = (nd - 2.0 / alpha) / u + nd * u;
    double next = u - fu / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == u || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    u = next;
  }
  return u;
}

double threshold_for_T(int n, double alpha, double albin, double T) {
  if (!(T > 0.0)) throw std::domain_error("threshold_for_T: T must be positive");
  return threshold_for_log_T(n, alpha, albin, std::log(T));
}

double threshold_squared_expansion(int n, double alpha, double albin, double T) {
  const double nd = n;
  const double log_T = std::log(T);
  return 2.0 * log_T / nd + (2.0 / (nd * alpha) - 1.0) * std::log(log_T) +
         std::log(std::pow(nd / 2.0, 1.0 - 2.0 / (nd * alpha)) * std::pow(albin, 2.0 / nd) /
                  (2.0 * std::numbers::pi));
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

}  // namespace ostat
