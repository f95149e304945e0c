#include "ostat/special.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ostat {

namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

// exp(-u^2 / 2) with u^2 split exactly into hi + lo, so the rounding of u^2
// (relative error ~u^2 * eps in the result) does not leak into the tail.
double gaussian_kernel(double u) {
  if (std::abs(u) > 40.0) return 0.0;
  const double hi = u * u;
  const double lo = std::fma(u, u, -hi);
  return std::exp(-0.5 * hi) * std::exp(-0.5 * lo);
}

// Mills ratio by backward evaluation of its continued fraction
// 1 / (u + 1 / (u + 2 / (u + 3 / ...))); 60 terms reach full precision for u >= 3.
double mills_ratio(double u) {
  double t = 0.0;
  for (int k = 60; k >= 1; --k) t = k / (u + t);
  return 1.0 / (u + t);
}

}  // namespace

double std_normal_tail(double u) {
  // erfc(u / sqrt 2) loses ~u^2 ulps to the rounded argument; switch to the
  // continued fraction where that matters.
  if (u < 3.0) return 0.5 * std::erfc(u / std::numbers::sqrt2);
  return kInvSqrt2Pi * gaussian_kernel(u) * mills_ratio(u);
}

double std_normal_cdf(double u) { return std_normal_tail(-u); }

double std_normal_pdf(double u) {
  return kInvSqrt2Pi * gaussian_kernel(u);
}

double gamma_function(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma_function: argument must be positive");
  }
  return std::tgamma(x);
}

BinomialCoefficient binomial(int r, int n) {
  if (n < 1 || n > 64 || r < 1 || r > n) {
    throw std::out_of_range("binomial: need 1 <= r <= n <= 64, got r=" + std::to_string(r) +
                            ", n=" + std::to_string(n));
  }
  const int k = std::min(r, n - r);
  // value_{i} = C(n - k + i, i) stays integral at every step; dividing by the
  // gcd first keeps the intermediate product inside 64 bits.
  std::uint64_t value = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    std::uint64_t den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(value, den);
    value /= g;
    den /= g;
    num /= den;  // den divides num once the gcd with value is removed
    value *= num;
  }
  return {r, n, value};
}

}  // namespace ostat
