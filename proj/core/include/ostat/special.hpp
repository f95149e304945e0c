#pragma once

#include <cstdint>

namespace ostat {

/// Upper tail of the standard normal, 1 - Phi(u).
///
/// Evaluated as erfc(u / sqrt(2)) / 2 so that no cancellation occurs for
/// large positive u. Relative accuracy is at the level of a few ulp while
/// the result is a normal double (u below about 37.5).
double std_normal_tail(double u);

double std_normal_cdf(double u);
double std_normal_pdf(double u);

/// Euler Gamma function for x > 0. Throws std::domain_error otherwise.
double gamma_function(double x);

struct BinomialCoefficient {
  int r = 0;
  int n = 0;
  std::uint64_t value = 0;
};

/// n! / (r! (n - r)!) for 1 <= r <= n <= 64, exact.
/// Throws std::out_of_range outside that range.
BinomialCoefficient binomial(int r, int n);

}  // namespace ostat
