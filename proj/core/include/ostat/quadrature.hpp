#pragma once

#include <cmath>
#include <limits>

#include "ostat/errors.hpp"

namespace ostat {

/// Adaptive Simpson quadrature with Richardson correction. Throws
/// QuadratureError if the recursion budget runs out before the local error
/// estimates meet the absolute tolerance.
template <typename F>
double adaptive_simpson(F&& f, double lo, double hi, double abs_tol, int max_depth = 50) {
  struct Rec {
    F& f;
    int budget = 2'000'000;

    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
      if (--budget < 0) throw QuadratureError("adaptive_simpson: evaluation budget exhausted");
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (!std::isfinite(delta)) throw QuadratureError("adaptive_simpson: non-finite integrand");
      if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
      }
      if (depth <= 0) throw QuadratureError("adaptive_simpson: tolerance not reached at maximum depth");
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  if (lo == hi) return 0.0;
  Rec rec{f};
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return rec.run(lo, hi, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace ostat
