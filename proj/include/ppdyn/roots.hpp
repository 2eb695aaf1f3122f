// Bracketing scalar root finder.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppdyn {

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (or one is
/// zero). Stops when the bracket is narrower than rel_tol * |midpoint| or no
/// longer shrinks in floating point.
template <typename Fn>
double bisect(Fn&& f, double lo, double hi, double rel_tol = 1e-14) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw std::invalid_argument("bisect: root not bracketed");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if (std::abs(hi - lo) <= rel_tol * std::abs(mid)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ppdyn
