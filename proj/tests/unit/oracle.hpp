#pragma once

// Small, deliberately naive numerics used as independent checks in tests.

#include <cmath>
#include <stdexcept>

namespace oracle {

// Plain bisection; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  if (flo * f(hi) > 0) throw std::runtime_error("oracle::bisect: no sign change");
  for (int i = 0; i < iters && hi - lo > 1e-15 * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
