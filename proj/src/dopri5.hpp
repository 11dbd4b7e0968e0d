#pragma once

// Dormand-Prince 5(4) stepper with FSAL and a caller-supplied error norm.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound::detail {

template <std::size_t D>
using Vec = std::array<double, D>;

template <std::size_t D>
Vec<D> axpy(const Vec<D>& y, double h, std::initializer_list<std::pair<double, const Vec<D>*>> terms) {
  Vec<D> out = y;
  for (const auto& [c, k] : terms) {
    for (std::size_t i = 0; i < D; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

/// One step of size h from (r, y) with k1 = f(r, y). Writes the 5th-order
/// solution, the embedded error estimate and k7 = f(r + h, y5).
template <std::size_t D, class Rhs>
void dopri5_step(const Rhs& f, double r, const Vec<D>& y, const Vec<D>& k1, double h,
                 Vec<D>& y5, Vec<D>& err, Vec<D>& k7) {
  const Vec<D> k2 = f(r + h / 5.0, axpy<D>(y, h, {{1.0 / 5.0, &k1}}));
  const Vec<D> k3 = f(r + 3.0 * h / 10.0, axpy<D>(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
  const Vec<D> k4 = f(r + 4.0 * h / 5.0,
                      axpy<D>(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
  const Vec<D> k5 =
      f(r + 8.0 * h / 9.0, axpy<D>(y, h,
                                   {{19372.0 / 6561.0, &k1},
                                    {-25360.0 / 2187.0, &k2},
                                    {64448.0 / 6561.0, &k3},
                                    {-212.0 / 729.0, &k4}}));
  const Vec<D> k6 = f(r + h, axpy<D>(y, h,
                                     {{9017.0 / 3168.0, &k1},
                                      {-355.0 / 33.0, &k2},
                                      {46732.0 / 5247.0, &k3},
                                      {49.0 / 176.0, &k4},
                                      {-5103.0 / 18656.0, &k5}}));
  y5 = axpy<D>(y, h,
               {{35.0 / 384.0, &k1},
                {500.0 / 1113.0, &k3},
                {125.0 / 192.0, &k4},
                {-2187.0 / 6784.0, &k5},
                {11.0 / 84.0, &k6}});
  k7 = f(r + h, y5);
  for (std::size_t i = 0; i < D; ++i) {
    err[i] = h * (71.0 / 57600.0 * k1[i] - 71.0 / 16695.0 * k3[i] + 71.0 / 1920.0 * k4[i] -
                  17253.0 / 339200.0 * k5[i] + 22.0 / 525.0 * k6[i] - 1.0 / 40.0 * k7[i]);
  }
}

/// Integrates from a to b. `norm(r, y_new, err)` returns the scaled error
/// (accept when <= 1); `cap(r)` bounds the step; `on_step(r0, y0, k0, r1, y1, k1)`
/// sees each accepted step and may rescale y1 and k1 in place. `h` carries the
/// step-size guess in and out.
template <std::size_t D, class Rhs, class Norm, class Cap, class OnStep>
Vec<D> dopri5_drive(const Rhs& f, double a, double b, Vec<D> y, double& h, const Norm& norm,
                    const Cap& cap, OnStep&& on_step) {
  double r = a;
  Vec<D> k1 = f(r, y);
  Vec<D> y5{};
  Vec<D> err{};
  Vec<D> k7{};
  const double span = b - a;
  while (r < b) {
    double hc = std::min(h, cap(r));
    bool last = false;
    if (hc >= (b - r) * (1.0 - 1e-12)) {
      hc = b - r;
      last = true;
    }
    dopri5_step<D>(f, r, y, k1, hc, y5, err, k7);
    const double e = norm(r + hc, y5, err);
    if (e <= 1.0) {
      const double r_new = last ? b : r + hc;
      on_step(r, y, k1, r_new, y5, k7);
      y = y5;
      k1 = k7;
      r = r_new;
      const double grow = e > 0.0 ? 0.9 * std::pow(e, -0.2) : 5.0;
      h = hc * std::clamp(grow, 0.2, 5.0);
    } else {
      h = hc * std::max(0.2, 0.9 * std::pow(e, -0.2));
      if (!(h > 1e-15 * std::max(std::abs(r), span))) {
        throw NumericalError("step size underflow at r = " + format_shortest(r));
      }
    }
  }
  return y;
}

/// Cubic Hermite interpolant on [0, 1] in the local coordinate s.
inline double hermite(double s, double y0, double d0, double y1, double d1, double h) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

/// Zero of the Hermite interpolant between r0 and r1, assuming a sign change.
inline double hermite_root(double r0, double y0, double d0, double r1, double y1, double d1) {
  const double h = r1 - r0;
  double lo = 0.0;
  double hi = 1.0;
  const bool neg_lo = y0 < 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = hermite(mid, y0, d0, y1, d1, h);
    if ((v < 0.0) == neg_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return r0 + 0.5 * (lo + hi) * h;
}

}  // namespace nbound::detail
