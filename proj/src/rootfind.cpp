#include "nbound/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kScanPoints = 256;
constexpr int kMaxScanPoints = 4096;
constexpr int kMaxBisections = 300;

double quad_tol(double tol) { return std::clamp(0.1 * tol, 1e-13, 1e-6); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

double scan_lo(const Potential& pot) { return 1e-6 * pot.scale(); }

double scan_hi(const Potential& pot) {
  if (pot.support_end()) return *pot.support_end();
  return tail_radius(pot);
}

// Bisection on [lo, hi] where f(lo) and f(hi) differ in sign. `f` returns the
// residual and the magnitude it is measured against.
struct Residual {
  double value;
  double scale;
};

template <class F>
double bisect(F&& f, double lo, double hi, bool negative_at_lo, double tol) {
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxBisections; ++it) {
    mid = 0.5 * (lo + hi);
    Residual res = f(mid);
    if (std::abs(res.value) <= tol * std::max(res.scale, 1e-300)) return mid;
    if ((res.value < 0.0) == negative_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) break;
  }
  return 0.5 * (lo + hi);
}

double sqrt_total(const Potential& pot, double tol) {
  return integrate(pot, {Moment::SqrtAbsV, 0.0, kInfinity}, quad_tol(tol));
}

void require_bound_state_room(double total) {
  if (total < kHalfPi) {
    throw NoBoundStates("int |V|^(1/2) dr = " + format_shortest(total) +
                        " < pi/2: no bound states, p and q undefined");
  }
}

}  // namespace

double solve_p(const Potential& pot, double tol) {
  const double qt = quad_tol(tol);
  const double total = sqrt_total(pot, tol);
  require_bound_state_room(total);

  auto partial = [&](double a, double b) {
    return integrate(pot, {Moment::SqrtAbsV, a, b}, qt);
  };

  double lo = 0.0;
  double i_lo = 0.0;
  double hi = 0.0;
  if (pot.support_end()) {
    hi = *pot.support_end();
  } else {
    hi = pot.scale();
    double i_hi = partial(0.0, hi);
    while (i_hi < kHalfPi) {
      lo = hi;
      i_lo = i_hi;
      hi *= 2.0;
      i_hi += partial(lo, hi);
      if (hi > 1e8 * pot.scale()) return hi;
    }
  }

  for (int it = 0; it < kMaxBisections; ++it) {
    double mid = 0.5 * (lo + hi);
    double i_mid = i_lo + partial(lo, mid);
    double resid = i_mid - kHalfPi;
    if (std::abs(resid) <= tol) return mid;
    if (resid < 0.0) {
      lo = mid;
      i_lo = i_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return mid;
  }
  return 0.5 * (lo + hi);
}

double solve_q(const Potential& pot, double tol) {
  const double qt = quad_tol(tol);
  const double total = sqrt_total(pot, tol);
  require_bound_state_room(total);

  auto partial = [&](double a, double b) {
    return integrate(pot, {Moment::SqrtAbsV, a, b}, qt);
  };

  double lo = 0.0;
  double hi = 0.0;
  double i_hi = 0.0;  // int_hi^inf
  if (pot.support_end()) {
    hi = *pot.support_end();
  } else {
    hi = pot.scale();
    i_hi = integrate(pot, {Moment::SqrtAbsV, hi, kInfinity}, qt);
    while (i_hi >= kHalfPi) {
      lo = hi;
      hi *= 2.0;
      i_hi = integrate(pot, {Moment::SqrtAbsV, hi, kInfinity}, qt);
    }
  }

  for (int it = 0; it < kMaxBisections; ++it) {
    double mid = 0.5 * (lo + hi);
    double i_mid = i_hi + partial(mid, hi);
    double resid = i_mid - kHalfPi;
    if (std::abs(resid) <= tol) return mid;
    if (resid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
      i_hi = i_mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return mid;
  }
  return 0.5 * (lo + hi);
}

double solve_rho(const Potential& pot, double tol, std::vector<double>* all_roots) {
  const double qt = quad_tol(tol);
  const double lo = scan_lo(pot);
  const double hi = scan_hi(pot);

  for (int n = kScanPoints; n <= kMaxScanPoints; n *= 2) {
    auto grid = log_grid(lo, hi, n);
    std::vector<double> upper_tail(grid.size());
    upper_tail.back() = pot.support_end()
                            ? 0.0
                            : integrate(pot, {Moment::AbsV, grid.back(), kInfinity}, qt);
    for (std::size_t i = grid.size() - 1; i-- > 0;) {
      upper_tail[i] = upper_tail[i + 1] + integrate(pot, {Moment::AbsV, grid[i], grid[i + 1]}, qt);
    }

    std::vector<double> roots;
    double best = -1.0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      double v0 = pot.eval(grid[i]);
      double v1 = pot.eval(grid[i + 1]);
      if (v0 == 0.0 || v1 == 0.0) continue;
      double f0 = grid[i] * v0 + upper_tail[i];
      double f1 = grid[i + 1] * v1 + upper_tail[i + 1];
      if ((f0 > 0.0) == (f1 > 0.0)) continue;
      const double right = grid[i + 1];
      const double tail_right = upper_tail[i + 1];
      auto f = [&](double x) {
        double tail = tail_right + integrate(pot, {Moment::AbsV, x, right}, qt);
        double v = pot.eval(x);
        return Residual{x * v + tail, std::abs(x * v) + tail};
      };
      double root = bisect(f, grid[i], right, f0 < 0.0, tol);
      roots.push_back(root);
      double merit = root * std::sqrt(std::abs(pot.eval(root)));
      if (merit > best_value) {
        best_value = merit;
        best = root;
      }
    }
    if (!roots.empty()) {
      if (all_roots) *all_roots = roots;
      return best;
    }
  }
  throw NumericalError("no sign change found for the rho equation of " + pot.describe());
}

SRoots solve_s(const Potential& pot, double tol) {
  const double lo = scan_lo(pot);
  double hi = scan_hi(pot);
  if (pot.support_end()) hi *= 1.0 - 1e-9;

  auto h = [&](double x) {
    double v = std::abs(pot.eval(x));
    double d = pot.deriv(x);
    double rhs = 4.0 * v * std::sqrt(v);
    return Residual{d - rhs, std::abs(d) + rhs};
  };

  SRoots out;
  for (int n = kScanPoints; n <= kMaxScanPoints; n *= 2) {
    auto grid = log_grid(lo, hi, n);
    std::vector<double> values(grid.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!pot.is_jump(grid[i]) && pot.eval(grid[i]) != 0.0) values[i] = h(grid[i]).value;
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (std::isnan(values[i]) || std::isnan(values[i + 1])) continue;
      if ((values[i] > 0.0) == (values[i + 1] > 0.0)) continue;
      bool jump_inside = false;
      for (double bp : pot.breakpoints()) {
        if (bp > grid[i] && bp < grid[i + 1] && pot.is_jump(bp)) jump_inside = true;
      }
      if (jump_inside) continue;
      out.all.push_back(bisect(h, grid[i], grid[i + 1], values[i] < 0.0, tol));
    }
    if (!out.all.empty()) break;
  }
  if (!out.all.empty()) out.largest = out.all.back();
  return out;
}

std::optional<double> solve_t(const Potential& pot, double tol) {
  const double qt = quad_tol(tol);
  const double lo = scan_lo(pot);
  const double hi = scan_hi(pot);

  auto moment = [&](double a, double b) { return integrate(pot, {Moment::R2AbsV, a, b}, qt); };

  for (int n = kScanPoints; n <= kMaxScanPoints; n *= 2) {
    auto grid = log_grid(lo, hi, n);
    double left = 0.0;
    double c_left = 0.0;
    for (double x : grid) {
      double c = c_left + moment(left, x);
      if (x - c <= 0.0) {
        const double a = left;
        const double ca = c_left;
        auto f = [&](double y) {
          double cy = ca + moment(a, y);
          return Residual{y - cy, y + cy};
        };
        return bisect(f, a, x, false, tol);
      }
      left = x;
      c_left = c;
    }
  }
  return std::nullopt;
}

double solve_a_cohn(const Potential& pot, double tol) {
  const double qt = quad_tol(tol);
  const double lo = scan_lo(pot);
  const double hi = scan_hi(pot);

  for (int n = kScanPoints; n <= kMaxScanPoints; n *= 2) {
    auto grid = log_grid(lo, hi, n);
    std::vector<double> inner(grid.size());
    std::vector<double> outer(grid.size());
    inner[0] = integrate(pot, {Moment::R2AbsV, 0.0, grid[0]}, qt);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      inner[i] = inner[i - 1] + integrate(pot, {Moment::R2AbsV, grid[i - 1], grid[i]}, qt);
    }
    outer.back() = pot.support_end() ? 0.0
                                     : integrate(pot, {Moment::AbsV, grid.back(), kInfinity}, qt);
    for (std::size_t i = grid.size() - 1; i-- > 0;) {
      outer[i] = outer[i + 1] + integrate(pot, {Moment::AbsV, grid[i], grid[i + 1]}, qt);
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      double f0 = inner[i] - grid[i] * grid[i] * outer[i];
      double f1 = inner[i + 1] - grid[i + 1] * grid[i + 1] * outer[i + 1];
      if (!(f0 < 0.0 && f1 >= 0.0)) continue;
      const double a0 = grid[i];
      const double a1 = grid[i + 1];
      const double in0 = inner[i];
      const double out1 = outer[i + 1];
      auto f = [&](double a) {
        double in = in0 + integrate(pot, {Moment::R2AbsV, a0, a}, qt);
        double out = out1 + integrate(pot, {Moment::AbsV, a, a1}, qt);
        return Residual{in - a * a * out, in + a * a * out};
      };
      return bisect(f, a0, a1, true, tol);
    }
  }
  throw NumericalError("no bracket found for the Cohn optimum of " + pot.describe());
}

double solve_a_calogero(const Potential& pot, double tol) {
  const double qt = quad_tol(tol);
  auto f = [&](double a) {
    const double a2 = a * a;
    double signed_part = integrate_radial(
        pot,
        [a2](double, double v) {
          double x = a2 * std::abs(v);
          return std::abs(v) * (1.0 - x) / ((1.0 + x) * (1.0 + x));
        },
        0.0, kInfinity, qt);
    double magnitude = integrate_radial(
        pot,
        [a2](double, double v) {
          double x = a2 * std::abs(v);
          return std::abs(v) / (1.0 + x);  // bounds |integrand| without a kink
        },
        0.0, kInfinity, qt);
    return Residual{signed_part, magnitude};
  };

  const double lo = 1e-8 * pot.scale();
  const double hi = 1e4 * pot.scale();
  for (int n = 64; n <= kMaxScanPoints; n *= 2) {
    auto grid = log_grid(lo, hi, n);
    double prev = f(grid[0]).value;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      double cur = f(grid[i]).value;
      if (prev > 0.0 && cur <= 0.0) return bisect(f, grid[i - 1], grid[i], false, tol);
      prev = cur;
    }
  }
  throw NumericalError("no bracket found for the Calogero optimum of " + pot.describe());
}

}  // namespace nbound
