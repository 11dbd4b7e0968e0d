#include "nbound/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kMaxDepth = 15;
constexpr int kMaxTailPanels = 120;

double moment_weight(Moment m, double r, double v) {
  const double a = std::abs(v);
  switch (m) {
    case Moment::SqrtAbsV: return std::sqrt(a);
    case Moment::AbsV: return a;
    case Moment::RAbsV: return r * a;
    case Moment::R2AbsV: return r * r * a;
  }
  return 0.0;
}

struct Accumulator {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

double panel(Accumulator& acc, const Potential& pot, const RadialIntegrand& f, double a,
             double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  double val = 0.0;
  const double tol = std::max(0.1 * rel_tol, 1e-13);
  // Boost compares leaf errors measured on [-1, 1] against scaled estimates,
  // so every panel is mapped onto [0, 1] to keep its refinement meaningful.
  if (a == 0.0 && pot.origin_singular()) {
    const double w = std::sqrt(b);
    auto h = [&](double x) {
      double u = w * x;
      double r = u * u;
      return r > 0.0 ? f(r, pot.eval(r)) * 2.0 * u * w : 0.0;
    };
    val = GaussKronrod::integrate(h, 0.0, 1.0, kMaxDepth, tol, &err, &l1);
  } else {
    const double w = b - a;
    auto h = [&](double x) { return f(a + w * x, pot.eval(a + w * x)) * w; };
    val = GaussKronrod::integrate(h, 0.0, 1.0, kMaxDepth, tol, &err, &l1);
  }
  err *= 0.5;
  acc.value += val;
  acc.error += err;
  acc.l1 += l1;
  return val;
}

std::vector<double> panel_edges(const Potential& pot, double a, double b,
                                const std::vector<double>& extra) {
  std::vector<double> pts{a, b};
  const double scale = pot.scale();
  for (int k = -6; k <= 300; ++k) {
    double d = scale * std::pow(10.0, k);
    if (d >= b) break;
    if (d > a) pts.push_back(d);
  }
  for (double bp : pot.breakpoints()) {
    if (bp > a && bp < b) pts.push_back(bp);
  }
  for (double e : extra) {
    if (e > a && e < b) pts.push_back(e);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void check_tolerance(double rel_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) {
    throw InvalidInput("rel_tol must lie in (1e-14, 1e-2)");
  }
}

}  // namespace

double integrate_radial(const Potential& pot, const RadialIntegrand& f, double lower,
                        double upper, double rel_tol, const std::vector<double>& extra_breaks) {
  check_tolerance(rel_tol);
  if (!(lower >= 0.0)) throw InvalidInput("lower integration limit must be nonnegative");
  if (upper < lower) throw InvalidInput("integration limits out of order");
  if (upper == lower) return 0.0;

  double finite_end = upper;
  bool tail = false;
  if (pot.support_end()) {
    finite_end = std::min(upper, *pot.support_end());
  } else if (std::isinf(upper)) {
    finite_end = std::max(lower, pot.scale());
    tail = true;
  }

  Accumulator acc;
  if (finite_end > lower) {
    auto edges = panel_edges(pot, lower, finite_end, extra_breaks);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      panel(acc, pot, f, edges[i], edges[i + 1], rel_tol);
    }
  }

  if (tail) {
    double x = finite_end;
    double h = std::max(pot.scale(), x);
    double prev = std::numeric_limits<double>::infinity();
    int k = 0;
    for (;; ++k) {
      if (k >= kMaxTailPanels) {
        throw NumericalError("tail integral did not converge beyond r = " + format_shortest(x));
      }
      double c = std::abs(panel(acc, pot, f, x, x + h, rel_tol));
      x += h;
      h *= 2.0;
      bool small = c <= 1e-3 * rel_tol * std::abs(acc.value);
      if (acc.value == 0.0 && c == 0.0 && k >= 3) break;
      if (small && c <= prev && k >= 1) break;
      prev = c;
    }
  }

  if (acc.error > std::sqrt(rel_tol) * std::max(acc.l1, 1e-300)) {
    throw NumericalError("adaptive quadrature did not converge on [" + format_shortest(lower) +
                         ", " + format_shortest(upper) + "]");
  }
  return acc.value;
}

bool moment_finite_at_origin(const Potential& pot, Moment moment) {
  if (!pot.origin_singular()) return true;
  const double r1 = 1e-12 * pot.scale();
  const double r2 = 1e-6 * pot.scale();
  const double w1 = r1 * moment_weight(moment, r1, pot.eval(r1));
  const double w2 = r2 * moment_weight(moment, r2, pot.eval(r2));
  return w1 < 0.5 * w2;
}

double integrate(const Potential& pot, const IntegralSpec& spec, double rel_tol) {
  if (spec.lower == 0.0 && spec.upper > 0.0 && !moment_finite_at_origin(pot, spec.moment)) {
    throw NotIntegrable("moment diverges at the origin for " + pot.describe());
  }
  const Moment m = spec.moment;
  return integrate_radial(
      pot, [m](double r, double v) { return moment_weight(m, r, v); }, spec.lower, spec.upper,
      rel_tol);
}

double tail_radius(const Potential& pot, double rel_tol) {
  if (pot.support_end()) return *pot.support_end();
  const double qt = std::clamp(rel_tol, 1e-13, 1e-6);

  auto converged = [&](double r) {
    for (Moment m : {Moment::RAbsV, Moment::R2AbsV}) {
      double inside = integrate(pot, {m, 0.0, r}, qt);
      double outside = integrate(pot, {m, r, kInfinity}, qt);
      if (inside == 0.0 && outside == 0.0) continue;
      if (!(outside < rel_tol * inside)) return false;
    }
    return true;
  };

  const double scale = pot.scale();
  double hi = scale;
  while (!converged(hi)) {
    hi *= 2.0;
    if (hi > 1e8 * scale) {
      throw NumericalError("no tail radius found for " + pot.describe());
    }
  }
  double lo = hi == scale ? 0.0 : 0.5 * hi;
  while (hi - lo > 1e-3 * hi) {
    double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && converged(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace nbound
