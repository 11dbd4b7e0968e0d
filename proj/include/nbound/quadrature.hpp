#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "nbound/potential.hpp"

namespace nbound {

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The weighted moments of |V| that the limit formulas consume.
enum class Moment {
  SqrtAbsV,  ///< int |V|^(1/2) dr, dimensionless
  AbsV,      ///< int |V| dr, 1/length
  RAbsV,     ///< int r |V| dr, dimensionless
  R2AbsV,    ///< int r^2 |V| dr, length
};

struct IntegralSpec {
  Moment moment = Moment::SqrtAbsV;
  double lower = 0.0;
  double upper = kInfinity;
};

/// Integrand of (r, V(r)). Never called with r at a panel endpoint.
using RadialIntegrand = std::function<double(double r, double v)>;

/// Integrates a moment of the potential to relative accuracy rel_tol.
///
/// Panels are split at decades of the potential's scale, at its breakpoints and
/// at its support edge. An integrable singularity at the origin is removed by
/// substituting r = u^2 on the first panel. Infinite upper limits are handled by
/// doubling tail panels until the remainder is negligible.
///
/// Throws NotIntegrable when the moment diverges at the origin and
/// NumericalError when the adaptive budget is exhausted.
double integrate(const Potential& pot, const IntegralSpec& spec,
                 double rel_tol = kDefaultRelTol);

/// General form behind integrate(); `extra_breaks` adds panel edges (kinks of f).
double integrate_radial(const Potential& pot, const RadialIntegrand& f, double lower,
                        double upper, double rel_tol = kDefaultRelTol,
                        const std::vector<double>& extra_breaks = {});

/// False when the moment diverges at the origin (e.g. int |V| for a 1/r core).
bool moment_finite_at_origin(const Potential& pot, Moment moment);

/// Smallest radius (to 0.1%) beyond which both int r|V| and int r^2|V| are
/// below rel_tol times their value inside it. Returns support_end when finite.
double tail_radius(const Potential& pot, double rel_tol = kDefaultRelTol);

}  // namespace nbound
