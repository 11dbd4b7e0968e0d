#pragma once

#include <vector>

#include "nbound/limits.hpp"
#include "nbound/potential.hpp"

namespace nbound {

enum class LadderDirection { Up, Down };

/// Radii r_j of a half-wavelength ladder, r_{j+1} = r_j +- (pi/2)|V(r_j)|^(-1/2).
struct LadderTrace {
  LadderDirection direction = LadderDirection::Up;
  double q = 0.0;
  std::vector<double> radii;  ///< r_0, r_1, ... including the first one past q (up) or 0 (down)
  std::vector<double> steps;  ///< steps[j] = (pi/2)|V(radii[j])|^(-1/2)
  long J = 0;
  long bound = 0;
};

struct LadderResult {
  LadderTrace trace;
  LimitValue limit;
};

/// Upper limit from the increasing ladder started at the origin. Requires a
/// potential finite at the origin.
LadderResult ladder_upper(LimitContext& ctx);
LadderResult ladder_upper(const Potential& pot, double rel_tol = kDefaultRelTol);

/// Lower limit from the decreasing ladder started at q.
LadderResult ladder_lower(LimitContext& ctx);
LadderResult ladder_lower(const Potential& pot, double rel_tol = kDefaultRelTol);

/// Piecewise-constant potential below V on [0, q) built from an up trace.
double ladder_minorant(const Potential& pot, const LadderTrace& up, double r);

/// Piecewise-constant potential above V on [0, q) built from a down trace.
double ladder_majorant(const Potential& pot, const LadderTrace& down, double r);

}  // namespace nbound
