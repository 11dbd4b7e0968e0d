#include "nbound/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr std::size_t kMaxRungs = 50'000'000;

double half_wavelength(const Potential& pot, double r) {
  const double v = std::abs(pot.eval(r));
  if (v == 0.0) {
    throw NumericalError("ladder reached a radius where V = 0 before q: r = " +
                         format_shortest(r));
  }
  return kHalfPi / std::sqrt(v);
}

LadderResult short_circuit(LimitName name, LadderDirection dir, double total) {
  LadderResult out;
  out.trace.direction = dir;
  out.limit.name = name;
  out.limit.direction = direction_of(name);
  out.limit.applicable = true;
  out.limit.reason = "int |V|^(1/2) = " + format_sig(total) + " < pi/2, so N = 0";
  return out;
}

}  // namespace

LadderResult ladder_upper(LimitContext& ctx) {
  const Potential& pot = ctx.potential();
  if (pot.origin_singular()) {
    return {{}, inapplicable(LimitName::LadderUp, "V is singular at the origin")};
  }
  if (!ctx.has_bound_room()) {
    return short_circuit(LimitName::LadderUp, LadderDirection::Up, ctx.sqrt_integral());
  }

  LadderTrace tr;
  tr.direction = LadderDirection::Up;
  tr.q = *ctx.q();
  const double guard = 1e-12 * pot.scale();
  tr.radii.push_back(0.0);
  while (tr.radii.back() < tr.q - guard) {
    if (tr.radii.size() > kMaxRungs) throw NumericalError("ladder exceeded its rung budget");
    const double step = half_wavelength(pot, tr.radii.back());
    tr.steps.push_back(step);
    tr.radii.push_back(tr.radii.back() + step);
  }
  const long k = static_cast<long>(tr.radii.size()) - 1;  // first index with r_k >= q
  tr.J = k - 1;
  tr.bound = (tr.J + 1) / 2 + 1;

  LimitValue lv = make_limit(LimitName::LadderUp, static_cast<double>(tr.bound),
                             "J = " + std::to_string(tr.J));
  lv.boundary_case = false;
  return {std::move(tr), std::move(lv)};
}

LadderResult ladder_lower(LimitContext& ctx) {
  const Potential& pot = ctx.potential();
  if (!ctx.has_bound_room()) {
    return short_circuit(LimitName::LadderDown, LadderDirection::Down, ctx.sqrt_integral());
  }

  LadderTrace tr;
  tr.direction = LadderDirection::Down;
  tr.q = *ctx.q();
  tr.radii.push_back(tr.q);
  while (tr.radii.back() > 0.0) {
    if (tr.radii.size() > kMaxRungs) throw NumericalError("ladder exceeded its rung budget");
    const double step = half_wavelength(pot, tr.radii.back());
    tr.steps.push_back(step);
    tr.radii.push_back(tr.radii.back() - step);
  }
  tr.J = static_cast<long>(tr.radii.size()) - 2;  // last index with r_J > 0
  tr.bound = tr.J / 2;

  LimitValue lv = make_limit(LimitName::LadderDown, static_cast<double>(tr.bound),
                             "J = " + std::to_string(tr.J));
  lv.boundary_case = false;
  return {std::move(tr), std::move(lv)};
}

LadderResult ladder_upper(const Potential& pot, double rel_tol) {
  LimitContext ctx(pot, rel_tol);
  return ladder_upper(ctx);
}

LadderResult ladder_lower(const Potential& pot, double rel_tol) {
  LimitContext ctx(pot, rel_tol);
  return ladder_lower(ctx);
}

double ladder_minorant(const Potential& pot, const LadderTrace& up, double r) {
  if (up.radii.empty() || r >= up.q || r < 0.0) return 0.0;
  // Segment j covers [r_j, r_{j+1}) for j < J and [r_J, q) for j = J.
  auto last = up.radii.begin() + up.J + 1;
  auto it = std::upper_bound(up.radii.begin(), last, r);
  const auto j = static_cast<std::size_t>(std::distance(up.radii.begin(), it) - 1);
  return pot.eval(up.radii[j]);
}

double ladder_majorant(const Potential& pot, const LadderTrace& down, double r) {
  if (down.radii.empty() || r > down.q || r < 0.0) return 0.0;
  const auto J = static_cast<std::size_t>(down.J);
  if (r <= down.radii[J]) return pot.eval(down.radii[J]);
  // Radii decrease; find j with r_j < r <= r_{j-1}.
  std::size_t j = 1;
  {
    std::size_t lo = 1;
    std::size_t hi = J;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (down.radii[mid] < r) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    j = lo;
  }
  return pot.eval(down.radii[j - 1]);
}

}  // namespace nbound
