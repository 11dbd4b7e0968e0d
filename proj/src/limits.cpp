#include "nbound/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

double abs_v(const Potential& pot, double r) { return std::abs(pot.eval(r)); }

LimitValue no_bound_states(LimitName name, double total) {
  LimitValue out;
  out.name = name;
  out.direction = direction_of(name);
  out.applicable = true;
  out.raw = 0.0;
  out.bound = 0;
  out.reason = "int |V|^(1/2) = " + format_sig(total) + " < pi/2, so N = 0";
  return out;
}

// The first-type splits assume p <= q; weak wells with pi/2 <= T < pi can
// have q < p, where the formulas do not apply.
std::optional<LimitValue> unordered_pq(LimitContext& ctx, LimitName name) {
  const double p = *ctx.p();
  const double q = *ctx.q();
  if (p <= q) return std::nullopt;
  return inapplicable(name, "q = " + format_sig(q) + " < p = " + format_sig(p));
}

}  // namespace

std::string_view to_string(LimitName name) {
  switch (name) {
    case LimitName::BS: return "BS";
    case LimitName::CC: return "CC";
    case LimitName::Martin: return "M";
    case LimitName::C: return "C";
    case LimitName::C0: return "C0";
    case LimitName::FirstUpper: return "first_upper";
    case LimitName::FirstUpperRegular: return "first_upper_regular";
    case LimitName::FirstLowerRegular: return "first_lower_regular";
    case LimitName::FirstLowerRegularQ: return "first_lower_regular_q";
    case LimitName::FirstLowerSingular: return "first_lower_singular";
    case LimitName::FirstLowerTs: return "first_lower_ts";
    case LimitName::FirstLowerTq: return "first_lower_tq";
    case LimitName::LadderUp: return "ladder_up";
    case LimitName::LadderDown: return "ladder_down";
  }
  return "?";
}

Direction direction_of(LimitName name) {
  switch (name) {
    case LimitName::BS:
    case LimitName::CC:
    case LimitName::Martin:
    case LimitName::FirstUpper:
    case LimitName::FirstUpperRegular:
    case LimitName::LadderUp:
      return Direction::Upper;
    default:
      return Direction::Lower;
  }
}

LimitValue make_limit(LimitName name, double raw, std::string reason) {
  LimitValue out;
  out.name = name;
  out.direction = direction_of(name);
  out.raw = raw;
  out.applicable = true;
  out.reason = std::move(reason);
  if (!std::isfinite(raw)) {
    out.applicable = false;
    out.reason = "non-finite value";
    return out;
  }
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) < kBoundaryEps) {
    out.boundary_case = true;
    out.bound = static_cast<long>(nearest);
  } else if (out.direction == Direction::Upper) {
    out.bound = static_cast<long>(std::floor(raw));
  } else {
    out.bound = static_cast<long>(std::ceil(raw));
  }
  if (out.direction == Direction::Lower) out.bound = std::max(out.bound, 0L);
  return out;
}

LimitValue inapplicable(LimitName name, std::string reason) {
  LimitValue out;
  out.name = name;
  out.direction = direction_of(name);
  out.raw = std::numeric_limits<double>::quiet_NaN();
  out.applicable = false;
  out.reason = std::move(reason);
  return out;
}

LimitContext::LimitContext(const Potential& pot, double rel_tol) : pot_(pot), rel_tol_(rel_tol) {}

double LimitContext::sqrt_integral() {
  if (!sqrt_total_) sqrt_total_ = integrate(pot_, {Moment::SqrtAbsV, 0.0, kInfinity}, rel_tol_);
  return *sqrt_total_;
}

bool LimitContext::has_bound_room() { return sqrt_integral() >= kHalfPi; }

std::optional<double> LimitContext::p() {
  if (!p_) p_ = has_bound_room() ? std::optional<double>(solve_p(pot_, rel_tol_)) : std::nullopt;
  return *p_;
}

std::optional<double> LimitContext::q() {
  if (!q_) q_ = has_bound_room() ? std::optional<double>(solve_q(pot_, rel_tol_)) : std::nullopt;
  return *q_;
}

double LimitContext::rho() {
  if (!rho_) rho_ = solve_rho(pot_, rel_tol_, &rho_roots_);
  return *rho_;
}

const std::vector<double>& LimitContext::rho_roots() {
  rho();
  return rho_roots_;
}

const SRoots& LimitContext::s() {
  if (!s_) s_ = solve_s(pot_, rel_tol_);
  return *s_;
}

std::optional<double> LimitContext::t() {
  if (!t_) t_ = solve_t(pot_, rel_tol_);
  return *t_;
}

double LimitContext::sqrt_between(double a, double b) {
  return integrate(pot_, {Moment::SqrtAbsV, a, b}, rel_tol_);
}

double LimitContext::moment(Moment m, double a, double b) {
  return integrate(pot_, {m, a, b}, rel_tol_);
}

AuxiliaryRadii LimitContext::radii() {
  AuxiliaryRadii out;
  out.p = p();
  out.q = q();
  try {
    out.rho = rho();
    out.rho_roots = rho_roots_;
  } catch (const NumericalError&) {
  }
  out.s = s().largest;
  out.s_roots = s().all;
  out.t = t();
  try {
    out.a_cohn = solve_a_cohn(pot_, rel_tol_);
  } catch (const NumericalError&) {
  }
  try {
    out.a_calogero = solve_a_calogero(pot_, rel_tol_);
  } catch (const NumericalError&) {
  }
  return out;
}

LimitValue bs_upper(LimitContext& ctx) {
  try {
    return make_limit(LimitName::BS, ctx.moment(Moment::RAbsV));
  } catch (const NotIntegrable& e) {
    return inapplicable(LimitName::BS, e.what());
  }
}

LimitValue cc_upper(LimitContext& ctx) {
  return make_limit(LimitName::CC, 2.0 / kPi * ctx.sqrt_integral());
}

LimitValue martin_upper(LimitContext& ctx) {
  try {
    const double m2 = ctx.moment(Moment::R2AbsV);
    const double m0 = ctx.moment(Moment::AbsV);
    return make_limit(LimitName::Martin, std::pow(m2 * m0, 0.25));
  } catch (const NotIntegrable& e) {
    return inapplicable(LimitName::Martin, e.what());
  }
}

LimitValue c_lower(LimitContext& ctx) {
  try {
    const double rho = ctx.rho();
    const double raw = 2.0 / kPi * rho * std::sqrt(abs_v(ctx.potential(), rho)) - 0.5;
    return make_limit(LimitName::C, raw, "rho = " + format_sig(rho, 10));
  } catch (const NumericalError& e) {
    return inapplicable(LimitName::C, e.what());
  }
}

LimitValue c0_lower(LimitContext& ctx) {
  const Potential& pot = ctx.potential();
  if (pot.origin_singular()) return inapplicable(LimitName::C0, "V is singular at the origin");
  const double v0 = abs_v(pot, 0.0);
  const double raw = ctx.moment(Moment::AbsV) / (kPi * std::sqrt(v0)) - 0.5;
  return make_limit(LimitName::C0, raw);
}

LimitValue first_upper(LimitContext& ctx) {
  if (!ctx.has_bound_room()) return no_bound_states(LimitName::FirstUpper, ctx.sqrt_integral());
  if (auto bad = unordered_pq(ctx, LimitName::FirstUpper)) return *bad;
  const Potential& pot = ctx.potential();
  const double p = *ctx.p();
  const double q = *ctx.q();
  const double raw = ctx.sqrt_integral() / kPi +
                     std::log(abs_v(pot, p) / abs_v(pot, q)) / (4.0 * kPi) + 0.5;
  return make_limit(LimitName::FirstUpper, raw);
}

LimitValue first_upper_regular(LimitContext& ctx) {
  const Potential& pot = ctx.potential();
  if (pot.origin_singular()) {
    return inapplicable(LimitName::FirstUpperRegular, "V is singular at the origin");
  }
  if (!ctx.has_bound_room()) {
    return no_bound_states(LimitName::FirstUpperRegular, ctx.sqrt_integral());
  }
  if (auto bad = unordered_pq(ctx, LimitName::FirstUpperRegular)) return *bad;
  const double q = *ctx.q();
  const double raw = ctx.sqrt_integral() / kPi +
                     std::log(abs_v(pot, 0.0) / abs_v(pot, q)) / (4.0 * kPi) + 0.5;
  return make_limit(LimitName::FirstUpperRegular, raw);
}

double first_lower_regular_raw(LimitContext& ctx, double s) {
  const Potential& pot = ctx.potential();
  const double vs = abs_v(pot, s);
  if (!(s > 0.0) || vs == 0.0) return -std::numeric_limits<double>::infinity();
  return ctx.sqrt_between(0.0, s) / kPi - std::log(abs_v(pot, 0.0) / vs) / (4.0 * kPi) - 0.5;
}

LimitValue first_lower_regular(LimitContext& ctx, std::optional<double> s) {
  const Potential& pot = ctx.potential();
  if (pot.origin_singular()) {
    return inapplicable(LimitName::FirstLowerRegular, "V is singular at the origin");
  }
  if (s) {
    return make_limit(LimitName::FirstLowerRegular, first_lower_regular_raw(ctx, *s),
                      "s = " + format_sig(*s, 10));
  }
  if (!ctx.has_bound_room()) {
    return no_bound_states(LimitName::FirstLowerRegular, ctx.sqrt_integral());
  }
  if (auto bad = unordered_pq(ctx, LimitName::FirstLowerRegular)) return *bad;

  std::vector<std::pair<double, std::string>> candidates;
  if (ctx.s().largest) candidates.emplace_back(*ctx.s().largest, "s root");
  if (pot.support_end()) candidates.emplace_back(*pot.support_end(), "s = support edge");
  candidates.emplace_back(*ctx.q(), "s = q");

  double best = -std::numeric_limits<double>::infinity();
  std::string how;
  for (const auto& [radius, label] : candidates) {
    double raw = first_lower_regular_raw(ctx, radius);
    if (raw > best) {
      best = raw;
      how = label + " = " + format_sig(radius, 10);
    }
  }
  return make_limit(LimitName::FirstLowerRegular, best, how);
}

LimitValue first_lower_regular_q(LimitContext& ctx) {
  const Potential& pot = ctx.potential();
  if (pot.origin_singular()) {
    return inapplicable(LimitName::FirstLowerRegularQ, "V is singular at the origin");
  }
  if (!ctx.has_bound_room()) {
    return no_bound_states(LimitName::FirstLowerRegularQ, ctx.sqrt_integral());
  }
  if (auto bad = unordered_pq(ctx, LimitName::FirstLowerRegularQ)) return *bad;
  const double q = *ctx.q();
  const double raw = ctx.sqrt_integral() / kPi -
                     std::log(abs_v(pot, 0.0) / abs_v(pot, q)) / (4.0 * kPi) - 1.0;
  return make_limit(LimitName::FirstLowerRegularQ, raw);
}

LimitValue first_lower_singular(LimitContext& ctx) {
  if (!ctx.has_bound_room()) {
    return no_bound_states(LimitName::FirstLowerSingular, ctx.sqrt_integral());
  }
  if (auto bad = unordered_pq(ctx, LimitName::FirstLowerSingular)) return *bad;
  const Potential& pot = ctx.potential();
  const double p = *ctx.p();
  const double q = *ctx.q();
  const double raw = ctx.sqrt_integral() / kPi -
                     std::log(abs_v(pot, p) / abs_v(pot, q)) / (4.0 * kPi) - 1.5;
  return make_limit(LimitName::FirstLowerSingular, raw);
}

LimitValue first_lower_tq(LimitContext& ctx) {
  if (!ctx.has_bound_room()) return no_bound_states(LimitName::FirstLowerTq, ctx.sqrt_integral());
  if (auto bad = unordered_pq(ctx, LimitName::FirstLowerTq)) return *bad;
  const auto t = ctx.t();
  if (!t) return inapplicable(LimitName::FirstLowerTq, "t = int_0^t r^2|V| has no root");
  const double q = *ctx.q();
  if (q < *t) return inapplicable(LimitName::FirstLowerTq, "q < t");
  const Potential& pot = ctx.potential();
  const double p = *ctx.p();
  const double raw = ctx.sqrt_between(*t, kInfinity) / kPi -
                     std::log(abs_v(pot, p) / abs_v(pot, q)) / (4.0 * kPi) - 0.5;
  return make_limit(LimitName::FirstLowerTq, raw, "t = " + format_sig(*t, 10));
}

LimitValue first_lower_ts(LimitContext& ctx, std::optional<double> s) {
  if (!ctx.has_bound_room()) return no_bound_states(LimitName::FirstLowerTs, ctx.sqrt_integral());
  if (auto bad = unordered_pq(ctx, LimitName::FirstLowerTs)) return *bad;
  const auto t = ctx.t();
  if (!t) return inapplicable(LimitName::FirstLowerTs, "t = int_0^t r^2|V| has no root");
  const Potential& pot = ctx.potential();
  const double p = *ctx.p();

  auto raw_at = [&](double radius) {
    return ctx.sqrt_between(*t, radius) / kPi -
           std::log(abs_v(pot, p) / abs_v(pot, radius)) / (4.0 * kPi);
  };

  if (s) {
    if (*s < *t) return inapplicable(LimitName::FirstLowerTs, "s < t");
    if (abs_v(pot, *s) == 0.0) return inapplicable(LimitName::FirstLowerTs, "V(s) = 0");
    return make_limit(LimitName::FirstLowerTs, raw_at(*s), "s = " + format_sig(*s, 10));
  }

  std::vector<double> candidates;
  if (ctx.s().largest && *ctx.s().largest >= *t) candidates.push_back(*ctx.s().largest);
  if (pot.support_end() && *pot.support_end() >= *t) candidates.push_back(*pot.support_end());
  if (!candidates.empty() && *ctx.q() >= *t) candidates.push_back(*ctx.q());
  if (candidates.empty()) {
    LimitValue fallback = first_lower_tq(ctx);
    fallback.name = LimitName::FirstLowerTs;
    if (fallback.applicable) fallback.reason = "no admissible s >= t; s = q form";
    return fallback;
  }
  double best = -std::numeric_limits<double>::infinity();
  double best_s = candidates.front();
  for (double c : candidates) {
    double raw = raw_at(c);
    if (raw > best) {
      best = raw;
      best_s = c;
    }
  }
  return make_limit(LimitName::FirstLowerTs, best,
                    "t = " + format_sig(*t, 10) + ", s = " + format_sig(best_s, 10));
}

SufficientConditions sufficient_one_state(LimitContext& ctx) {
  const Potential& pot = ctx.potential();
  const double tol = ctx.rel_tol();
  SufficientConditions out;

  try {
    const double rho = ctx.rho();
    const double v_rho = abs_v(pot, rho);
    out.rho_form = {true, false, rho * std::sqrt(v_rho), 3.0 * kPi / 4.0, rho, {}};
    out.rho_form.holds = out.rho_form.lhs > out.rho_form.rhs;

    // The split integral is stationary in a where a^-2 = |V(rho)|.
    const double a = 1.0 / std::sqrt(v_rho);
    const double lhs = integrate_radial(
        pot, [a](double, double v) { return std::min(1.0 / a, a * std::abs(v)); }, 0.0,
        kInfinity, tol, {rho});
    out.min_split = {true, lhs > 1.5 * kPi, lhs, 1.5 * kPi, a, {}};
  } catch (const NumericalError& e) {
    out.rho_form.reason = e.what();
    out.min_split.reason = e.what();
  }

  if (pot.origin_singular()) {
    out.origin_form.reason = "V is singular at the origin";
  } else {
    const double lhs = ctx.moment(Moment::AbsV);
    const double rhs = 1.5 * kPi * std::sqrt(abs_v(pot, 0.0));
    out.origin_form = {true, lhs > rhs, lhs, rhs, std::nullopt, {}};
  }

  try {
    const double a = solve_a_cohn(pot, tol);
    const double lhs = ctx.moment(Moment::R2AbsV, 0.0, a) / a + a * ctx.moment(Moment::AbsV, a);
    out.cohn = {true, lhs > 1.0, lhs, 1.0, a, {}};
  } catch (const NumericalError& e) {
    out.cohn.reason = e.what();
  }

  try {
    const double a = solve_a_calogero(pot, tol);
    const double a2 = a * a;
    const double lhs =
        a * integrate_radial(
                pot, [a2](double, double v) { return std::abs(v) / (1.0 + a2 * std::abs(v)); },
                0.0, kInfinity, tol);
    out.calogero = {true, lhs > 1.0, lhs, 1.0, a, {}};
  } catch (const NumericalError& e) {
    out.calogero.reason = e.what();
  }
  return out;
}

}  // namespace nbound
