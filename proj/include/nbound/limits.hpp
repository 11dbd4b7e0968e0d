#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbound/potential.hpp"
#include "nbound/quadrature.hpp"
#include "nbound/rootfind.hpp"

namespace nbound {

enum class LimitName {
  BS,
  CC,
  Martin,
  C,
  C0,
  FirstUpper,
  FirstUpperRegular,
  FirstLowerRegular,
  FirstLowerRegularQ,
  FirstLowerSingular,
  FirstLowerTs,
  FirstLowerTq,
  LadderUp,
  LadderDown,
};

/// Every limit, in report order.
inline constexpr LimitName kAllLimits[] = {
    LimitName::BS,
    LimitName::CC,
    LimitName::Martin,
    LimitName::C,
    LimitName::C0,
    LimitName::FirstUpper,
    LimitName::FirstUpperRegular,
    LimitName::FirstLowerRegular,
    LimitName::FirstLowerRegularQ,
    LimitName::FirstLowerSingular,
    LimitName::FirstLowerTs,
    LimitName::FirstLowerTq,
    LimitName::LadderUp,
    LimitName::LadderDown,
};

enum class Direction { Upper, Lower };

std::string_view to_string(LimitName name);
Direction direction_of(LimitName name);

/// Integers closer than this to a raw limit are treated as ties.
inline constexpr double kBoundaryEps = 1e-9;

struct LimitValue {
  LimitName name = LimitName::BS;
  Direction direction = Direction::Upper;
  double raw = 0.0;
  long bound = 0;
  bool applicable = false;
  bool boundary_case = false;  ///< raw within kBoundaryEps of an integer
  std::string reason;          ///< why inapplicable, or how it was evaluated
};

/// floor for upper limits, ceiling for lower ones (clamped at zero). Ties
/// within kBoundaryEps round to the nearest integer and set boundary_case.
LimitValue make_limit(LimitName name, double raw, std::string reason = {});
LimitValue inapplicable(LimitName name, std::string reason);

/// Lazily computed quantities shared by the limit formulas for one potential.
/// Not thread-safe; build one per potential.
class LimitContext {
 public:
  explicit LimitContext(const Potential& pot, double rel_tol = kDefaultRelTol);

  const Potential& potential() const { return pot_; }
  double rel_tol() const { return rel_tol_; }

  /// int_0^inf |V|^(1/2) dr.
  double sqrt_integral();
  /// False when sqrt_integral() < pi/2: no bound states and p, q undefined.
  bool has_bound_room();

  std::optional<double> p();
  std::optional<double> q();
  /// Throws NumericalError when the rho equation has no root.
  double rho();
  const std::vector<double>& rho_roots();
  const SRoots& s();
  std::optional<double> t();

  double sqrt_between(double a, double b);
  double moment(Moment m, double a = 0.0, double b = kInfinity);

  AuxiliaryRadii radii();

 private:
  Potential pot_;
  double rel_tol_;
  std::optional<double> sqrt_total_;
  std::optional<std::optional<double>> p_, q_, t_;
  std::optional<double> rho_;
  std::vector<double> rho_roots_;
  std::optional<SRoots> s_;
};

// Previously known limits.
LimitValue bs_upper(LimitContext& ctx);
LimitValue cc_upper(LimitContext& ctx);
LimitValue martin_upper(LimitContext& ctx);
LimitValue c_lower(LimitContext& ctx);
LimitValue c0_lower(LimitContext& ctx);

// First-type limits built from p, q, s, t.
LimitValue first_upper(LimitContext& ctx);
LimitValue first_upper_regular(LimitContext& ctx);
/// `s` defaults to the best of the largest V'(s) = 4|V(s)|^(3/2) root, the
/// support edge and q.
LimitValue first_lower_regular(LimitContext& ctx, std::optional<double> s = std::nullopt);
LimitValue first_lower_regular_q(LimitContext& ctx);
LimitValue first_lower_singular(LimitContext& ctx);
/// `s` defaults to the best admissible s >= t; falls back to the s = q form.
LimitValue first_lower_ts(LimitContext& ctx, std::optional<double> s = std::nullopt);
LimitValue first_lower_tq(LimitContext& ctx);

/// Raw value of the s-dependent regular lower limit, for scans over s.
double first_lower_regular_raw(LimitContext& ctx, double s);

struct SufficientCheck {
  bool evaluated = false;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> parameter;  ///< the optimal a (or rho)
  std::string reason;
};

/// Conditions each guaranteeing at least one bound state, each evaluated at
/// its optimal free parameter.
struct SufficientConditions {
  SufficientCheck min_split;     ///< int min(1/a, a|V|) > 3 pi/2
  SufficientCheck rho_form;      ///< rho |V(rho)|^(1/2) > 3 pi/4
  SufficientCheck origin_form;   ///< int |V| > (3 pi/2) |V(0)|^(1/2)
  SufficientCheck cohn;          ///< a^-1 int_0^a r^2|V| + a int_a^inf |V| > 1
  SufficientCheck calogero;      ///< a int |V| / (1 + a^2|V|) > 1

  bool any() const {
    return min_split.holds || rho_form.holds || origin_form.holds || cohn.holds ||
           calogero.holds;
  }
};

SufficientConditions sufficient_one_state(LimitContext& ctx);

}  // namespace nbound
