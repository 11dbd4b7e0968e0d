#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nbound/potential.hpp"

namespace nbound {

// Closed-form values for the built-in shapes, computed from g (and alpha)
// without quadrature. They serve as oracles for the numeric pipeline.

enum class Quantity {
  ExactNu,
  FirstUpper,  ///< regular-form upper limit, or the singular form for H and Y
  FirstLower,  ///< the matching lower limit, as the right-hand side of N > x
  BS,
  CC,
  M,
  C,
  C0,
  LadderNuPlus,
  LadderNuMinus,
};

std::string_view to_string(Quantity q);

struct ClosedForm {
  Kind kind = Kind::SquareWell;
  Quantity quantity = Quantity::ExactNu;
  double value = 0.0;
  double g = 0.0;
  std::optional<double> alpha;
  std::map<std::string, double> params;  ///< auxiliary roots (x, y, lambda, ...)
};

/// nu with N = floor(nu). Hulthen returns g; Exponential returns the number
/// of zeros of J0 in (0, 2g]; STIS with g <= 1/2 returns 0.
double analytic_nu(Kind kind, double g, std::optional<double> alpha = std::nullopt);

/// floor(analytic_nu), the exact count.
long analytic_count(Kind kind, double g, std::optional<double> alpha = std::nullopt);

/// Throws InvalidInput when the pair has no closed form.
ClosedForm analytic_limit(Kind kind, Quantity quantity, double g,
                          std::optional<double> alpha = std::nullopt);

bool has_closed_form(Kind kind, Quantity quantity);

/// Large-g expansions of the closed forms (PT, H, Y first-type limits; PT and
/// STIS nu). Throws InvalidInput for other pairs.
double asymptotic_limit(Kind kind, Quantity quantity, double g,
                        std::optional<double> alpha = std::nullopt);

/// Roots used by the Yukawa first-type forms: erf(y) = a, erf(x) = 1 - a with
/// a = (pi/8)^(1/2) / g.
struct ErfRoots {
  double a;
  double x;
  double y;
};
ErfRoots yukawa_erf_roots(double g);

/// One row of the published STIS comparison table.
struct Table1Row {
  double alpha;
  double g;
  long n;
  long nu_lo;
  long nu_up;
  long nu_minus;
  long nu_plus;
  long bs;
  bool bs_exceeds;  ///< printed as ">10^5"
  long cc;
  long m;
  long c;
  long c0;
};

const std::array<Table1Row, 9>& published_table1();

}  // namespace nbound
