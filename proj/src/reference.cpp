#include "nbound/reference.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/tools/roots.hpp>

#include "nbound/error.hpp"

namespace nbound {
namespace {

constexpr double kPi = std::numbers::pi;

double require_alpha(std::optional<double> alpha) {
  if (!alpha || !(*alpha > 0.0)) throw InvalidInput("STIS closed forms need alpha > 0");
  return *alpha;
}

double bracket_root(const std::function<double(double)>& f, double lo, double hi) {
  boost::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

// 2x = 1 + exp(-2x)
double pt_c_root() {
  return bracket_root([](double x) { return 2.0 * x - 1.0 - std::exp(-2.0 * x); }, 0.0, 2.0);
}

// exp(-x) = E1(x)
double yukawa_c_root() {
  return bracket_root([](double x) { return std::exp(-x) - boost::math::expint(1, x); }, 0.01,
                      5.0);
}

long bessel_j0_zero_count(double upto) {
  long k = 0;
  while (boost::math::cyl_bessel_j_zero(0.0, static_cast<int>(k + 1)) <= upto) ++k;
  return k;
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::ExactNu: return "nu";
    case Quantity::FirstUpper: return "first_upper";
    case Quantity::FirstLower: return "first_lower";
    case Quantity::BS: return "BS";
    case Quantity::CC: return "CC";
    case Quantity::M: return "M";
    case Quantity::C: return "C";
    case Quantity::C0: return "C0";
    case Quantity::LadderNuPlus: return "ladder_nu_plus";
    case Quantity::LadderNuMinus: return "ladder_nu_minus";
  }
  return "?";
}

ErfRoots yukawa_erf_roots(double g) {
  const double a = std::sqrt(kPi / 8.0) / g;
  if (!(a < 0.5)) throw InvalidInput("Yukawa erf roots need g > (pi/2)^(1/2) / 2");
  return {a, boost::math::erf_inv(1.0 - a), boost::math::erf_inv(a)};
}

double analytic_nu(Kind kind, double g, std::optional<double> alpha) {
  if (!(g > 0.0)) throw InvalidInput("g must be positive");
  switch (kind) {
    case Kind::SquareWell: return g / kPi + 0.5;
    case Kind::PoschlTeller: return (std::sqrt(1.0 + 4.0 * g * g) + 1.0) / 4.0;
    case Kind::Hulthen: return g;
    case Kind::Exponential: return static_cast<double>(bessel_j0_zero_count(2.0 * g));
    case Kind::Stis: {
      const double al = require_alpha(alpha);
      if (g <= 0.5) return 0.0;
      const double lambda = std::sqrt(4.0 * g * g - 1.0);
      return (lambda * std::log1p(al) + 2.0 * std::atan(lambda)) / (2.0 * kPi);
    }
    default:
      throw InvalidInput("no closed-form count for " + std::string(to_string(kind)));
  }
}

long analytic_count(Kind kind, double g, std::optional<double> alpha) {
  return static_cast<long>(std::floor(analytic_nu(kind, g, alpha)));
}

bool has_closed_form(Kind kind, Quantity quantity) {
  switch (kind) {
    case Kind::SquareWell:
    case Kind::Stis:
      return true;
    case Kind::PoschlTeller:
    case Kind::Exponential:
      return quantity != Quantity::LadderNuPlus && quantity != Quantity::LadderNuMinus;
    case Kind::Hulthen:
    case Kind::Yukawa:
      return quantity == Quantity::FirstUpper || quantity == Quantity::FirstLower ||
             quantity == Quantity::BS || quantity == Quantity::CC || quantity == Quantity::C ||
             (kind == Kind::Hulthen && quantity == Quantity::ExactNu);
    default:
      return false;
  }
}

ClosedForm analytic_limit(Kind kind, Quantity quantity, double g, std::optional<double> alpha) {
  if (!has_closed_form(kind, quantity)) {
    throw InvalidInput("no closed form for " + std::string(to_string(quantity)) + " of " +
                       std::string(to_string(kind)));
  }
  if (!(g > 0.0)) throw InvalidInput("g must be positive");
  ClosedForm out;
  out.kind = kind;
  out.quantity = quantity;
  out.g = g;
  out.alpha = alpha;
  if (quantity == Quantity::ExactNu) {
    out.value = analytic_nu(kind, g, alpha);
    return out;
  }

  double& v = out.value;
  switch (kind) {
    case Kind::SquareWell: {
      const double nu = g / kPi + 0.5;
      // Constant steps pi/(2g) against q = 1 - pi/(2g), in units of R.
      const double rungs = std::ceil(2.0 * g / kPi - 1.0);
      switch (quantity) {
        case Quantity::FirstUpper: v = nu; break;
        case Quantity::FirstLower: v = nu - 1.5; break;
        case Quantity::BS: v = g * g / 2.0; break;
        case Quantity::CC: v = 2.0 * g / kPi; break;
        case Quantity::M: v = g * std::pow(3.0, -0.25); break;
        case Quantity::C:
        case Quantity::C0: v = nu - 1.0; break;
        case Quantity::LadderNuPlus: v = std::floor(rungs / 2.0) + 1.0; break;
        case Quantity::LadderNuMinus: v = std::floor((rungs - 1.0) / 2.0); break;
        default: break;
      }
      break;
    }
    case Kind::PoschlTeller: {
      const double ls = std::log(std::sin(kPi / (2.0 * g)));
      switch (quantity) {
        case Quantity::FirstUpper: v = g / 2.0 - ls / (2.0 * kPi) + 0.5; break;
        case Quantity::FirstLower: v = g / 2.0 + ls / (2.0 * kPi) - 1.0; break;
        case Quantity::BS: v = std::log(2.0) * g * g; break;
        case Quantity::CC: v = g; break;
        case Quantity::M: v = std::pow(kPi * kPi / 12.0, 0.25) * g; break;
        case Quantity::C: {
          const double x = pt_c_root();
          out.params["x"] = x;
          v = 2.0 / kPi * std::exp(-x) * g - 0.5;
          break;
        }
        case Quantity::C0: v = g / kPi - 0.5; break;
        default: break;
      }
      break;
    }
    case Kind::Exponential: {
      const double lg = std::log(4.0 * g / kPi);
      switch (quantity) {
        case Quantity::FirstUpper: v = 2.0 / kPi * g + lg / (2.0 * kPi) + 0.5; break;
        case Quantity::FirstLower: v = 2.0 / kPi * g - lg / (2.0 * kPi) - 1.0; break;
        case Quantity::BS: v = g * g; break;
        case Quantity::CC: v = 4.0 / kPi * g; break;
        case Quantity::M: v = std::pow(2.0, 0.25) * g; break;
        case Quantity::C: v = 2.0 / (kPi * std::sqrt(std::exp(1.0))) * g - 0.5; break;
        case Quantity::C0: v = g / kPi - 0.5; break;
        default: break;
      }
      break;
    }
    case Kind::Hulthen: {
      const double lt = std::log(std::tan(kPi / (4.0 * g)));
      switch (quantity) {
        case Quantity::FirstUpper: v = g - lt / kPi + 0.5; break;
        case Quantity::FirstLower: v = g + lt / kPi - 1.5; break;
        case Quantity::BS: v = kPi * kPi / 6.0 * g * g; break;
        case Quantity::CC: v = 2.0 * g; break;
        case Quantity::C: v = 2.0 / kPi * std::log(2.0) * g - 0.5; break;
        default: break;
      }
      break;
    }
    case Kind::Yukawa: {
      switch (quantity) {
        case Quantity::FirstUpper:
        case Quantity::FirstLower: {
          const ErfRoots er = yukawa_erf_roots(g);
          out.params["a"] = er.a;
          out.params["x"] = er.x;
          out.params["y"] = er.y;
          const double corr =
              (er.x * er.x - er.y * er.y) / (2.0 * kPi) + std::log(er.x / er.y) / (2.0 * kPi);
          const double lead = std::sqrt(2.0 / kPi) * g;
          v = quantity == Quantity::FirstUpper ? lead + corr + 0.5 : lead - corr - 1.5;
          break;
        }
        case Quantity::BS: v = g * g; break;
        case Quantity::CC: v = 2.0 * std::sqrt(2.0 / kPi) * g; break;
        case Quantity::C: {
          const double x = yukawa_c_root();
          out.params["x"] = x;
          v = 2.0 / kPi * std::sqrt(x) * std::exp(-x / 2.0) * g - 0.5;
          break;
        }
        default: break;
      }
      break;
    }
    case Kind::Stis: {
      const double al = require_alpha(alpha);
      const double l1a = std::log1p(al);
      switch (quantity) {
        case Quantity::FirstUpper: v = (g + 0.5) * l1a / kPi - 1.0 / (4.0 * g) + 0.5; break;
        case Quantity::FirstLower: {
          const double nu_lo = (g - 0.5) * l1a / kPi + 1.0 / (4.0 * g);
          out.params["nu_lo"] = nu_lo;
          v = nu_lo - 1.0;
          break;
        }
        case Quantity::BS: v = g * g * (l1a - al / (1.0 + al)); break;
        case Quantity::CC: v = 2.0 / kPi * g * l1a; break;
        case Quantity::M:
          v = g * std::pow((al - 2.0 * l1a + al / (1.0 + al)) * al / (1.0 + al), 0.25);
          break;
        case Quantity::C: v = 2.0 / kPi * g * (1.0 - 1.0 / std::sqrt(1.0 + al)) - 0.5; break;
        case Quantity::C0: v = g / kPi * al / (1.0 + al) - 0.5; break;
        case Quantity::LadderNuPlus:
        case Quantity::LadderNuMinus: {
          const double sign = quantity == Quantity::LadderNuPlus ? 1.0 : -1.0;
          const double x = 1.0 + sign * kPi / (2.0 * g);
          if (!(x > 0.0)) throw InvalidInput("STIS ladder closed form needs g > pi/2");
          const double gs = sign * (kPi / 2.0) / std::log(x);
          const double big_x = 2.0 / kPi * gs * l1a - gs / g;
          out.params["g_pm"] = gs;
          out.params["X"] = big_x;
          v = std::floor(big_x) / 2.0 + (3.0 + sign * 3.0) / 4.0;
          break;
        }
        default: break;
      }
      break;
    }
    default: break;
  }
  return out;
}

double asymptotic_limit(Kind kind, Quantity quantity, double g, std::optional<double> alpha) {
  if (kind == Kind::PoschlTeller) {
    const double corr = std::pow(kPi / (2.0 * g), 2) / (12.0 * kPi);
    const double lg = std::log(2.0 * g / kPi) / (2.0 * kPi);
    if (quantity == Quantity::FirstUpper) return g / 2.0 + lg + 0.5 + corr;
    if (quantity == Quantity::FirstLower) return g / 2.0 - lg - 1.0 - corr;
    if (quantity == Quantity::ExactNu) return g / 2.0 + 0.25 + 1.0 / (16.0 * g);
  }
  if (kind == Kind::Hulthen) {
    const double lg = std::log(kPi / (4.0 * g)) / kPi;
    const double corr = kPi / (48.0 * g * g);
    if (quantity == Quantity::FirstUpper) return g - lg + 0.5 - corr;
    if (quantity == Quantity::FirstLower) return g + lg - 1.5 + corr;
  }
  if (kind == Kind::Yukawa) {
    const double lead = std::sqrt(2.0 / kPi) * g;
    if (quantity == Quantity::FirstUpper) return lead + std::log(g) / kPi;
    if (quantity == Quantity::FirstLower) return lead - std::log(g) / kPi;
  }
  if (kind == Kind::Stis && quantity == Quantity::ExactNu) {
    const double l1a = std::log1p(require_alpha(alpha));
    return (g - 1.0 / (8.0 * g)) * l1a / kPi - 1.0 / (2.0 * kPi * g) + 0.5;
  }
  throw InvalidInput("no large-g expansion for " + std::string(to_string(quantity)) + " of " +
                     std::string(to_string(kind)));
}

const std::array<Table1Row, 9>& published_table1() {
  static const std::array<Table1Row, 9> rows{{
      {1, 10, 2, 2, 2, 2, 4, 19, false, 4, 4, 2, 2},
      {1, 100, 22, 21, 22, 22, 24, 1931, false, 44, 48, 19, 16},
      {1, 1000, 221, 220, 221, 220, 222, 100000, true, 441, 488, 186, 159},
      {100, 10, 15, 13, 15, 13, 17, 362, false, 29, 30, 6, 3},
      {100, 100, 147, 146, 148, 146, 150, 36250, false, 293, 308, 57, 32},
      {1e4, 10, 29, 27, 31, 27, 33, 821, false, 58, 99, 6, 3},
      {1e4, 100, 293, 291, 295, 291, 297, 82105, false, 586, 999, 63, 32},
      {1e6, 10, 44, 41, 46, 40, 49, 1281, false, 87, 316, 6, 3},
      {1e6, 100, 440, 437, 442, 436, 445, 100000, true, 879, 3162, 64, 32},
  }};
  return rows;
}

}  // namespace nbound
