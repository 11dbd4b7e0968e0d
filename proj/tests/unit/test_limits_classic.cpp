#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nbound/exact_counter.hpp"
#include "nbound/limits.hpp"
#include "nbound/potential.hpp"
#include "oracle.hpp"

using namespace nbound;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

template <class F>
LimitValue eval_limit(const Potential& pot, F f) {
  LimitContext ctx(pot);
  return f(ctx);
}

Potential stis(double alpha, double g) { return Potential::builtin(Kind::Stis, g, 1.0, alpha); }

const Kind kBuiltins[] = {Kind::SquareWell, Kind::PoschlTeller, Kind::Exponential,
                          Kind::Hulthen,    Kind::Yukawa,       Kind::Stis};

Potential builtin(Kind k, double g, double R = 1.0) {
  return k == Kind::Stis ? Potential::builtin(k, g, R, 10.0) : Potential::builtin(k, g, R);
}
}  // namespace

TEST_CASE("integerization") {
  auto up = make_limit(LimitName::CC, 4.7);
  CHECK(up.bound == 4);
  CHECK(up.direction == Direction::Upper);
  auto lo = make_limit(LimitName::C, 1.36);
  CHECK(lo.bound == 2);
  CHECK(lo.direction == Direction::Lower);
  CHECK(make_limit(LimitName::C, -0.4).bound == 0);

  auto tie = make_limit(LimitName::CC, 5.0 - 1e-12);
  CHECK(tie.bound == 5);
  CHECK(tie.boundary_case);
  auto tie_lo = make_limit(LimitName::C, 3.0 + 1e-12);
  CHECK(tie_lo.bound == 3);
  CHECK(tie_lo.boundary_case);
  CHECK_FALSE(make_limit(LimitName::C, 3.0 + 1e-6).boundary_case);

  CHECK_FALSE(make_limit(LimitName::BS, std::nan("")).applicable);
}

TEST_CASE("Bargmann-Schwinger") {
  CHECK_THAT(eval_limit(Potential::builtin(Kind::SquareWell, 10.0), bs_upper).raw,
             WithinRel(50.0, 1e-10));
  CHECK_THAT(eval_limit(Potential::builtin(Kind::Hulthen, 2.5), bs_upper).raw,
             WithinRel(pi * pi / 6.0 * 6.25, 1e-10));
  // int_0^1 g^2 r/(1+r)^2 = g^2 (ln 2 - 1/2).
  auto bs = eval_limit(stis(1, 10), bs_upper);
  CHECK_THAT(bs.raw, WithinRel(100.0 * (std::log(2.0) - 0.5), 1e-10));
  CHECK(bs.bound == 19);
}

TEST_CASE("Calogero-Cohn") {
  CHECK_THAT(eval_limit(Potential::builtin(Kind::PoschlTeller, 7.0), cc_upper).raw,
             WithinRel(7.0, 1e-10));
  CHECK(eval_limit(stis(1, 10), cc_upper).bound == 4);
  CHECK_THAT(eval_limit(Potential::builtin(Kind::SquareWell, 10.0), cc_upper).raw,
             WithinRel(20.0 / pi, 1e-10));
}

TEST_CASE("Martin") {
  CHECK_THAT(eval_limit(Potential::builtin(Kind::SquareWell, 10.0), martin_upper).raw,
             WithinRel(10.0 / std::pow(3.0, 0.25), 1e-10));
  CHECK_THAT(eval_limit(Potential::builtin(Kind::Exponential, 10.0), martin_upper).raw,
             WithinRel(std::pow(2.0, 0.25) * 10.0, 1e-10));
  CHECK(eval_limit(stis(100, 10), martin_upper).bound == 30);
  CHECK_FALSE(eval_limit(Potential::builtin(Kind::Hulthen, 3.0), martin_upper).applicable);
  CHECK_FALSE(eval_limit(Potential::builtin(Kind::Yukawa, 3.0), martin_upper).applicable);
}

TEST_CASE("Calogero lower limits") {
  const auto sw = Potential::builtin(Kind::SquareWell, 10.0);
  CHECK_THAT(eval_limit(sw, c_lower).raw, WithinRel(10.0 / pi - 0.5, 1e-9));
  CHECK_THAT(eval_limit(sw, c0_lower).raw, WithinRel(10.0 / pi - 0.5, 1e-10));

  CHECK(eval_limit(stis(1, 10), c_lower).bound == 2);
  auto c = eval_limit(stis(100, 10), c_lower);
  CHECK_THAT(c.raw, WithinRel(2.0 / pi * 10.0 * (1.0 - 1.0 / std::sqrt(101.0)) - 0.5, 1e-9));
  CHECK_THAT(c.raw, WithinRel(5.233, 1e-3));
  CHECK(c.bound == 6);

  for (double g : {3.0, 10.0}) {
    CHECK_THAT(eval_limit(Potential::builtin(Kind::PoschlTeller, g), c0_lower).raw,
               WithinRel(g / pi - 0.5, 1e-10));
    const double x =
        oracle::bisect([](double x) { return 2 * x - 1 - std::exp(-2 * x); }, 0.1, 2.0);
    CHECK_THAT(eval_limit(Potential::builtin(Kind::PoschlTeller, g), c_lower).raw,
               WithinRel(2.0 / pi * std::exp(-x) * g - 0.5, 1e-9));
    CHECK_THAT(eval_limit(Potential::builtin(Kind::Exponential, g), c_lower).raw,
               WithinRel(2.0 / (pi * std::sqrt(std::exp(1.0))) * g - 0.5, 1e-9));
  }
  CHECK_FALSE(eval_limit(Potential::builtin(Kind::Hulthen, 3.0), c0_lower).applicable);
}

TEST_CASE("classic sandwich on a coupling grid") {
  for (Kind k : kBuiltins) {
    for (double g : {0.8, 1.7, 3.0, 6.0, 15.0, 40.0}) {
      const auto pot = builtin(k, g);
      INFO(pot.describe());
      const long n = count_nodes(pot).n;
      LimitContext ctx(pot);
      for (auto f : {bs_upper, cc_upper, martin_upper}) {
        auto l = f(ctx);
        if (l.applicable) CHECK(n <= l.bound);
      }
      for (auto f : {c_lower, c0_lower}) {
        auto l = f(ctx);
        if (l.applicable) CHECK(l.bound <= n);
      }
    }
  }
}

TEST_CASE("coupling scaling of BS and CC") {
  for (Kind k : kBuiltins) {
    const auto a = builtin(k, 2.0);
    const auto b = builtin(k, 8.0);
    CHECK_THAT(eval_limit(b, cc_upper).raw, WithinRel(4.0 * eval_limit(a, cc_upper).raw, 1e-10));
    CHECK_THAT(eval_limit(b, bs_upper).raw, WithinRel(16.0 * eval_limit(a, bs_upper).raw, 1e-10));
  }
}

TEST_CASE("range invariance of dimensionless limits") {
  for (Kind k : kBuiltins) {
    for (double lambda : {0.1, 7.0}) {
      const auto a = builtin(k, 6.0);
      const auto b = builtin(k, 6.0, lambda);
      INFO(b.describe());
      CHECK(count_nodes(a).n == count_nodes(b).n);
      for (auto f : {bs_upper, cc_upper, martin_upper, c_lower, c0_lower}) {
        const auto la = eval_limit(a, f);
        const auto lb = eval_limit(b, f);
        CHECK(la.applicable == lb.applicable);
        if (la.applicable) {
          CHECK_THAT(lb.raw, WithinRel(la.raw, 1e-8));
          CHECK(la.bound == lb.bound);
        }
      }
    }
  }
}

TEST_CASE("one-state sufficient conditions") {
  SECTION("square well rho form") {
    LimitContext five(Potential::builtin(Kind::SquareWell, 5.0));
    const auto s5 = sufficient_one_state(five);
    CHECK(s5.rho_form.evaluated);
    CHECK_THAT(s5.rho_form.lhs, WithinRel(2.5, 1e-9));
    CHECK(s5.rho_form.holds);

    const auto four_pot = Potential::builtin(Kind::SquareWell, 4.0);
    LimitContext four(four_pot);
    const auto s4 = sufficient_one_state(four);
    CHECK_THAT(s4.rho_form.lhs, WithinRel(2.0, 1e-9));
    CHECK_FALSE(s4.rho_form.holds);
    CHECK(count_nodes(four_pot).n >= 1);
  }
  SECTION("weak potentials satisfy none") {
    for (Kind k : kBuiltins) {
      LimitContext ctx(builtin(k, 0.01));
      CHECK_FALSE(sufficient_one_state(ctx).any());
    }
  }
  SECTION("any condition implies a bound state") {
    for (Kind k : kBuiltins) {
      for (double g : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
        const auto pot = builtin(k, g);
        LimitContext ctx(pot);
        const auto s = sufficient_one_state(ctx);
        INFO(pot.describe());
        if (s.any()) CHECK(count_nodes(pot).n >= 1);
      }
    }
  }
}
