#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "nbound/exact_counter.hpp"
#include "nbound/ladder.hpp"
#include "nbound/limits.hpp"
#include "nbound/potential.hpp"
#include "nbound/quadrature.hpp"

using namespace nbound;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

Potential builtin(Kind k, double g) {
  return k == Kind::Stis ? Potential::builtin(k, g, 1.0, 10.0) : Potential::builtin(k, g);
}

const Kind kBuiltins[] = {Kind::SquareWell, Kind::PoschlTeller, Kind::Exponential,
                          Kind::Hulthen,    Kind::Yukawa,       Kind::Stis};
}  // namespace

TEST_CASE("square well ladders by hand") {
  const auto sw = Potential::builtin(Kind::SquareWell, 10.0);
  const double q = 1.0 - pi / 20.0;

  const auto up = ladder_upper(sw);
  CHECK_THAT(up.trace.q, WithinRel(q, 1e-9));
  REQUIRE(up.trace.radii.size() == 7);
  for (std::size_t j = 0; j < up.trace.radii.size(); ++j) {
    CHECK_THAT(up.trace.radii[j], WithinAbs(j * pi / 20.0, 1e-12));
  }
  CHECK(up.trace.J == 5);
  CHECK(up.limit.bound == 4);

  const auto down = ladder_lower(sw);
  CHECK(down.trace.J == 5);
  CHECK_THAT(down.trace.radii[5], WithinAbs(q - 5 * pi / 20.0, 1e-9));
  CHECK(down.trace.radii[5] > 0.0);
  CHECK(down.trace.radii[6] < 0.0);
  CHECK(down.limit.bound == 2);
  CHECK(count_nodes(sw).n == 3);
}

TEST_CASE("STIS up ladder is geometric") {
  for (double g : {10.0, 100.0}) {
    const auto pot = Potential::builtin(Kind::Stis, g, 1.0, 1.0);
    const auto up = ladder_upper(pot);
    const double ratio = 1.0 + pi / (2.0 * g);
    for (std::size_t j = 0; j + 1 < up.trace.radii.size(); ++j) {
      CHECK_THAT(1.0 + up.trace.radii[j + 1],
                 WithinRel((1.0 + up.trace.radii[j]) * ratio, 1e-13));
    }
    // First k with ratio^k >= 1 + q gives J = k - 1.
    long k = 0;
    while (std::pow(ratio, double(k)) < 1.0 + up.trace.q) ++k;
    CHECK(up.trace.J == k - 1);
  }
  const auto up100 = ladder_upper(Potential::builtin(Kind::Stis, 100.0, 1.0, 1.0));
  CHECK(std::labs(up100.limit.bound - 24) <= 1);
}

TEST_CASE("trace structure") {
  for (Kind k : kBuiltins) {
    for (double g : {3.0, 20.0}) {
      const auto pot = builtin(k, g);
      INFO(pot.describe());
      LimitContext ctx(pot);
      const auto down = ladder_lower(ctx);
      const auto& dr = down.trace.radii;
      for (std::size_t j = 0; j + 1 < dr.size(); ++j) {
        CHECK(dr[j + 1] < dr[j]);
        CHECK(down.trace.steps[j] > 0.0);
        CHECK(std::isfinite(down.trace.steps[j]));
        CHECK_THAT(down.trace.steps[j],
                   WithinRel(pi / 2.0 / std::sqrt(std::abs(pot.eval(dr[j]))), 1e-14));
      }
      if (pot.origin_singular()) {
        CHECK_FALSE(ladder_upper(ctx).limit.applicable);
        continue;
      }
      const auto up = ladder_upper(ctx);
      const auto& ur = up.trace.radii;
      CHECK(ur.front() == 0.0);
      for (std::size_t j = 0; j + 1 < ur.size(); ++j) {
        CHECK(ur[j + 1] > ur[j]);
        CHECK_THAT(ur[j + 1] - ur[j],
                   WithinRel(pi / 2.0 / std::sqrt(std::abs(pot.eval(ur[j]))), 1e-12));
      }
      const double budget = 4.0 * (2.0 / pi) * integrate(pot, {Moment::SqrtAbsV, 0.0, up.trace.q}) + 8.0;
      CHECK(static_cast<double>(up.trace.steps.size()) <= budget);
    }
  }
}

TEST_CASE("ladder sandwich on a coupling grid") {
  for (Kind k : kBuiltins) {
    for (double g : {1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
      const auto pot = builtin(k, g);
      INFO(pot.describe());
      LimitContext ctx(pot);
      const long n = count_nodes(pot).n;
      const auto up = ladder_upper(ctx);
      const auto down = ladder_lower(ctx);
      if (up.limit.applicable) CHECK(n <= up.limit.bound);
      if (down.limit.applicable) CHECK(down.limit.bound <= n);
    }
  }
}

TEST_CASE("minorant and majorant bracket the potential") {
  for (Kind k : {Kind::SquareWell, Kind::PoschlTeller, Kind::Stis, Kind::Exponential}) {
    const auto pot = builtin(k, 10.0);
    INFO(pot.describe());
    const auto up = ladder_upper(pot);
    const auto down = ladder_lower(pot);
    const double q = up.trace.q;
    const int n = 1000;
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      const double r = q * (i + 0.5) / n;
      const double v = pot.eval(r);
      const double slack = 1e-12 * std::abs(v);
      if (ladder_minorant(pot, up.trace, r) > v + slack) ++bad;
      if (v > ladder_majorant(pot, down.trace, r) + slack) ++bad;
    }
    CHECK(bad == 0);
  }
}
