#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "nbound/error.hpp"
#include "nbound/potential.hpp"

using namespace nbound;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

std::vector<Potential> all_builtins(double g, double R = 1.0) {
  return {
      Potential::builtin(Kind::SquareWell, g, R),
      Potential::builtin(Kind::PoschlTeller, g, R),
      Potential::builtin(Kind::Exponential, g, R),
      Potential::builtin(Kind::Hulthen, g, R),
      Potential::builtin(Kind::Yukawa, g, R),
      Potential::builtin(Kind::Stis, g, R, 1.0),
      Potential::builtin(Kind::Stis, g, R, 100.0),
  };
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return r;
}

}  // namespace

TEST_CASE("built-in values at sample radii") {
  const auto sw = Potential::builtin(Kind::SquareWell, 10.0);
  CHECK(sw.eval(0.5) == -100.0);
  CHECK(sw.eval(1.5) == 0.0);
  CHECK(sw.support_end() == 1.0);

  CHECK(Potential::builtin(Kind::Hulthen, 2.5).origin_singular());
  CHECK_FALSE(Potential::builtin(Kind::Exponential, 2.5).origin_singular());

  const auto stis = Potential::builtin(Kind::Stis, 10.0, 1.0, 1.0);
  CHECK(stis.eval(0.0) == Approx(-100.0));
  CHECK(stis.eval(1.0) == Approx(-25.0));
  CHECK(stis.eval(1.0 + 1e-12) == 0.0);
  CHECK(stis.support_end() == 1.0);

  CHECK(Potential::builtin(Kind::PoschlTeller, 10.0).eval(0.0) == Approx(-100.0));
  CHECK(Potential::builtin(Kind::Exponential, 10.0).eval(0.0) == Approx(-100.0));
  CHECK_THAT(Potential::builtin(Kind::Yukawa, 2.0).eval(2.0),
             WithinRel(-2.0 * std::exp(-2.0), 1e-12));
}

TEST_CASE("hand-differentiated derivatives") {
  CHECK(Potential::builtin(Kind::SquareWell, 10.0).deriv(0.3) == 0.0);
  CHECK_THAT(Potential::builtin(Kind::Exponential, 10.0).deriv(1.0),
             WithinRel(100.0 * std::exp(-1.0), 1e-12));
  const double e = std::numbers::e;
  CHECK_THAT(Potential::builtin(Kind::Hulthen, 1.0).deriv(1.0),
             WithinRel(e / ((e - 1.0) * (e - 1.0)), 1e-12));
  CHECK_THROWS_AS(Potential::builtin(Kind::SquareWell, 10.0).deriv(1.0), InvalidInput);
}

TEST_CASE("sign and monotonicity on a dense grid") {
  for (const auto& pot : all_builtins(7.0)) {
    INFO(pot.describe());
    for (double r : log_grid(1e-6, 200.0, 1200)) {
      CHECK(pot.eval(r) <= 0.0);
      if (!pot.is_jump(r)) CHECK(pot.deriv(r) >= 0.0);
    }
  }
}

TEST_CASE("derivative agrees with a central difference") {
  for (const auto& pot : all_builtins(3.0)) {
    INFO(pot.describe());
    for (double r : log_grid(1e-3, 30.0, 200)) {
      const double h = 1e-3 * r;
      if (pot.support_end() && r > *pot.support_end() - 3 * h) continue;
      const double fd = (8.0 * (pot.eval(r + h) - pot.eval(r - h)) -
                         (pot.eval(r + 2 * h) - pot.eval(r - 2 * h))) /
                        (12.0 * h);
      const double d = pot.deriv(r);
      if (std::abs(d) < 1e-200) continue;
      CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d) + 1e-14);
    }
  }
}

TEST_CASE("coupling and range scaling") {
  for (const auto& pot : all_builtins(4.0)) {
    const auto twice = pot.with_coupling(8.0);
    for (double r : {0.01, 0.3, 0.9, 2.0}) {
      CHECK(twice.eval(r) == Approx(4.0 * pot.eval(r)).epsilon(1e-14));
    }
  }
  // V_R(r) = V_1(r/R) / R^2.
  const auto a = Potential::builtin(Kind::PoschlTeller, 5.0, 1.0);
  const auto b = Potential::builtin(Kind::PoschlTeller, 5.0, 3.0);
  for (double r : {0.1, 1.0, 4.0}) CHECK(b.eval(3.0 * r) == Approx(a.eval(r) / 9.0));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Potential::builtin(Kind::SquareWell, -1.0), InvalidInput);
  CHECK_THROWS_AS(Potential::builtin(Kind::SquareWell, 1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(Potential::builtin(Kind::Stis, 1.0), InvalidInput);
  CHECK_THROWS_AS(Potential::builtin(Kind::Hulthen, 1.0, 1.0, 2.0), InvalidInput);
  CHECK_THROWS_AS(Potential::builtin(Kind::SquareWell, std::nan("")), InvalidInput);
  CHECK_THROWS_AS(Potential::builtin(Kind::Hulthen, 1.0).eval(0.0), InvalidInput);
  CHECK(parse_kind("pt") == Kind::PoschlTeller);
  CHECK(parse_kind("hulthen") == Kind::Hulthen);
  CHECK_FALSE(parse_kind("harmonic"));
}

TEST_CASE("tabulated potentials") {
  SECTION("step table reproduces the square well") {
    const auto t = Potential::from_table({{0, -100}, {1, -100}, {1, 0}});
    const auto sw = Potential::builtin(Kind::SquareWell, 10.0);
    for (double r : {0.0, 0.25, 0.5, 0.999, 1.0, 1.001, 3.0}) CHECK(t.eval(r) == sw.eval(r));
    CHECK(t.is_jump(1.0));
  }
  SECTION("interpolation stays within neighbouring samples") {
    const auto t = Potential::from_table({{0, -4}, {2, -1}, {4, 0}});
    const double v = t.eval(3.0);
    CHECK(v >= -1.0);
    CHECK(v <= 0.0);
    for (double r = 0.0; r < 4.0; r += 0.01) {
      CHECK(t.eval(r + 0.01) >= t.eval(r));
    }
  }
  SECTION("rejects inadmissible tables") {
    CHECK_THROWS_WITH(Potential::from_table({{0, -1}, {1, -2}}), ContainsSubstring("nonmonotone"));
    CHECK_THROWS_AS(Potential::from_table({{0, 1}, {1, 0}}), InvalidInput);
    CHECK_THROWS_AS(Potential::from_table({{1, -1}, {0, 0}}), InvalidInput);
    CHECK_THROWS_AS(Potential::from_table({{0, -1}}), InvalidInput);
  }
}

TEST_CASE("Klein-Gordon reduction") {
  SECTION("exponential W") {
    const auto w = Potential::builtin(Kind::Exponential, 1.0);
    const auto v = kg_reduce({w, 1.0});
    const double e1 = std::exp(-1.0);
    CHECK_THAT(v.eval(1.0), WithinRel(-2.0 * e1 - e1 * e1, 1e-12));
    CHECK_THAT(v.eval(1.0), WithinRel(-0.87109, 1e-4));
    CHECK(validate(v).pass);
  }
  SECTION("constant W on a finite support") {
    const double c = 3.0;
    const auto w = Potential::from_table({{0, -c}, {1, -c}, {1, 0}});
    const auto v = kg_reduce({w, 1.0});
    CHECK(v.eval(0.5) == Approx(-2.0 * c - c * c));
    CHECK(v.eval(1.5) == 0.0);
  }
  SECTION("vanishing W") {
    const auto w = Potential::from_table({{0, 0}, {1, 0}});
    const auto v = kg_reduce({w, 1.0});
    for (double r : {0.0, 0.5, 2.0}) CHECK(v.eval(r) == 0.0);
  }
}

TEST_CASE("validation diagnostics") {
  CHECK(validate(Potential::builtin(Kind::SquareWell, 10.0)).pass);

  const auto bad = Potential::from_table_unchecked({{0, -1}, {1, -0.5}, {2, -0.6}, {3, 0}});
  const auto d = validate(bad);
  CHECK_FALSE(d.pass);
  REQUIRE_FALSE(d.violations.empty());
  bool near_two = false;
  for (const auto& v : d.violations) near_two |= std::abs(v.r - 2.0) < 0.5;
  CHECK(near_two);

  const auto y = validate(Potential::builtin(Kind::Yukawa, 5.0));
  CHECK(y.pass);
  CHECK(y.origin_singular);

  for (const auto& pot : all_builtins(2.0)) {
    INFO(pot.describe());
    CHECK(validate(pot).pass);
  }
}
