#include "nbound/report.hpp"

#include <chrono>
#include <functional>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

bool can_rescale(Kind kind) { return kind != Kind::Tabulated && kind != Kind::KleinGordonReduced; }

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&] {
      const auto t1 = std::chrono::steady_clock::now();
      sink_.push_back({stage, std::chrono::duration<double, std::milli>(t1 - t0).count()});
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto out = f();
      finish();
      return out;
    }
  }

 private:
  std::vector<StageTiming>& sink_;
};

LimitValue guarded(LimitName name, const std::function<LimitValue()>& f,
                   std::vector<std::string>& warnings) {
  try {
    return f();
  } catch (const NumericalError& e) {
    warnings.push_back(std::string(to_string(name)) + ": " + e.what());
    return inapplicable(name, e.what());
  } catch (const NoBoundStates& e) {
    return inapplicable(name, e.what());
  }
}

}  // namespace

const LimitValue* BoundsReport::find(LimitName name) const {
  for (const auto& l : limits) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

BoundsReport compute_report(const Potential& input, const ReportOptions& opts) {
  BoundsReport rep;
  Stopwatch watch(rep.timings);
  rep.g_requested = input.g();

  Potential pot = input;
  rep.exact = watch.time("exact", [&] { return count_nodes(pot, opts.rel_tol); });
  if (rep.exact.marginal_flag && opts.nudge_marginal && can_rescale(pot.kind())) {
    for (double eps : {1e-9, 1e-7, 1e-5}) {
      Potential moved = input.with_coupling(input.g() * (1.0 + eps));
      NodeCountResult again = count_nodes(moved, opts.rel_tol);
      if (!again.marginal_flag) {
        pot = moved;
        rep.exact = std::move(again);
        rep.warnings.push_back("zero-energy resonance at g = " + format_shortest(input.g()) +
                               "; g raised by a relative " + format_sig(eps, 1));
        break;
      }
    }
  }
  if (rep.exact.marginal_flag) rep.warnings.push_back("exact count is marginal");

  rep.descriptor = pot.describe();
  rep.kind = pot.kind();
  rep.g = pot.g();
  rep.alpha = pot.alpha();
  rep.R = pot.R();

  // V = 0 everywhere: every integral vanishes and the limits are all zero.
  if (!pot.origin_singular() && pot.eval(0.0) == 0.0) {
    for (LimitName name : kAllLimits) rep.limits.push_back(make_limit(name, 0.0));
    rep.warnings.push_back("V vanishes identically");
    return rep;
  }

  if (opts.phase_check) {
    PhaseProfile ph = watch.time("phase", [&] { return phase_profile(pot, opts.rel_tol); });
    rep.phase_n = ph.n;
    if (ph.fell_back) rep.warnings.push_back("phase method fell back to node counting: " + ph.note);
    if (ph.n != rep.exact.n) {
      rep.warnings.push_back("phase count " + std::to_string(ph.n) + " differs from node count " +
                             std::to_string(rep.exact.n));
    }
  }

  LimitContext ctx(pot, opts.rel_tol);
  auto& w = rep.warnings;
  watch.time("classic", [&] {
    rep.limits.push_back(guarded(LimitName::BS, [&] { return bs_upper(ctx); }, w));
    rep.limits.push_back(guarded(LimitName::CC, [&] { return cc_upper(ctx); }, w));
    rep.limits.push_back(guarded(LimitName::Martin, [&] { return martin_upper(ctx); }, w));
    rep.limits.push_back(guarded(LimitName::C, [&] { return c_lower(ctx); }, w));
    rep.limits.push_back(guarded(LimitName::C0, [&] { return c0_lower(ctx); }, w));
  });
  watch.time("first", [&] {
    rep.limits.push_back(guarded(LimitName::FirstUpper, [&] { return first_upper(ctx); }, w));
    rep.limits.push_back(
        guarded(LimitName::FirstUpperRegular, [&] { return first_upper_regular(ctx); }, w));
    rep.limits.push_back(
        guarded(LimitName::FirstLowerRegular, [&] { return first_lower_regular(ctx); }, w));
    rep.limits.push_back(
        guarded(LimitName::FirstLowerRegularQ, [&] { return first_lower_regular_q(ctx); }, w));
    rep.limits.push_back(
        guarded(LimitName::FirstLowerSingular, [&] { return first_lower_singular(ctx); }, w));
    rep.limits.push_back(guarded(LimitName::FirstLowerTs, [&] { return first_lower_ts(ctx); }, w));
    rep.limits.push_back(guarded(LimitName::FirstLowerTq, [&] { return first_lower_tq(ctx); }, w));
  });
  watch.time("ladder", [&] {
    std::optional<LadderTrace> up_trace;
    std::optional<LadderTrace> down_trace;
    rep.limits.push_back(guarded(
        LimitName::LadderUp,
        [&] {
          auto r = ladder_upper(ctx);
          up_trace = std::move(r.trace);
          return r.limit;
        },
        w));
    rep.limits.push_back(guarded(
        LimitName::LadderDown,
        [&] {
          auto r = ladder_lower(ctx);
          down_trace = std::move(r.trace);
          return r.limit;
        },
        w));
    if (opts.keep_traces) {
      rep.ladder_up_trace = std::move(up_trace);
      rep.ladder_down_trace = std::move(down_trace);
    }
  });

  watch.time("radii", [&] {
    if (opts.full_radii) {
      rep.radii = ctx.radii();
    } else {
      rep.radii.p = ctx.p();
      rep.radii.q = ctx.q();
    }
  });
  if (opts.sufficient) {
    rep.sufficient = watch.time("sufficient", [&] { return sufficient_one_state(ctx); });
    if (rep.sufficient->any() && rep.exact.n < 1 && !rep.exact.marginal_flag) {
      rep.violations.push_back("a sufficient condition holds but the exact count is 0");
    }
  }

  for (const auto& l : rep.limits) {
    if (l.boundary_case) {
      w.push_back(std::string(to_string(l.name)) + " is within 1e-9 of an integer");
    }
    if (!l.applicable || rep.exact.marginal_flag) continue;
    const bool bad = l.direction == Direction::Upper ? rep.exact.n > l.bound : rep.exact.n < l.bound;
    if (bad) {
      rep.violations.push_back(std::string(to_string(l.name)) + " bound " +
                               std::to_string(l.bound) + " contradicts N = " +
                               std::to_string(rep.exact.n));
    }
  }
  return rep;
}

Bracket bracket(const BoundsReport& report, const std::vector<LimitName>& names) {
  Bracket b;
  for (LimitName n : names) {
    const LimitValue* l = report.find(n);
    if (!l || !l->applicable) continue;
    if (l->direction == Direction::Upper) {
      b.upper = b.has_upper ? std::min(b.upper, l->bound) : l->bound;
      b.has_upper = true;
    } else {
      b.lower = b.has_lower ? std::max(b.lower, l->bound) : l->bound;
      b.has_lower = true;
    }
  }
  return b;
}

}  // namespace nbound
