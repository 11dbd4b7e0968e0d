#include "nbound/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

ReportOptions lean_options(double rel_tol) {
  ReportOptions o;
  o.rel_tol = rel_tol;
  o.phase_check = false;
  o.full_radii = false;
  o.sufficient = false;
  return o;
}

void check_spec(const SweepSpec& spec) {
  if (!(spec.g_lo > 0.0) || !(spec.g_hi > spec.g_lo)) {
    throw InvalidInput("sweep needs 0 < g_lo < g_hi");
  }
  if (spec.steps < 1) throw InvalidInput("sweep needs at least one step");
}

// Runs f(i) for i in [0, n); exceptions from worker threads are rethrown.
template <class F>
void for_each_index(std::size_t n, bool parallel, F&& f) {
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(nbound_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, bool parallel) {
  check_spec(spec);
  const auto grid = sweep_grid(spec);
  std::vector<SweepRow> rows(grid.size());
  for_each_index(grid.size(), parallel, [&](std::size_t i) {
    rows[i] = sweep_row(Potential::builtin(spec.kind, grid[i], spec.R, spec.alpha), spec.rel_tol);
  });
  return rows;
}

}  // namespace

std::vector<double> sweep_grid(const SweepSpec& spec) {
  check_spec(spec);
  std::vector<double> g(static_cast<std::size_t>(spec.steps) + 1);
  for (int i = 0; i <= spec.steps; ++i) {
    const double t = static_cast<double>(i) / spec.steps;
    g[static_cast<std::size_t>(i)] =
        spec.log_spacing ? spec.g_lo * std::pow(spec.g_hi / spec.g_lo, t)
                         : spec.g_lo + (spec.g_hi - spec.g_lo) * t;
  }
  g.back() = spec.g_hi;
  return g;
}

SweepRow sweep_row(const Potential& pot, double rel_tol) {
  BoundsReport rep = compute_report(pot, lean_options(rel_tol));
  SweepRow row;
  row.g = rep.g;
  row.n = rep.exact.n;
  row.marginal = rep.exact.marginal_flag;
  row.limits = std::move(rep.limits);
  row.violations = std::move(rep.violations);
  return row;
}

std::vector<SweepRow> sweep_serial(const SweepSpec& spec) { return run_sweep(spec, false); }

std::vector<SweepRow> sweep_parallel(const SweepSpec& spec) { return run_sweep(spec, true); }

std::vector<Table1Computed> compute_table1(bool parallel, double rel_tol) {
  const auto& published = published_table1();
  std::vector<Table1Computed> rows(published.size());
  for_each_index(published.size(), parallel, [&](std::size_t i) {
    const Table1Row& p = published[i];
    const Potential pot = Potential::builtin(Kind::Stis, p.g, 1.0, p.alpha);
    const BoundsReport rep = compute_report(pot, lean_options(rel_tol));
    Table1Computed& out = rows[i];
    out.published = p;
    out.n = rep.exact.n;
    out.nu_lo = *rep.find(LimitName::FirstLowerRegularQ);
    out.nu_up = *rep.find(LimitName::FirstUpperRegular);
    out.nu_minus = *rep.find(LimitName::LadderDown);
    out.nu_plus = *rep.find(LimitName::LadderUp);
    out.bs = *rep.find(LimitName::BS);
    out.cc = *rep.find(LimitName::CC);
    out.m = *rep.find(LimitName::Martin);
    out.c = *rep.find(LimitName::C);
    out.c0 = *rep.find(LimitName::C0);
  });
  return rows;
}

std::vector<std::string> table1_mismatches(const std::vector<Table1Computed>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    const std::string where =
        "(" + format_shortest(r.published.alpha) + ", " + format_shortest(r.published.g) + ") ";
    auto exact = [&](const char* col, long got, long want) {
      if (got != want) {
        out.push_back(where + col + ": computed " + std::to_string(got) + ", published " +
                      std::to_string(want));
      }
    };
    auto near = [&](const char* col, long got, long want) {
      if (std::labs(got - want) > 1) {
        out.push_back(where + col + ": computed " + std::to_string(got) + ", published " +
                      std::to_string(want) + " (beyond +-1)");
      }
    };
    exact("N", r.n, r.published.n);
    exact("nu_lo", r.nu_lo.bound, r.published.nu_lo);
    exact("nu_up", r.nu_up.bound, r.published.nu_up);
    near("nu_minus", r.nu_minus.bound, r.published.nu_minus);
    near("nu_plus", r.nu_plus.bound, r.published.nu_plus);
    if (r.published.bs_exceeds) {
      if (!(r.bs.bound > r.published.bs)) {
        out.push_back(where + "BS: computed " + std::to_string(r.bs.bound) + ", published >1e5");
      }
    } else {
      exact("BS", r.bs.bound, r.published.bs);
    }
    exact("CC", r.cc.bound, r.published.cc);
    exact("M", r.m.bound, r.published.m);
    exact("C", r.c.bound, r.published.c);
    exact("C0", r.c0.bound, r.published.c0);
  }
  return out;
}

}  // namespace nbound
