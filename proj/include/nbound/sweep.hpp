#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nbound/report.hpp"
#include "nbound/reference.hpp"

namespace nbound {

struct SweepSpec {
  Kind kind = Kind::PoschlTeller;
  double R = 1.0;
  std::optional<double> alpha;
  double g_lo = 1.0;
  double g_hi = 10.0;
  int steps = 10;  ///< number of intervals; steps + 1 rows
  bool log_spacing = false;
  double rel_tol = kDefaultRelTol;
};

struct SweepRow {
  double g = 0.0;  ///< coupling used (nudged off resonances)
  long n = 0;
  bool marginal = false;
  std::vector<LimitValue> limits;
  std::vector<std::string> violations;
};

std::vector<double> sweep_grid(const SweepSpec& spec);

/// One row per potential, in input order.
SweepRow sweep_row(const Potential& pot, double rel_tol);

/// Reference implementation: rows computed one after another.
std::vector<SweepRow> sweep_serial(const SweepSpec& spec);

/// Same rows with the coupling values distributed over OpenMP threads.
std::vector<SweepRow> sweep_parallel(const SweepSpec& spec);

struct Table1Computed {
  Table1Row published;
  long n = 0;
  LimitValue nu_lo;     ///< regular lower limit with s = q
  LimitValue nu_up;     ///< regular upper limit
  LimitValue nu_minus;  ///< decreasing ladder
  LimitValue nu_plus;   ///< increasing ladder
  LimitValue bs, cc, m, c, c0;
};

std::vector<Table1Computed> compute_table1(bool parallel = true,
                                           double rel_tol = kDefaultRelTol);

/// Empty when every exact column matches and the ladder columns are within
/// one unit; otherwise one message per mismatching cell.
std::vector<std::string> table1_mismatches(const std::vector<Table1Computed>& rows);

}  // namespace nbound
