#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nbound/exact_counter.hpp"
#include "nbound/ladder.hpp"
#include "nbound/limits.hpp"
#include "nbound/potential.hpp"
#include "nbound/rootfind.hpp"

namespace nbound {

struct ReportOptions {
  double rel_tol = kDefaultRelTol;
  bool phase_check = true;     ///< also run the phase integration
  bool full_radii = true;      ///< include the Cohn/Calogero optima and s, t
  bool sufficient = true;      ///< evaluate the one-state sufficient conditions
  bool nudge_marginal = true;  ///< move g off a zero-energy resonance (built-ins)
  bool keep_traces = false;    ///< keep ladder traces in the report
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

struct BoundsReport {
  std::string descriptor;
  Kind kind = Kind::SquareWell;
  double g = 0.0;           ///< coupling actually used (after any nudge)
  double g_requested = 0.0;
  std::optional<double> alpha;
  double R = 1.0;
  NodeCountResult exact;
  std::optional<long> phase_n;
  std::vector<LimitValue> limits;
  AuxiliaryRadii radii;
  std::optional<SufficientConditions> sufficient;
  std::optional<LadderTrace> ladder_up_trace;
  std::optional<LadderTrace> ladder_down_trace;
  std::vector<StageTiming> timings;
  std::vector<std::string> warnings;
  std::vector<std::string> violations;  ///< limits contradicting exact.n

  bool sandwich_ok() const { return violations.empty(); }
  const LimitValue* find(LimitName name) const;
};

/// Every applicable limit of `pot` together with the exact count.
BoundsReport compute_report(const Potential& pot, const ReportOptions& opts = {});

/// Tightest applicable integer bracket [lower, upper] among `names`.
struct Bracket {
  long lower = 0;
  long upper = 0;
  bool has_lower = false;
  bool has_upper = false;
};
Bracket bracket(const BoundsReport& report, const std::vector<LimitName>& names);

}  // namespace nbound
