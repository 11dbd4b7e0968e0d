#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "nbound/exact_counter.hpp"
#include "nbound/ladder.hpp"
#include "nbound/potential.hpp"
#include "nbound/report.hpp"
#include "nbound/sweep.hpp"

namespace nbound {

enum class OutputFormat { Table, Csv, Json };

std::optional<OutputFormat> parse_format(std::string_view name);

// Writers are deterministic: fixed column order, locale-independent numbers,
// newline-terminated. Timings appear only when requested.

void write_report(std::ostream& os, const BoundsReport& rep, OutputFormat fmt,
                  bool with_timings = false);
void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, OutputFormat fmt);
void write_table1(std::ostream& os, const std::vector<Table1Computed>& rows, OutputFormat fmt);
void write_diagnostics(std::ostream& os, const Potential& pot, const Diagnostics& diag,
                       OutputFormat fmt);

// Comma-separated dumps for plotting.
void write_trace(std::ostream& os, const LadderTrace& trace);
void write_wave(std::ostream& os, const std::vector<WaveSample>& samples);
void write_phase(std::ostream& os, const std::vector<PhaseSample>& samples);

}  // namespace nbound
