// nbound: bound-state counts and their upper/lower limits for central potentials.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nbound/config.hpp"
#include "nbound/error.hpp"
#include "nbound/exact_counter.hpp"
#include "nbound/format.hpp"
#include "nbound/ladder.hpp"
#include "nbound/report.hpp"
#include "nbound/sweep.hpp"

namespace {

using namespace nbound;

constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

struct PotentialFlags {
  std::string kind;
  std::optional<double> g;
  double R = 1.0;
  std::optional<double> alpha;
  std::string config;
};

void add_potential_flags(CLI::App* cmd, PotentialFlags& f) {
  cmd->add_option("--kind", f.kind,
                  "squarewell, poschlteller, exponential, hulthen, yukawa or stis");
  cmd->add_option("--g", f.g, "coupling constant");
  cmd->add_option("--R", f.R, "range parameter")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "stis cutoff ratio");
  cmd->add_option("--config", f.config, "potential description file");
}

PotentialSpec to_spec(const PotentialFlags& f) {
  PotentialSpec spec;
  if (!f.config.empty()) {
    if (!f.kind.empty() || f.g || f.alpha) {
      throw InvalidInput("--config cannot be combined with --kind, --g or --alpha");
    }
    return load_config(f.config);
  }
  if (f.kind.empty()) throw InvalidInput("give --kind or --config");
  spec.kind = parse_kind(f.kind);
  if (!spec.kind) throw InvalidInput("unknown potential kind '" + f.kind + "'");
  spec.g = f.g;
  spec.R = f.R;
  spec.alpha = f.alpha;
  return spec;
}

OutputFormat to_format(const std::string& name) {
  auto fmt = parse_format(name);
  if (!fmt) throw InvalidInput("unknown format '" + name + "' (table, csv, json)");
  return *fmt;
}

// Writes to `path`, or to stdout when path is empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  write(out);
}

struct Dumps {
  std::string trace_up;
  std::string trace_down;
  std::string wave;
  std::string phase;
};

void add_dump_flags(CLI::App* cmd, Dumps& d) {
  cmd->add_option("--trace-up", d.trace_up, "write the increasing ladder radii (csv)");
  cmd->add_option("--trace-down", d.trace_down, "write the decreasing ladder radii (csv)");
  cmd->add_option("--wave", d.wave, "write the zero-energy wavefunction (csv)");
  cmd->add_option("--phase", d.phase, "write the phase function (csv)");
}

int run_report(const Potential& pot, const std::string& format, const std::string& output,
               bool timings, const Dumps& dumps) {
  const OutputFormat fmt = to_format(format);
  ReportOptions opts;
  opts.rel_tol = default_rel_tol();
  opts.keep_traces = !dumps.trace_up.empty() || !dumps.trace_down.empty();
  const BoundsReport rep = compute_report(pot, opts);

  emit(output, [&](std::ostream& os) { write_report(os, rep, fmt, timings); });

  if (!dumps.trace_up.empty()) {
    if (!rep.ladder_up_trace) throw InvalidInput("the increasing ladder is not applicable here");
    emit(dumps.trace_up, [&](std::ostream& os) { write_trace(os, *rep.ladder_up_trace); });
  }
  if (!dumps.trace_down.empty()) {
    if (!rep.ladder_down_trace) throw InvalidInput("the decreasing ladder is not applicable here");
    emit(dumps.trace_down, [&](std::ostream& os) { write_trace(os, *rep.ladder_down_trace); });
  }
  const Potential used = pot.kind() == Kind::Tabulated || pot.kind() == Kind::KleinGordonReduced
                             ? pot
                             : pot.with_coupling(rep.g);
  if (!dumps.wave.empty()) {
    std::vector<WaveSample> samples;
    count_nodes(used, opts.rel_tol, &samples);
    emit(dumps.wave, [&](std::ostream& os) { write_wave(os, samples); });
  }
  if (!dumps.phase.empty()) {
    const PhaseProfile prof = phase_profile(used, opts.rel_tol, true);
    emit(dumps.phase, [&](std::ostream& os) { write_phase(os, prof.samples); });
  }

  if (!rep.sandwich_ok()) {
    for (const auto& v : rep.violations) std::cerr << "nbound: sandwich violation: " << v << '\n';
    return kExitViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts S-wave bound states and evaluates upper and lower limits on the count."};
  app.require_subcommand(1);

  std::string format = "table";
  std::string output;
  bool timings = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "table, csv or json")->capture_default_str();
    cmd->add_option("-o,--output", output, "output file (default stdout)");
  };

  PotentialFlags pflags;
  Dumps dumps;

  auto* bounds = app.add_subcommand("bounds", "report the exact count and every applicable limit");
  add_potential_flags(bounds, pflags);
  add_common(bounds);
  add_dump_flags(bounds, dumps);
  bounds->add_flag("--timings", timings, "include per-stage timings");

  auto* kg = app.add_subcommand("kg", "Klein-Gordon count for a vector potential W and mass m");
  add_potential_flags(kg, pflags);
  add_common(kg);
  add_dump_flags(kg, dumps);
  std::optional<double> mass;
  kg->add_option("--mass", mass, "particle mass");
  kg->add_flag("--timings", timings, "include per-stage timings");

  SweepSpec sweep_spec;
  std::string sweep_kind;
  bool serial = false;
  auto* sweep = app.add_subcommand("sweep", "limits over a range of couplings");
  sweep->add_option("--kind", sweep_kind, "built-in potential kind")->required();
  sweep->add_option("--R", sweep_spec.R, "range parameter")->capture_default_str();
  sweep->add_option("--alpha", sweep_spec.alpha, "stis cutoff ratio");
  sweep->add_option("--g-min", sweep_spec.g_lo, "smallest coupling")->required();
  sweep->add_option("--g-max", sweep_spec.g_hi, "largest coupling")->required();
  sweep->add_option("--steps", sweep_spec.steps, "number of intervals")->capture_default_str();
  sweep->add_flag("--log", sweep_spec.log_spacing, "logarithmic spacing in g");
  sweep->add_flag("--serial", serial, "run on one thread");
  add_common(sweep);

  bool table1_serial = false;
  auto* table1 = app.add_subcommand("table1", "reproduce the STIS comparison table");
  table1->add_flag("--serial", table1_serial, "run on one thread");
  add_common(table1);

  auto* validate_cmd = app.add_subcommand("validate", "check that a potential is admissible");
  add_potential_flags(validate_cmd, pflags);
  add_common(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*bounds) {
      return run_report(build_potential(to_spec(pflags)), format, output, timings, dumps);
    }
    if (*kg) {
      PotentialSpec spec = to_spec(pflags);
      if (mass) spec.mass = mass;
      return run_report(build_kg_potential(spec), format, output, timings, dumps);
    }
    if (*sweep) {
      const OutputFormat fmt = to_format(format);
      auto kind = parse_kind(sweep_kind);
      if (!kind) throw InvalidInput("unknown potential kind '" + sweep_kind + "'");
      sweep_spec.kind = *kind;
      sweep_spec.rel_tol = default_rel_tol();
      const auto rows = serial ? sweep_serial(sweep_spec) : sweep_parallel(sweep_spec);
      emit(output, [&](std::ostream& os) { write_sweep(os, rows, fmt); });
      for (const auto& r : rows) {
        if (!r.violations.empty()) return kExitViolation;
      }
      return 0;
    }
    if (*table1) {
      const OutputFormat fmt = to_format(format);
      const auto rows = compute_table1(!table1_serial, default_rel_tol());
      emit(output, [&](std::ostream& os) { write_table1(os, rows, fmt); });
      const auto bad = table1_mismatches(rows);
      for (const auto& m : bad) std::cerr << "nbound: table mismatch: " << m << '\n';
      return bad.empty() ? 0 : kExitViolation;
    }
    if (*validate_cmd) {
      const OutputFormat fmt = to_format(format);
      const PotentialSpec spec = to_spec(pflags);
      const Potential pot = spec.kind == Kind::Tabulated
                                ? Potential::from_table_unchecked(spec.samples)
                                : build_potential(spec);
      const Diagnostics diag = validate(pot);
      emit(output, [&](std::ostream& os) { write_diagnostics(os, pot, diag, fmt); });
      return diag.pass ? 0 : kExitInvalid;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "nbound: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NoBoundStates& e) {
    std::cerr << "nbound: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "nbound: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
