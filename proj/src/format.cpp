#include "nbound/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

using Json = nlohmann::ordered_json;

std::string dir_name(Direction d) { return d == Direction::Upper ? "upper" : "lower"; }

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

std::string opt_str(const std::optional<double>& x) { return x ? format_sig(*x, 8) : "-"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Left-aligned columns separated by two spaces.
void write_columns(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
}

Json limit_json(const LimitValue& l) {
  Json j;
  j["name"] = std::string(to_string(l.name));
  j["direction"] = dir_name(l.direction);
  j["applicable"] = l.applicable;
  j["raw"] = l.applicable ? number(l.raw) : Json(nullptr);
  j["bound"] = l.applicable ? Json(l.bound) : Json(nullptr);
  j["boundary_case"] = l.boundary_case;
  j["note"] = l.reason;
  return j;
}

Json radii_json(const AuxiliaryRadii& r) {
  Json j;
  j["p"] = optional_number(r.p);
  j["q"] = optional_number(r.q);
  j["rho"] = optional_number(r.rho);
  j["s"] = optional_number(r.s);
  j["t"] = optional_number(r.t);
  j["a_cohn"] = optional_number(r.a_cohn);
  j["a_calogero"] = optional_number(r.a_calogero);
  j["rho_roots"] = r.rho_roots;
  j["s_roots"] = r.s_roots;
  return j;
}

Json sufficient_json(const SufficientCheck& c) {
  Json j;
  j["evaluated"] = c.evaluated;
  j["holds"] = c.holds;
  j["lhs"] = c.evaluated ? number(c.lhs) : Json(nullptr);
  j["rhs"] = c.evaluated ? number(c.rhs) : Json(nullptr);
  j["parameter"] = optional_number(c.parameter);
  if (!c.reason.empty()) j["note"] = c.reason;
  return j;
}

std::string raw_cell(const LimitValue& l) { return l.applicable ? format_sig(l.raw) : "-"; }
std::string bound_cell(const LimitValue& l) {
  return l.applicable ? std::to_string(l.bound) : "-";
}

void report_table(std::ostream& os, const BoundsReport& rep, bool with_timings) {
  os << "potential  " << rep.descriptor << '\n';
  if (rep.g != rep.g_requested) os << "g used     " << format_shortest(rep.g) << '\n';
  os << "exact N    " << rep.exact.n;
  if (rep.phase_n) os << "  (phase method: " << *rep.phase_n << ")";
  if (rep.exact.marginal_flag) os << "  marginal";
  os << '\n';
  os << "horizon    " << format_sig(rep.exact.r_max) << "\n\n";

  std::vector<std::vector<std::string>> rows{{"limit", "dir", "raw", "bound", "note"}};
  for (const auto& l : rep.limits) {
    rows.push_back({std::string(to_string(l.name)), dir_name(l.direction), raw_cell(l),
                    bound_cell(l), l.reason});
  }
  write_columns(os, rows);

  const auto& r = rep.radii;
  os << "\nradii  p=" << opt_str(r.p) << "  q=" << opt_str(r.q) << "  rho=" << opt_str(r.rho)
     << "  s=" << opt_str(r.s) << "  t=" << opt_str(r.t) << "  a_cohn=" << opt_str(r.a_cohn)
     << "  a_calogero=" << opt_str(r.a_calogero) << '\n';

  if (rep.sufficient) {
    const auto& s = *rep.sufficient;
    auto cell = [](const SufficientCheck& c) {
      return c.evaluated ? std::string(c.holds ? "yes" : "no") : std::string("-");
    };
    os << "one-state conditions  min_split=" << cell(s.min_split)
       << "  rho=" << cell(s.rho_form) << "  origin=" << cell(s.origin_form)
       << "  cohn=" << cell(s.cohn) << "  calogero=" << cell(s.calogero) << '\n';
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << '\n';
  for (const auto& v : rep.violations) os << "VIOLATION: " << v << '\n';
  if (with_timings) {
    os << "timings";
    for (const auto& t : rep.timings) os << "  " << t.stage << '=' << format_sig(t.ms, 3) << "ms";
    os << '\n';
  }
}

void report_csv(std::ostream& os, const BoundsReport& rep) {
  os << "quantity,direction,raw,bound,applicable,note\n";
  os << "exact,,," << rep.exact.n << ",true," << (rep.exact.marginal_flag ? "marginal" : "")
     << '\n';
  for (const auto& l : rep.limits) {
    os << to_string(l.name) << ',' << dir_name(l.direction) << ','
       << (l.applicable ? format_sig(l.raw) : "") << ','
       << (l.applicable ? std::to_string(l.bound) : "") << ','
       << (l.applicable ? "true" : "false") << ',' << csv_escape(l.reason) << '\n';
  }
}

void report_json(std::ostream& os, const BoundsReport& rep, bool with_timings) {
  Json j;
  j["potential"] = rep.descriptor;
  j["kind"] = std::string(to_string(rep.kind));
  j["g"] = rep.g;
  j["g_requested"] = rep.g_requested;
  j["R"] = rep.R;
  j["alpha"] = optional_number(rep.alpha);
  Json ex;
  ex["n"] = rep.exact.n;
  ex["phase_n"] = rep.phase_n ? Json(*rep.phase_n) : Json(nullptr);
  ex["r_max"] = rep.exact.r_max;
  ex["marginal"] = rep.exact.marginal_flag;
  ex["nodes"] = rep.exact.nodes;
  ex["notes"] = rep.exact.notes;
  j["exact"] = ex;
  j["limits"] = Json::array();
  for (const auto& l : rep.limits) j["limits"].push_back(limit_json(l));
  j["radii"] = radii_json(rep.radii);
  if (rep.sufficient) {
    Json s;
    s["min_split"] = sufficient_json(rep.sufficient->min_split);
    s["rho"] = sufficient_json(rep.sufficient->rho_form);
    s["origin"] = sufficient_json(rep.sufficient->origin_form);
    s["cohn"] = sufficient_json(rep.sufficient->cohn);
    s["calogero"] = sufficient_json(rep.sufficient->calogero);
    j["sufficient"] = s;
  }
  j["warnings"] = rep.warnings;
  j["violations"] = rep.violations;
  if (with_timings) {
    Json t;
    for (const auto& st : rep.timings) t[st.stage] = st.ms;
    j["timings_ms"] = t;
  }
  os << j.dump(2) << '\n';
}

const std::vector<LimitName>& sweep_columns() {
  static const std::vector<LimitName> cols(std::begin(kAllLimits), std::end(kAllLimits));
  return cols;
}

const LimitValue* find_in(const std::vector<LimitValue>& limits, LimitName n) {
  for (const auto& l : limits) {
    if (l.name == n) return &l;
  }
  return nullptr;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

void write_report(std::ostream& os, const BoundsReport& rep, OutputFormat fmt, bool with_timings) {
  switch (fmt) {
    case OutputFormat::Table: report_table(os, rep, with_timings); break;
    case OutputFormat::Csv: report_csv(os, rep); break;
    case OutputFormat::Json: report_json(os, rep, with_timings); break;
  }
}

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, OutputFormat fmt) {
  const auto& cols = sweep_columns();
  if (fmt == OutputFormat::Json) {
    Json j = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["g"] = r.g;
      row["n"] = r.n;
      row["marginal"] = r.marginal;
      row["limits"] = Json::array();
      for (const auto& l : r.limits) row["limits"].push_back(limit_json(l));
      row["violations"] = r.violations;
      j.push_back(row);
    }
    os << j.dump(2) << '\n';
    return;
  }
  if (fmt == OutputFormat::Csv) {
    os << "g,n,marginal";
    for (LimitName c : cols) os << ',' << to_string(c) << "_raw," << to_string(c) << "_bound";
    os << '\n';
    for (const auto& r : rows) {
      os << format_shortest(r.g) << ',' << r.n << ',' << (r.marginal ? 1 : 0);
      for (LimitName c : cols) {
        const LimitValue* l = find_in(r.limits, c);
        if (l && l->applicable) {
          os << ',' << format_sig(l->raw) << ',' << l->bound;
        } else {
          os << ",,";
        }
      }
      os << '\n';
    }
    return;
  }
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> head{"g", "N"};
  for (LimitName c : cols) head.emplace_back(to_string(c));
  table.push_back(head);
  for (const auto& r : rows) {
    std::vector<std::string> line{format_sig(r.g), std::to_string(r.n) + (r.marginal ? "*" : "")};
    for (LimitName c : cols) {
      const LimitValue* l = find_in(r.limits, c);
      line.push_back(l ? bound_cell(*l) : "-");
    }
    table.push_back(line);
  }
  write_columns(os, table);
}

void write_table1(std::ostream& os, const std::vector<Table1Computed>& rows, OutputFormat fmt) {
  struct Col {
    const char* name;
    const LimitValue Table1Computed::*limit;
    long Table1Row::*published;
  };
  static const Col cols[] = {
      {"nu_lo", &Table1Computed::nu_lo, &Table1Row::nu_lo},
      {"nu_up", &Table1Computed::nu_up, &Table1Row::nu_up},
      {"nu_minus", &Table1Computed::nu_minus, &Table1Row::nu_minus},
      {"nu_plus", &Table1Computed::nu_plus, &Table1Row::nu_plus},
      {"BS", &Table1Computed::bs, &Table1Row::bs},
      {"CC", &Table1Computed::cc, &Table1Row::cc},
      {"M", &Table1Computed::m, &Table1Row::m},
      {"C", &Table1Computed::c, &Table1Row::c},
      {"C0", &Table1Computed::c0, &Table1Row::c0},
  };
  auto published_cell = [](const Table1Computed& r, const Col& c) {
    if (c.published == &Table1Row::bs && r.published.bs_exceeds) return std::string(">1e5");
    return std::to_string(r.published.*c.published);
  };

  if (fmt == OutputFormat::Json) {
    Json j = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["alpha"] = r.published.alpha;
      row["g"] = r.published.g;
      row["N"] = {{"computed", r.n}, {"published", r.published.n}};
      for (const auto& c : cols) {
        const LimitValue& l = r.*c.limit;
        row[c.name] = {{"computed", l.bound},
                       {"raw", number(l.raw)},
                       {"published", published_cell(r, c)}};
      }
      j.push_back(row);
    }
    os << j.dump(2) << '\n';
    return;
  }
  if (fmt == OutputFormat::Csv) {
    os << "alpha,g,N";
    for (const auto& c : cols) os << ',' << c.name << ',' << c.name << "_raw";
    os << '\n';
    for (const auto& r : rows) {
      os << format_shortest(r.published.alpha) << ',' << format_shortest(r.published.g) << ','
         << r.n;
      for (const auto& c : cols) {
        const LimitValue& l = r.*c.limit;
        os << ',' << l.bound << ',' << format_sig(l.raw);
      }
      os << '\n';
    }
    return;
  }
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> head{"(alpha, g)", "N"};
  for (const auto& c : cols) head.emplace_back(c.name);
  table.push_back(head);
  for (const auto& r : rows) {
    std::vector<std::string> line{
        "(" + format_shortest(r.published.alpha) + ", " + format_shortest(r.published.g) + ")",
        std::to_string(r.n) + " [" + std::to_string(r.published.n) + "]"};
    for (const auto& c : cols) {
      line.push_back(std::to_string((r.*c.limit).bound) + " [" + published_cell(r, c) + "]");
    }
    table.push_back(line);
  }
  write_columns(os, table);
  os << "computed [published]\n";
}

void write_diagnostics(std::ostream& os, const Potential& pot, const Diagnostics& diag,
                       OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    Json j;
    j["potential"] = pot.describe();
    j["pass"] = diag.pass;
    j["origin_singular"] = diag.origin_singular;
    j["violations"] = Json::array();
    for (const auto& v : diag.violations) j["violations"].push_back({{"r", v.r}, {"what", v.what}});
    j["notes"] = diag.notes;
    os << j.dump(2) << '\n';
    return;
  }
  if (fmt == OutputFormat::Csv) {
    os << "r,violation\n";
    for (const auto& v : diag.violations) os << format_shortest(v.r) << ',' << csv_escape(v.what) << '\n';
    return;
  }
  os << "potential        " << pot.describe() << '\n';
  os << "result           " << (diag.pass ? "pass" : "FAIL") << '\n';
  os << "origin singular  " << (diag.origin_singular ? "yes" : "no") << '\n';
  for (const auto& n : diag.notes) os << "note: " << n << '\n';
  for (const auto& v : diag.violations) os << "violation at r=" << format_sig(v.r) << ": " << v.what << '\n';
}

void write_trace(std::ostream& os, const LadderTrace& trace) {
  os << "j,r,step\n";
  for (std::size_t j = 0; j < trace.radii.size(); ++j) {
    os << j << ',' << format_shortest(trace.radii[j]) << ',';
    if (j < trace.steps.size()) os << format_shortest(trace.steps[j]);
    os << '\n';
  }
}

void write_wave(std::ostream& os, const std::vector<WaveSample>& samples) {
  os << "r,u,du\n";
  for (const auto& s : samples) {
    os << format_shortest(s.r) << ',' << format_sig(s.u, 10) << ',' << format_sig(s.du, 10) << '\n';
  }
}

void write_phase(std::ostream& os, const std::vector<PhaseSample>& samples) {
  os << "r,eta\n";
  for (const auto& s : samples) os << format_shortest(s.r) << ',' << format_sig(s.eta, 12) << '\n';
}

}  // namespace nbound
