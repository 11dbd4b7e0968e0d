#include "nbound/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string_view>

#include "nbound/error.hpp"
#include "nbound/quadrature.hpp"

namespace nbound {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, int line) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("line " + std::to_string(line) + ": not a number: '" + std::string(text) +
                       "'");
  }
  return value;
}

}  // namespace

PotentialSpec parse_config(std::istream& in) {
  PotentialSpec spec;
  bool tabulated = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (auto eq = line.find('='); eq != std::string_view::npos) {
      const std::string key(trim(line.substr(0, eq)));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key == "kind") {
        if (value == "tabulated") {
          tabulated = true;
          spec.kind = Kind::Tabulated;
        } else {
          spec.kind = parse_kind(value);
          if (!spec.kind) {
            throw InvalidInput("line " + std::to_string(line_no) + ": unknown kind '" +
                               std::string(value) + "'");
          }
        }
      } else if (key == "g") {
        spec.g = parse_number(value, line_no);
      } else if (key == "R") {
        spec.R = parse_number(value, line_no);
      } else if (key == "alpha") {
        spec.alpha = parse_number(value, line_no);
      } else if (key == "mass") {
        spec.mass = parse_number(value, line_no);
      } else {
        throw InvalidInput("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
      continue;
    }

    const auto comma = line.find(',');
    if (!tabulated || comma == std::string_view::npos) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected 'key = value'" +
                         (tabulated ? " or 'r, V'" : ""));
    }
    spec.samples.push_back(
        {parse_number(line.substr(0, comma), line_no), parse_number(line.substr(comma + 1), line_no)});
  }
  return spec;
}

PotentialSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  return parse_config(in);
}

Potential build_potential(const PotentialSpec& spec) {
  if (!spec.kind) throw InvalidInput("no potential kind given");
  if (*spec.kind == Kind::Tabulated) {
    if (spec.g || spec.alpha) throw InvalidInput("tabulated potentials take no g or alpha");
    return Potential::from_table(spec.samples);
  }
  if (!spec.samples.empty()) throw InvalidInput("samples given for a built-in kind");
  if (*spec.kind == Kind::KleinGordonReduced) {
    throw InvalidInput("use the kg command with a shape for W and a mass");
  }
  if (!spec.g) throw InvalidInput("missing coupling g");
  return Potential::builtin(*spec.kind, *spec.g, spec.R, spec.alpha);
}

Potential build_kg_potential(const PotentialSpec& spec) {
  if (!spec.mass) throw InvalidInput("missing mass for the Klein-Gordon reduction");
  PotentialSpec w = spec;
  w.mass.reset();
  return kg_reduce({build_potential(w), *spec.mass});
}

double default_rel_tol() {
  const char* env = std::getenv("NBOUND_REL_TOL");
  if (!env || !*env) return kDefaultRelTol;
  const std::string_view text(env);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 1e-14 && value < 1e-2)) {
    throw InvalidInput("NBOUND_REL_TOL must be a number in (1e-14, 1e-2)");
  }
  return value;
}

}  // namespace nbound
