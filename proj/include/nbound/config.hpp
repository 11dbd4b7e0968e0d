#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbound/potential.hpp"

namespace nbound {

/// A potential description as read from flags or a config file.
///
/// Config files are line based; '#' starts a comment.
///
///     kind  = hulthen        # any built-in name, or "tabulated"
///     g     = 2.5
///     R     = 1
///     alpha = 1              # stis only
///     mass  = 1              # kg only: treat the shape as W(r)
///
/// A tabulated potential lists "r, V" rows after `kind = tabulated`. Repeating
/// a radius with a second value encodes an upward jump.
struct PotentialSpec {
  std::optional<Kind> kind;
  std::optional<double> g;
  double R = 1.0;
  std::optional<double> alpha;
  std::optional<double> mass;
  std::vector<Sample> samples;
};

PotentialSpec parse_config(std::istream& in);
PotentialSpec load_config(const std::string& path);

/// Throws InvalidInput when the spec is incomplete or inadmissible.
Potential build_potential(const PotentialSpec& spec);

/// For `mass`-carrying specs: the reduced Klein-Gordon potential.
Potential build_kg_potential(const PotentialSpec& spec);

/// Default relative tolerance: NBOUND_REL_TOL when set and valid, else 1e-10.
double default_rel_tol();

}  // namespace nbound
