#pragma once

#include <string>
#include <vector>

#include "nbound/potential.hpp"
#include "nbound/quadrature.hpp"

namespace nbound {

enum class CountMethod { NodeCount, Phase };

struct NodeCountResult {
  long n = 0;
  std::vector<double> nodes;
  std::vector<double> extrema;
  double r_max = 0.0;
  CountMethod method = CountMethod::NodeCount;
  bool marginal_flag = false;  ///< u' nearly vanishes at r_max (zero-energy resonance)
  std::vector<std::string> notes;
};

/// Zero-energy wave function sample. u and du are rescaled by a common
/// positive factor so that u^2 + (du/k)^2 = 1 with k the local wavenumber.
struct WaveSample {
  double r;
  double u;
  double du;
};

/// Counts the nodes of u'' = V u, u(0) = 0, u'(0) = 1. A node past the
/// horizon is added when u and u' have opposite signs there, since V is
/// negligible beyond it and u continues linearly.
NodeCountResult count_nodes(const Potential& pot, double rel_tol = kDefaultRelTol,
                            std::vector<WaveSample>* samples = nullptr);

struct PhaseSample {
  double r;
  double eta;
};

struct PhaseProfile {
  long n = 0;
  double eta_end = 0.0;  ///< phase after the tail continuation, a multiple of pi
  double r_max = 0.0;
  bool fell_back = false;  ///< |V| vanished inside the support; n comes from count_nodes
  std::vector<PhaseSample> samples;
  std::string note;
};

/// Integrates eta' = |V|^(1/2) - V'/(4|V|) sin(2 eta) with tan(eta) matched
/// across jumps of V; N = eta(inf) / pi.
PhaseProfile phase_profile(const Potential& pot, double rel_tol = kDefaultRelTol,
                           bool keep_samples = false);

/// Radius beyond which u is linear to within the tolerance of the counter.
double count_horizon(const Potential& pot, double rel_tol = kDefaultRelTol);

}  // namespace nbound
