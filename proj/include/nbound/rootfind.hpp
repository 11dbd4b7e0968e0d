#pragma once

#include <optional>
#include <vector>

#include "nbound/potential.hpp"
#include "nbound/quadrature.hpp"

namespace nbound {

inline constexpr double kDefaultRootTol = 1e-10;

/// Auxiliary radii and parameters entering the limit formulas. Absent values
/// mean the defining equation has no admissible root.
struct AuxiliaryRadii {
  std::optional<double> p;  ///< int_0^p |V|^(1/2) = pi/2
  std::optional<double> q;  ///< int_q^inf |V|^(1/2) = pi/2
  std::optional<double> rho;
  std::optional<double> s;
  std::optional<double> t;
  std::optional<double> a_cohn;
  std::optional<double> a_calogero;
  std::vector<double> rho_roots;  ///< every bracketed root of the rho equation
  std::vector<double> s_roots;    ///< every bracketed root of V'(s) = 4|V(s)|^(3/2)
};

/// int_0^p |V|^(1/2) dr = pi/2. Throws NoBoundStates when the total is below pi/2.
double solve_p(const Potential& pot, double tol = kDefaultRootTol);

/// int_q^inf |V|^(1/2) dr = pi/2. Throws NoBoundStates when the total is below pi/2.
double solve_q(const Potential& pot, double tol = kDefaultRootTol);

/// Root of rho V(rho) = int_rho^inf V dr. When several roots exist, the one
/// maximizing rho |V(rho)|^(1/2) is returned; `all_roots` receives every root.
double solve_rho(const Potential& pot, double tol = kDefaultRootTol,
                 std::vector<double>* all_roots = nullptr);

struct SRoots {
  std::optional<double> largest;
  std::vector<double> all;
};

/// Roots of V'(s) = 4 |V(s)|^(3/2) on a log grid up to the tail radius.
SRoots solve_s(const Potential& pot, double tol = kDefaultRootTol);

/// Smallest positive root of t = int_0^t r^2 |V| dr, if any.
std::optional<double> solve_t(const Potential& pot, double tol = kDefaultRootTol);

/// Root of int_0^a r^2|V| = a^2 int_a^inf |V| (maximizer of the Cohn condition).
double solve_a_cohn(const Potential& pot, double tol = kDefaultRootTol);

/// Root of int |V| (1 - a^2|V|) / (1 + a^2|V|)^2 dr = 0.
double solve_a_calogero(const Potential& pot, double tol = kDefaultRootTol);

}  // namespace nbound
