#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nbound {

/// Shapes known to the library. All built-ins are attractive and monotone.
enum class Kind {
  SquareWell,
  PoschlTeller,
  Exponential,
  Hulthen,
  Yukawa,
  Stis,
  Tabulated,
  KleinGordonReduced,
};

std::string_view to_string(Kind kind);

/// Accepts the canonical lowercase names plus a few short aliases ("sw", "pt", ...).
std::optional<Kind> parse_kind(std::string_view name);

struct Sample {
  double r;
  double v;
};

class TabulatedShape;

/// An attractive, monotonically nondecreasing central potential in units
/// where hbar^2/(2m) = 1, so V carries dimension 1/length^2.
///
/// Values are immutable after construction and may be shared across threads.
/// Potentials with a compact support are left-closed at the edge: V(support_end)
/// is the inner value and V vanishes for r > support_end.
class Potential {
 public:
  /// Built-in shapes. `alpha` is required for Stis and rejected otherwise.
  static Potential builtin(Kind kind, double g, double R = 1.0,
                           std::optional<double> alpha = std::nullopt);

  /// Monotone piecewise-cubic interpolation of (r, V) samples, zero beyond the
  /// last radius. Two samples may share a radius to encode an upward jump.
  static Potential from_table(std::vector<Sample> samples);

  /// Same interpolation without admissibility checks; used for diagnostics.
  static Potential from_table_unchecked(std::vector<Sample> samples);

  /// Same shape with a different coupling; built-ins only.
  Potential with_coupling(double g) const;

  Kind kind() const { return kind_; }
  double g() const { return g_; }
  double R() const { return R_; }
  std::optional<double> alpha() const { return alpha_; }
  bool origin_singular() const { return origin_singular_; }
  std::optional<double> support_end() const { return support_end_; }

  /// Characteristic length used for grids and panel splits.
  double scale() const;

  /// Radii in (0, support_end] where V or V' is not smooth.
  std::vector<double> breakpoints() const;

  /// True when V jumps at r (derivative undefined there).
  bool is_jump(double r) const;

  double eval(double r) const;
  double operator()(double r) const { return eval(r); }

  /// Right limit of V at r; differs from eval only at jumps.
  double eval_right(double r) const;

  double deriv(double r) const;

  std::string describe() const;

  /// Raw samples of a tabulated potential; empty otherwise.
  const std::vector<Sample>& samples() const;

  /// For Klein-Gordon reduced potentials: the underlying vector potential.
  const Potential* kg_base() const { return kg_base_.get(); }
  double kg_mass() const { return kg_mass_; }

  friend Potential kg_reduce_unchecked(const Potential& w, double mass);

 private:
  Potential() = default;

  Kind kind_ = Kind::SquareWell;
  double g_ = 1.0;
  double R_ = 1.0;
  std::optional<double> alpha_;
  bool origin_singular_ = false;
  std::optional<double> support_end_;
  std::shared_ptr<const TabulatedShape> table_;
  std::shared_ptr<const Potential> kg_base_;
  double kg_mass_ = 0.0;
};

/// The fourth component of a 4-vector potential, W(r) <= 0 and nondecreasing,
/// together with the particle mass.
struct KgPotential {
  Potential w;
  double mass;
};

/// Zero-kinetic-energy S-wave Klein-Gordon problem as an effective
/// Schroedinger potential, V = 2 m W - W^2.
Potential kg_reduce(const KgPotential& kg);

struct Violation {
  double r;
  std::string what;
};

struct Diagnostics {
  bool pass = true;
  bool origin_singular = false;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
};

/// Checks sign, monotonicity and the decay envelopes r^(2-eps) V -> 0 at the
/// origin and r^(2+eps) V -> 0 at infinity on a log-spaced grid.
Diagnostics validate(const Potential& pot, int grid_size = 1024,
                     double epsilon = 0.1);

}  // namespace nbound
