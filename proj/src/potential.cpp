#include "nbound/potential.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include <math.h>  // boost pchip calls isnan unqualified

#include <boost/math/interpolators/pchip.hpp>

#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::SquareWell: return "squarewell";
    case Kind::PoschlTeller: return "poschlteller";
    case Kind::Exponential: return "exponential";
    case Kind::Hulthen: return "hulthen";
    case Kind::Yukawa: return "yukawa";
    case Kind::Stis: return "stis";
    case Kind::Tabulated: return "tabulated";
    case Kind::KleinGordonReduced: return "kg-reduced";
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '-' || c == '_'; }),
          s.end());
  if (s == "squarewell" || s == "sw") return Kind::SquareWell;
  if (s == "poschlteller" || s == "pt") return Kind::PoschlTeller;
  if (s == "exponential" || s == "exp" || s == "e") return Kind::Exponential;
  if (s == "hulthen" || s == "h") return Kind::Hulthen;
  if (s == "yukawa" || s == "y") return Kind::Yukawa;
  if (s == "stis") return Kind::Stis;
  if (s == "tabulated" || s == "table") return Kind::Tabulated;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tabulated shapes

class TabulatedShape {
 public:
  explicit TabulatedShape(std::vector<Sample> samples) : samples_(std::move(samples)) {
    Segment cur;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (i > 0 && samples_[i].r == samples_[i - 1].r) {
        jumps_.push_back(samples_[i].r);
        segments_.push_back(std::move(cur));
        cur = Segment{};
      }
      cur.x.push_back(samples_[i].r);
      cur.y.push_back(samples_[i].v);
    }
    segments_.push_back(std::move(cur));
    for (auto& seg : segments_) {
      if (seg.x.size() >= 4) {
        auto x = seg.x;
        auto y = seg.y;
        seg.spline.emplace(std::move(x), std::move(y));
      }
    }

    const Sample& last = samples_.back();
    if (last.v != 0.0) {
      support_end_ = last.r;
    } else {
      auto it = std::find_if(samples_.begin(), samples_.end(),
                             [](const Sample& s) { return s.v == 0.0; });
      support_end_ = it->r;
    }
  }

  const std::vector<Sample>& samples() const { return samples_; }
  double support_end() const { return support_end_; }

  double eval(double r) const {
    if (r > samples_.back().r) return 0.0;
    if (r <= samples_.front().r) return samples_.front().v;
    for (const auto& seg : segments_) {
      if (r <= seg.x.back()) return seg.eval(std::max(r, seg.x.front()));
    }
    return 0.0;
  }

  double eval_right(double r) const {
    if (r >= samples_.back().r) return 0.0;
    if (r < samples_.front().r) return samples_.front().v;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const auto& seg = segments_[k];
      if (r < seg.x.back()) return seg.eval(std::max(r, seg.x.front()));
      if (r == seg.x.back() && k + 1 < segments_.size()) return segments_[k + 1].y.front();
    }
    return 0.0;
  }

  double deriv(double r) const {
    if (r > samples_.back().r || r < samples_.front().r) return 0.0;
    for (const auto& seg : segments_) {
      if (r <= seg.x.back()) return seg.deriv(r);
    }
    return 0.0;
  }

  bool is_jump(double r) const {
    if (r == samples_.back().r && samples_.back().v != 0.0) return true;
    return std::find(jumps_.begin(), jumps_.end(), r) != jumps_.end();
  }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& s : samples_) {
      if (s.r > 0.0 && s.r <= support_end_ && (out.empty() || out.back() != s.r)) {
        out.push_back(s.r);
      }
    }
    return out;
  }

 private:
  struct Segment {
    std::vector<double> x;
    std::vector<double> y;
    std::optional<boost::math::interpolators::pchip<std::vector<double>>> spline;

    double eval(double r) const {
      if (x.size() == 1) return y.front();
      if (spline) return (*spline)(r);
      auto it = std::upper_bound(x.begin(), x.end(), r);
      std::size_t i = std::min<std::size_t>(
          x.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - x.begin() - 1)));
      double t = (r - x[i]) / (x[i + 1] - x[i]);
      return y[i] + t * (y[i + 1] - y[i]);
    }

    double deriv(double r) const {
      if (x.size() == 1) return 0.0;
      if (spline) return spline->prime(r);
      auto it = std::upper_bound(x.begin(), x.end(), r);
      std::size_t i = std::min<std::size_t>(
          x.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - x.begin() - 1)));
      return (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    }
  };

  std::vector<Sample> samples_;
  std::vector<Segment> segments_;
  std::vector<double> jumps_;
  double support_end_ = 0.0;
};

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidInput(std::string(what) + " must be a finite positive number");
  }
}

void check_sorted(const std::vector<Sample>& samples) {
  if (samples.size() < 2) throw InvalidInput("a tabulated potential needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].r) || !std::isfinite(samples[i].v)) {
      throw InvalidInput("tabulated samples must be finite");
    }
    if (i > 0 && samples[i].r < samples[i - 1].r) {
      throw InvalidInput("tabulated radii must be increasing");
    }
  }
  if (samples.front().r < 0.0) throw InvalidInput("tabulated radii must be nonnegative");
}

}  // namespace

// ---------------------------------------------------------------------------

Potential Potential::builtin(Kind kind, double g, double R, std::optional<double> alpha) {
  if (kind == Kind::Tabulated || kind == Kind::KleinGordonReduced) {
    throw InvalidInput("not a built-in potential kind");
  }
  require_positive(g, "g");
  require_positive(R, "R");
  if (kind == Kind::Stis) {
    if (!alpha) throw InvalidInput("stis requires alpha");
    require_positive(*alpha, "alpha");
  } else if (alpha) {
    throw InvalidInput(std::string(to_string(kind)) + " does not take alpha");
  }

  Potential p;
  p.kind_ = kind;
  p.g_ = g;
  p.R_ = R;
  p.alpha_ = alpha;
  p.origin_singular_ = (kind == Kind::Hulthen || kind == Kind::Yukawa);
  if (kind == Kind::SquareWell) p.support_end_ = R;
  if (kind == Kind::Stis) p.support_end_ = *alpha * R;
  return p;
}

Potential Potential::from_table_unchecked(std::vector<Sample> samples) {
  check_sorted(samples);
  for (std::size_t i = 2; i < samples.size(); ++i) {
    if (samples[i].r == samples[i - 1].r && samples[i].r == samples[i - 2].r) {
      throw InvalidInput("duplicate radii: at most two samples may share a radius");
    }
  }
  Potential p;
  p.kind_ = Kind::Tabulated;
  auto shape = std::make_shared<const TabulatedShape>(std::move(samples));
  p.support_end_ = shape->support_end();
  p.R_ = shape->support_end() > 0.0 ? shape->support_end() : 1.0;
  p.g_ = std::sqrt(std::abs(shape->samples().front().v)) * p.R_;
  p.table_ = std::move(shape);
  return p;
}

Potential Potential::from_table(std::vector<Sample> samples) {
  check_sorted(samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].v > 0.0) {
      throw InvalidInput("positive value at r = " + format_shortest(samples[i].r) +
                         " (the potential must be attractive)");
    }
    if (i == 0) continue;
    if (samples[i].v < samples[i - 1].v) {
      throw InvalidInput("nonmonotone values at r = " + format_shortest(samples[i].r));
    }
    if (samples[i].r == samples[i - 1].r) {
      bool triple = i >= 2 && samples[i - 2].r == samples[i].r;
      if (triple || samples[i].v == samples[i - 1].v) {
        throw InvalidInput("duplicate radii at r = " + format_shortest(samples[i].r));
      }
    }
  }
  return from_table_unchecked(std::move(samples));
}

Potential Potential::with_coupling(double g) const {
  if (kind_ == Kind::Tabulated || kind_ == Kind::KleinGordonReduced) {
    throw InvalidInput("coupling can only be changed on built-in potentials");
  }
  return builtin(kind_, g, R_, alpha_);
}

double Potential::scale() const {
  if (kg_base_) return kg_base_->scale();
  return R_;
}

std::vector<double> Potential::breakpoints() const {
  if (kg_base_) return kg_base_->breakpoints();
  if (table_) return table_->breakpoints();
  if (support_end_) return {*support_end_};
  return {};
}

bool Potential::is_jump(double r) const {
  if (kg_base_) return kg_base_->is_jump(r);
  if (table_) return table_->is_jump(r);
  return support_end_ && r == *support_end_;
}

double Potential::eval(double r) const {
  if (!(r >= 0.0)) throw InvalidInput("radius must be nonnegative");
  if (r == 0.0 && origin_singular_) throw InvalidInput("potential is singular at the origin");

  const double x = r / R_;
  const double s = g_ * g_ / (R_ * R_);
  switch (kind_) {
    case Kind::SquareWell:
      return r <= R_ ? -s : 0.0;
    case Kind::PoschlTeller: {
      double c = std::cosh(x);
      return -s / (c * c);
    }
    case Kind::Exponential:
      return -s * std::exp(-x);
    case Kind::Hulthen:
      return -s / std::expm1(x);
    case Kind::Yukawa:
      return -g_ * g_ * std::exp(-x) / (r * R_);
    case Kind::Stis:
      return r <= *alpha_ * R_ ? -g_ * g_ / ((R_ + r) * (R_ + r)) : 0.0;
    case Kind::Tabulated:
      return table_->eval(r);
    case Kind::KleinGordonReduced: {
      double w = kg_base_->eval(r);
      return 2.0 * kg_mass_ * w - w * w;
    }
  }
  return 0.0;
}

double Potential::eval_right(double r) const {
  if (!is_jump(r)) return eval(r);
  if (table_) return table_->eval_right(r);
  if (kg_base_) {
    double w = kg_base_->eval_right(r);
    return 2.0 * kg_mass_ * w - w * w;
  }
  return 0.0;
}

double Potential::deriv(double r) const {
  if (!(r > 0.0)) throw InvalidInput("derivative requires r > 0");
  if (is_jump(r)) throw InvalidInput("derivative undefined at discontinuity");

  const double x = r / R_;
  const double s = g_ * g_ / (R_ * R_);
  switch (kind_) {
    case Kind::SquareWell:
      return 0.0;
    case Kind::PoschlTeller: {
      double c = std::cosh(x);
      return 2.0 * s / R_ * std::tanh(x) / (c * c);
    }
    case Kind::Exponential:
      return s / R_ * std::exp(-x);
    case Kind::Hulthen: {
      double e = std::exp(-x);
      double d = -std::expm1(-x);
      return s / R_ * e / (d * d);
    }
    case Kind::Yukawa:
      return g_ * g_ / R_ * std::exp(-x) * (1.0 / (r * r) + 1.0 / (r * R_));
    case Kind::Stis:
      return r < *alpha_ * R_ ? 2.0 * g_ * g_ / std::pow(R_ + r, 3) : 0.0;
    case Kind::Tabulated:
      return table_->deriv(r);
    case Kind::KleinGordonReduced: {
      double w = kg_base_->eval(r);
      return 2.0 * kg_base_->deriv(r) * (kg_mass_ - w);
    }
  }
  return 0.0;
}

const std::vector<Sample>& Potential::samples() const {
  static const std::vector<Sample> empty;
  return table_ ? table_->samples() : empty;
}

std::string Potential::describe() const {
  switch (kind_) {
    case Kind::Tabulated:
      return "tabulated(samples=" + std::to_string(table_->samples().size()) + ")";
    case Kind::KleinGordonReduced:
      return "kg(m=" + format_shortest(kg_mass_) + ", W=" + kg_base_->describe() + ")";
    default: {
      std::string out = std::string(to_string(kind_)) + "(g=" + format_shortest(g_) +
                        ", R=" + format_shortest(R_);
      if (alpha_) out += ", alpha=" + format_shortest(*alpha_);
      return out + ")";
    }
  }
}

// ---------------------------------------------------------------------------
// Klein-Gordon reduction

Potential kg_reduce_unchecked(const Potential& w, double mass) {
  Potential p;
  p.kind_ = Kind::KleinGordonReduced;
  p.g_ = w.g();
  p.R_ = w.R();
  p.origin_singular_ = w.origin_singular();
  p.support_end_ = w.support_end();
  p.kg_base_ = std::make_shared<const Potential>(w);
  p.kg_mass_ = mass;
  return p;
}

Potential kg_reduce(const KgPotential& kg) {
  require_positive(kg.mass, "mass");
  Diagnostics diag = validate(kg.w, 512);
  for (const auto& v : diag.violations) {
    if (v.what.find("positive") != std::string::npos) {
      throw InvalidInput("W must be nonpositive (violated at r = " + format_shortest(v.r) + ")");
    }
  }
  if (!diag.pass) {
    throw InvalidInput("W is not an admissible vector potential: " +
                       diag.violations.front().what);
  }
  if (kg.w.origin_singular()) {
    // r^(1-eps) W(r) must vanish at the origin.
    const double eps = 0.1;
    double r1 = 1e-10 * kg.w.scale();
    double r2 = 1e-5 * kg.w.scale();
    double e1 = std::pow(r1, 1.0 - eps) * std::abs(kg.w.eval(r1));
    double e2 = std::pow(r2, 1.0 - eps) * std::abs(kg.w.eval(r2));
    if (e1 >= e2) {
      throw InvalidInput("W is too singular at the origin for the Klein-Gordon reduction");
    }
  }
  return kg_reduce_unchecked(kg.w, kg.mass);
}

// ---------------------------------------------------------------------------
// Validation

Diagnostics validate(const Potential& pot, int grid_size, double epsilon) {
  if (grid_size < 16) throw InvalidInput("validate needs at least 16 grid points");
  Diagnostics out;
  out.origin_singular = pot.origin_singular();
  if (pot.origin_singular()) out.notes.emplace_back("singular at the origin");

  const double scale = pot.scale();
  const double lo = 1e-6 * scale;
  const double hi = pot.support_end() ? std::max(1.5 * *pot.support_end(), 10.0 * lo)
                                      : 100.0 * scale;
  const std::size_t n = static_cast<std::size_t>(grid_size);
  std::vector<double> r(n);
  std::vector<double> v(n);
  std::vector<double> dv(n, 0.0);
  std::vector<char> has_dv(n, 0);
  const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    r[i] = lo * std::exp(ratio * static_cast<double>(i));
    v[i] = pot.eval(r[i]);
    if (!pot.is_jump(r[i])) {
      dv[i] = pot.deriv(r[i]);
      has_dv[i] = 1;
    }
  }

  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double slack = 1e-12 * vmax;

  auto flag = [&](double at, std::string what) {
    out.pass = false;
    out.violations.push_back({at, std::move(what)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] > slack) flag(r[i], "positive value");
    if (i > 0 && v[i] < v[i - 1] - slack) flag(r[i], "nonmonotone (V decreases)");
    if (has_dv[i] && dv[i] < -1e-12 * std::max(1.0, vmax / scale)) {
      flag(r[i], "negative derivative");
    }
  }

  // Grid sampling can miss a decrease between samples; check the data itself.
  const std::vector<Sample>& samples = pot.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].v > slack) flag(samples[i].r, "positive sample");
    if (i > 0 && samples[i].v < samples[i - 1].v - slack) {
      flag(samples[i].r, "nonmonotone sample");
    }
  }

  // Decay envelopes.
  auto inner = [&](std::size_t i) { return std::pow(r[i], 2.0 - epsilon) * std::abs(v[i]); };
  auto outer = [&](std::size_t i) { return std::pow(r[i], 2.0 + epsilon) * std::abs(v[i]); };
  const std::size_t decade = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::log(10.0) / ratio));
  double inner_max = 0.0;
  double outer_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inner_max = std::max(inner_max, inner(i));
    outer_max = std::max(outer_max, outer(i));
  }
  if (inner(0) > inner(std::min(decade, n - 1)) && inner(0) > 1e-6 * inner_max) {
    flag(r[0], "too singular at the origin (r^(2-eps) V does not vanish)");
  }
  if (!pot.support_end()) {
    std::size_t j = n - 1 >= decade ? n - 1 - decade : 0;
    if (outer(n - 1) > outer(j) && outer(n - 1) > 1e-6 * outer_max) {
      flag(r[n - 1], "slow decay (r^(2+eps) V does not vanish)");
    }
  }
  return out;
}

}  // namespace nbound
