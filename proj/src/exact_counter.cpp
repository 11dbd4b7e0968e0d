#include "nbound/exact_counter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dopri5.hpp"
#include "nbound/error.hpp"
#include "nbound/numfmt.hpp"

namespace nbound {
namespace {

using detail::Vec;

constexpr double kPi = std::numbers::pi;
constexpr double kRenorm = 1e100;
constexpr double kMarginal = 1e-6;

struct Start {
  double r;
  double u;
  double du;
};

// Regular potentials start at the origin. For a singular core, one Picard
// iteration of u(r) = r + int_0^r (r - s) V(s) u(s) ds gives u and u' at a
// radius small enough that the correction is below 1e-10.
Start origin_start(const Potential& pot) {
  if (!pot.origin_singular()) return {0.0, 0.0, 1.0};
  double r1 = 1e-6 * pot.scale();
  while (integrate(pot, {Moment::RAbsV, 0.0, r1}, 1e-8) > 1e-10) {
    r1 *= 0.5;
    if (r1 < 1e-250) throw NumericalError("cannot start the wave function near the origin");
  }
  const double first = integrate_radial(
      pot, [](double r, double v) { return r * v; }, 0.0, r1, 1e-8);
  const double second = integrate_radial(
      pot, [r1](double r, double v) { return (r1 - r) * r * v; }, 0.0, r1, 1e-8);
  return {r1, r1 + second, 1.0 + first};
}

std::vector<double> segment_edges(const Potential& pot, double start, double horizon) {
  std::vector<double> edges{start};
  for (double bp : pot.breakpoints()) {
    if (bp > start && bp < horizon) edges.push_back(bp);
  }
  edges.push_back(horizon);
  return edges;
}

// V on the closed segment [a, b], taking the right limit at a.
double v_in(const Potential& pot, double r, double a) {
  return r <= a ? pot.eval_right(a) : pot.eval(r);
}

double step_cap(double v) {
  const double a = std::abs(v);
  return a > 0.0 ? 0.5 / std::sqrt(a) : std::numeric_limits<double>::infinity();
}

}  // namespace

double count_horizon(const Potential& pot, double rel_tol) {
  if (pot.support_end()) return *pot.support_end();
  double h = tail_radius(pot, rel_tol);
  const double limit = 1e4 * pot.scale();
  while (h * h * std::abs(pot.eval(h)) > 1e-12 && h < limit) h *= 1.25;
  return h;
}

NodeCountResult count_nodes(const Potential& pot, double rel_tol, std::vector<WaveSample>* samples) {
  NodeCountResult res;
  res.method = CountMethod::NodeCount;
  res.r_max = count_horizon(pot, rel_tol);
  const Start st = origin_start(pot);
  const double scale = pot.scale();
  const double tol = std::max(rel_tol, 1e-13);

  Vec<2> y{st.u, st.du};
  double h = std::min(1e-3 * scale, step_cap(pot.eval(std::max(st.r, 1e-12 * scale))));
  auto edges = segment_edges(pot, st.r, res.r_max);

  auto record = [&](double r, const Vec<2>& s, double v) {
    if (!samples) return;
    const double k = std::max(std::sqrt(std::abs(v)), 1.0 / (r + scale));
    const double amp = std::hypot(s[0], s[1] / k);
    samples->push_back({r, s[0] / amp, s[1] / amp});
  };
  if (samples) {
    samples->clear();
    record(st.r, y, pot.eval_right(st.r > 0.0 ? st.r : 0.0));
  }

  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double a = edges[seg];
    const double b = edges[seg + 1];
    auto rhs = [&](double r, const Vec<2>& s) { return Vec<2>{s[1], v_in(pot, r, a) * s[0]}; };
    auto norm = [&](double r, const Vec<2>& s, const Vec<2>& err) {
      const double w = std::max(std::sqrt(std::abs(v_in(pot, r, a))), 1.0 / (r + scale));
      const double size = w * std::abs(s[0]) + std::abs(s[1]);
      return (w * std::abs(err[0]) + std::abs(err[1])) / (tol * size);
    };
    auto cap = [&](double r) { return step_cap(v_in(pot, r, a)); };
    auto on_step = [&](double r0, const Vec<2>& y0, const Vec<2>& k0, double r1, Vec<2>& y1,
                       Vec<2>& k1) {
      if (y0[0] != 0.0 && (y1[0] == 0.0 || (y0[0] < 0.0) != (y1[0] < 0.0))) {
        res.nodes.push_back(y1[0] == 0.0 ? r1
                                         : detail::hermite_root(r0, y0[0], k0[0], r1, y1[0], k1[0]));
      }
      if (y0[1] != 0.0 && (y1[1] == 0.0 || (y0[1] < 0.0) != (y1[1] < 0.0))) {
        res.extrema.push_back(
            y1[1] == 0.0 ? r1 : detail::hermite_root(r0, y0[1], k0[1], r1, y1[1], k1[1]));
      }
      const double big = std::max(std::abs(y1[0]), std::abs(y1[1]));
      if (big > kRenorm) {
        for (auto* v : {&y1, &k1}) {
          (*v)[0] /= big;
          (*v)[1] /= big;
        }
      }
      if (samples) record(r1, y1, v_in(pot, r1, a));
    };
    y = detail::dopri5_drive<2>(rhs, a, b, y, h, norm, cap, on_step);
  }

  const double u = y[0];
  const double du = y[1];
  if (u != 0.0 && du != 0.0 && (u < 0.0) != (du < 0.0)) {
    res.nodes.push_back(res.r_max - u / du);
    res.notes.push_back("node beyond the horizon from the linear tail");
  }
  if (std::abs(du) * res.r_max < kMarginal * std::abs(u)) {
    res.marginal_flag = true;
    res.notes.push_back("u' nearly vanishes at the horizon: zero-energy resonance suspected");
  }
  res.n = static_cast<long>(res.nodes.size());
  return res;
}

PhaseProfile phase_profile(const Potential& pot, double rel_tol, bool keep_samples) {
  PhaseProfile out;
  out.r_max = count_horizon(pot, rel_tol);
  const double scale = pot.scale();
  const double tol = std::max(rel_tol, 1e-13);

  auto fall_back = [&](std::string why) {
    NodeCountResult nc = count_nodes(pot, rel_tol);
    out.fell_back = true;
    out.n = nc.n;
    out.eta_end = kPi * static_cast<double>(nc.n);
    out.note = std::move(why);
    return out;
  };

  const Start st = origin_start(pot);
  auto edges = segment_edges(pot, st.r, out.r_max);
  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    if (pot.eval(edges[seg + 1]) == 0.0 && seg + 2 < edges.size()) {
      return fall_back("|V| vanishes inside the support");
    }
  }
  if (pot.eval(edges.back()) == 0.0) return fall_back("|V| vanishes at the end of the support");

  // tan(eta) = |V|^(1/2) u / u'
  double eta = 0.0;
  if (st.r > 0.0) eta = std::atan2(std::sqrt(std::abs(pot.eval(st.r))) * st.u, st.du);
  if (keep_samples) out.samples.push_back({st.r, eta});

  auto rematch = [](double e, double ratio) {
    const double m = std::floor(e / kPi);
    const double phi = e - m * kPi;
    double phi_new = phi;
    if (phi < kPi / 2.0) {
      phi_new = std::atan(ratio * std::tan(phi));
    } else if (phi > kPi / 2.0) {
      phi_new = kPi + std::atan(ratio * std::tan(phi));
    }
    return m * kPi + phi_new;
  };

  double h = 1e-3 * scale;
  try {
    for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
      const double a = edges[seg];
      const double b = edges[seg + 1];
      const double a_in = std::nextafter(a, b);
      const double b_in = std::nextafter(b, a);
      auto rhs = [&](double r, const Vec<1>& e) {
        const double v = v_in(pot, r, a);
        const double d = pot.deriv(std::clamp(r, a_in, b_in));
        return Vec<1>{std::sqrt(std::abs(v)) - d / (4.0 * std::abs(v)) * std::sin(2.0 * e[0])};
      };
      auto norm = [&](double, const Vec<1>&, const Vec<1>& err) { return std::abs(err[0]) / tol; };
      auto cap = [&](double r) { return step_cap(v_in(pot, r, a)); };
      auto on_step = [&](double, const Vec<1>&, const Vec<1>&, double r1, Vec<1>& e1, Vec<1>&) {
        if (keep_samples) out.samples.push_back({r1, e1[0]});
      };
      Vec<1> e{eta};
      e = detail::dopri5_drive<1>(rhs, a, b, e, h, norm, cap, on_step);
      eta = e[0];
      if (seg + 2 < edges.size() && pot.is_jump(b)) {
        const double ratio = std::sqrt(std::abs(pot.eval_right(b)) / std::abs(pot.eval(b)));
        eta = rematch(eta, ratio);
        if (keep_samples) out.samples.push_back({b, eta});
      }
    }
  } catch (const NumericalError& e) {
    return fall_back(std::string("phase integration failed: ") + e.what());
  }

  out.eta_end = rematch(eta, 0.0);
  if (keep_samples) out.samples.push_back({out.r_max, out.eta_end});
  out.n = std::lround(out.eta_end / kPi);
  return out;
}

}  // namespace nbound
