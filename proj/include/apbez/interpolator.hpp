#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "apbez/area.hpp"
#include "apbez/bezier.hpp"
#include "apbez/error.hpp"
#include "apbez/metrics.hpp"
#include "apbez/parallel.hpp"
#include "apbez/targets.hpp"

namespace apbez {

/// Area-preserving construction with r1 = h + P h^3 (measured along x).
/// An empty P selects the averaged default.
struct StandardAP {
  std::optional<double> P;
};

/// Grid search over r1 in (0, 3h] subject to the area constraint.
/// `objective` overrides the default (L-infinity for graph targets,
/// Hausdorff for parametric ones).
struct OptimizedAP {
  int grid_n = 256;
  int samples = 2000;
  std::optional<Metric> objective;
};

/// Classical cubic Hermite interpolant in the graph frame; not area preserving.
struct HermiteBaseline {};

using Mode = std::variant<StandardAP, OptimizedAP, HermiteBaseline>;

inline void validate(const Mode& mode) {
  if (const auto* o = std::get_if<OptimizedAP>(&mode)) {
    if (o->grid_n < 8) throw Error(ErrorCode::InvalidConfig, "grid_n must be at least 8");
    if (o->samples < 100) throw Error(ErrorCode::InvalidConfig, "samples must be at least 100");
  }
  if (const auto* s = std::get_if<StandardAP>(&mode)) {
    if (s->P && !std::isfinite(*s->P)) throw Error(ErrorCode::InvalidConfig, "P must be finite");
  }
}

inline bool is_area_preserving(const Mode& mode) { return !std::holds_alternative<HermiteBaseline>(mode); }

struct SegmentOptions {
  double area_perturbation = 0.0;  // M: prescribed area becomes C + M h^5
  int linf_samples = kDefaultLinfSamples;
  int hausdorff_samples = kDefaultHausdorffSamples;
  bool hausdorff_for_graphs = false;
};

struct Segment {
  CubicBezier bezier;  // original coordinates
  CubicBezier local;   // working frame
  SegmentGeometry geometry;
  double r1 = 0.0, r2 = 0.0;  // speeds |B'(0)|, |B'(1)| in the working frame
  double prescribed_area = 0.0;
  ErrorRecord diagnostics;

  const Frame& frame() const { return geometry.frame; }
  double r1_graph() const { return unit_to_graph(r1, geometry.data.alpha); }
  double r2_graph() const { return unit_to_graph(r2, geometry.data.beta); }
};

namespace detail {

inline SegmentGeometry prepare(const Target& target, double s0, double s1, const SegmentOptions& opt) {
  SegmentGeometry g = hermite_segment_data(target, s0, s1);
  if (opt.area_perturbation != 0.0) {
    g.data.area += opt.area_perturbation * std::pow(g.h, 5);
    g.spec = area_spec(g.data);
  }
  return g;
}

template <class Fn>
auto refine_on_failure(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::InfeasibleMagnitude:
      case ErrorCode::DegenerateDenominator:
      case ErrorCode::InvalidMagnitude:
      case ErrorCode::Domain:
        throw Error(ErrorCode::NeedsRefinement, e.what());
      default:
        throw;
    }
  }
}

inline bool collinear(const FeasibilityReport& r) { return r.classification == SignPattern::AllZero; }

inline void require_compatible(const FeasibilityReport& r) {
  if (!r.compatible) throw Error(ErrorCode::NeedsRefinement, "area constraint infeasible: " + describe(r));
}

// Unit-speed magnitudes of the standard construction, or of the straight
// line when the data is collinear.
inline std::pair<double, double> standard_magnitudes(const SegmentGeometry& g, std::optional<double> P) {
  const auto report = classify_feasibility(g.data, g.spec);
  require_compatible(report);
  if (!(g.data.alpha.x > 0.0) || !(g.data.beta.x > 0.0))
    throw Error(ErrorCode::NeedsRefinement, "tangent turns back along the working x-axis");
  if (collinear(report)) return {graph_to_unit(g.h, g.data.alpha), graph_to_unit(g.h, g.data.beta)};
  const double p = P ? *P : p_avg(g.data, g.spec, g.h);
  const double r1 = graph_to_unit(g.h + p * g.h * g.h * g.h, g.data.alpha);
  return refine_on_failure([&] { return std::pair{require_positive(r1, "r1"), solve_r2(g.data, g.spec, r1)}; });
}

inline std::vector<Vec2> local_target_samples(const Target& target, const SegmentGeometry& g, int n) {
  return sample_arclength([&](double s) { return local_point(target, g, s); }, g.s0, g.s1, n);
}

inline double local_linf(const Target& target, const SegmentGeometry& g, const CubicBezier& b, int n) {
  return linf_error(b, [&](double x) { return local_graph_y(target, g, x); }, n);
}

inline Segment finish(const Target& target, const SegmentGeometry& g, double r1, double r2,
                      const SegmentOptions& opt) {
  Segment seg;
  seg.geometry = g;
  seg.r1 = r1;
  seg.r2 = r2;
  seg.local = bezier_from_hermite(g.data, r1, r2);
  seg.bezier = to_global(seg.local, g.frame);
  // Endpoints are taken from the target so adjacent segments share them exactly.
  seg.bezier.p0 = target.eval(g.s0);
  seg.bezier.p3 = target.eval(g.s1);
  seg.prescribed_area = g.data.area;

  ErrorRecord& rec = seg.diagnostics;
  rec.h = g.h;
  rec.area_residual = std::abs(bezier_signed_area(g.data, r1, r2) - g.data.area);
  try {
    rec.linf = local_linf(target, g, seg.local, opt.linf_samples);
  } catch (const Error&) {
    rec.linf = std::numeric_limits<double>::quiet_NaN();
  }
  if (target.kind() == TargetKind::Parametric || opt.hausdorff_for_graphs) {
    const auto ref = local_target_samples(target, g, opt.hausdorff_samples);
    const auto cur = sample_arclength(seg.local, opt.hausdorff_samples);
    rec.hausdorff = hausdorff_polyline(cur, ref);
  }
  return seg;
}

}  // namespace detail

/// Standard area-preserving segment: r1 = h + P h^3, r2 from the area constraint.
inline Segment interpolate_standard(const Target& target, double s0, double s1, std::optional<double> P = {},
                                    const SegmentOptions& opt = {}) {
  const SegmentGeometry g = detail::prepare(target, s0, s1, opt);
  const auto [r1, r2] = detail::refine_on_failure([&] { return detail::standard_magnitudes(g, P); });
  return detail::finish(target, g, r1, r2, opt);
}

/// Area-preserving segment whose r1 minimises the error over a uniform grid
/// on (0, 3h]. The standard pairs (averaged P and P = 0) are always
/// candidates, so the result is never worse than interpolate_standard under
/// the same objective.
inline Segment interpolate_optimized(const Target& target, double s0, double s1, const OptimizedAP& cfg = {},
                                     const SegmentOptions& opt = {}) {
  validate(Mode{cfg});
  const SegmentGeometry g = detail::prepare(target, s0, s1, opt);
  const auto report = classify_feasibility(g.data, g.spec);
  detail::require_compatible(report);
  const HermiteData& data = g.data;
  const double h = g.h;

  const Metric objective =
      cfg.objective.value_or(target.kind() == TargetKind::Graph ? Metric::Linf : Metric::Hausdorff);
  std::vector<Vec2> reference;
  if (objective == Metric::Hausdorff) reference = detail::local_target_samples(target, g, cfg.samples);
  auto score = [&](double r1, double r2) {
    const CubicBezier b = bezier_from_hermite(data, r1, r2);
    if (objective == Metric::Linf) return detail::local_linf(target, g, b, cfg.samples);
    return hausdorff_polyline(sample_arclength(b, cfg.samples), reference);
  };

  struct Best {
    double r1, r2, err, tie;
  };
  std::optional<Best> best;
  auto offer = [&](double r1, double r2) {
    double err;
    try {
      err = score(r1, r2);
    } catch (const Error&) {
      return;
    }
    if (!std::isfinite(err)) return;
    const double tie = std::abs(unit_to_graph(r1, data.alpha) - h);
    if (!best || err < best->err || (err == best->err && tie < best->tie)) best = Best{r1, r2, err, tie};
  };

  for (const std::optional<double> P : {std::optional<double>{}, std::optional<double>{0.0}}) {
    try {
      const auto [r1, r2] = detail::standard_magnitudes(g, P);
      offer(r1, r2);
    } catch (const Error&) {
    }
  }
  if (data.alpha.x > 0.0 && data.beta.x > 0.0) {
    for (int i = 1; i <= cfg.grid_n; ++i) {
      const double r1 = graph_to_unit(3.0 * h * i / cfg.grid_n, data.alpha);
      double r2;
      try {
        r2 = solve_r2(data, g.spec, r1);
      } catch (const Error&) {
        continue;
      }
      const double r2g = unit_to_graph(r2, data.beta);
      if (!(r2g > 0.0 && r2g <= 3.0 * h) || !monotone_x(data, r1, r2)) continue;
      offer(r1, r2);
    }
  }
  if (!best) throw Error(ErrorCode::NeedsRefinement, "no admissible (r1, r2) on the search grid: " + describe(report));
  return detail::finish(target, g, best->r1, best->r2, opt);
}

/// Cubic Hermite interpolant of the graph, written as a Bezier with x-linear
/// parametrisation (both magnitudes equal h along x).
inline Segment interpolate_hermite(const Target& target, double s0, double s1, const SegmentOptions& opt = {}) {
  const SegmentGeometry g = detail::prepare(target, s0, s1, opt);
  if (!g.graph_frame)
    throw Error(ErrorCode::Domain, "Hermite baseline needs a graph target without near-vertical tangents");
  return detail::finish(target, g, graph_to_unit(g.h, g.data.alpha), graph_to_unit(g.h, g.data.beta), opt);
}

inline Segment interpolate_segment(const Target& target, double s0, double s1, const Mode& mode,
                                   const SegmentOptions& opt = {}) {
  return std::visit(
      [&](const auto& m) -> Segment {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, StandardAP>)
          return interpolate_standard(target, s0, s1, m.P, opt);
        else if constexpr (std::is_same_v<M, OptimizedAP>)
          return interpolate_optimized(target, s0, s1, m, opt);
        else
          return interpolate_hermite(target, s0, s1, opt);
      },
      mode);
}

inline constexpr int kMaxRefinementDepth = 8;

namespace detail {

inline void refine_interval(const Target& target, double a, double b, const Mode& mode, const SegmentOptions& opt,
                            int depth, std::vector<Segment>& out) {
  try {
    out.push_back(interpolate_segment(target, a, b, mode, opt));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NeedsRefinement) throw;
    if (depth >= kMaxRefinementDepth) throw InfeasibleError(a, b, e.what());
    const double mid = 0.5 * (a + b);
    refine_interval(target, a, mid, mode, opt, depth + 1, out);
    refine_interval(target, mid, b, mode, opt, depth + 1, out);
  }
}

}  // namespace detail

/// One segment per interval of `breakpoints`, bisecting any interval that has
/// no admissible interpolant. Intervals are processed concurrently; the
/// result is in breakpoint order.
inline std::vector<Segment> interpolate_piecewise(const Target& target, std::span<const double> breakpoints,
                                                  const Mode& mode, const SegmentOptions& opt = {}) {
  validate(mode);
  if (breakpoints.size() < 2) throw Error(ErrorCode::Domain, "need at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i])) throw Error(ErrorCode::Domain, "breakpoints must be strictly increasing");

  auto pieces = parallel_map(breakpoints.size() - 1, [&](std::size_t i) {
    std::vector<Segment> local;
    detail::refine_interval(target, breakpoints[i], breakpoints[i + 1], mode, opt, 0, local);
    return local;
  });
  std::vector<Segment> out;
  for (auto& p : pieces)
    for (auto& s : p) out.push_back(std::move(s));
  return out;
}

}  // namespace apbez
