#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apbez/area.hpp"
#include "apbez/bezier.hpp"
#include "apbez/error.hpp"
#include "apbez/quadrature.hpp"
#include "apbez/vec2.hpp"

namespace apbez {

enum class TargetKind { Graph, Parametric };

/// Reference curve s -> <gamma(s), xi(s)>.
///
/// The curve is defined in native coordinates (for graph targets, native x
/// is the parameter itself) and placed in the plane by a rigid `placement`:
/// world = placement.to_global_point(native). Built-in targets have the
/// identity placement; transform_target composes a further rigid motion.
class Target {
 public:
  using CurveFn = std::function<Vec2(double)>;
  using ScalarFn = std::function<double(double)>;

  /// Graph target y = f(x) on [lo, hi]. `antiderivative` is F with F' = f;
  /// when empty, segment areas fall back to adaptive quadrature.
  static Target graph(std::string name, ScalarFn f, ScalarFn fprime, double lo, double hi,
                      ScalarFn antiderivative = {}) {
    Target t;
    t.name_ = std::move(name);
    t.kind_ = TargetKind::Graph;
    t.lo_ = lo;
    t.hi_ = hi;
    t.eval_ = [f](double s) { return Vec2{s, f(s)}; };
    t.deriv_ = [fprime](double s) { return Vec2{1.0, fprime(s)}; };
    t.f_ = std::move(f);
    t.fprime_ = std::move(fprime);
    t.area_ = std::move(antiderivative);
    return t;
  }

  /// Parametric target. `area_antiderivative` is any G with G' = xi * gamma'.
  static Target parametric(std::string name, CurveFn eval, CurveFn deriv, double lo, double hi,
                           ScalarFn area_antiderivative = {}) {
    Target t;
    t.name_ = std::move(name);
    t.kind_ = TargetKind::Parametric;
    t.lo_ = lo;
    t.hi_ = hi;
    t.eval_ = std::move(eval);
    t.deriv_ = std::move(deriv);
    t.area_ = std::move(area_antiderivative);
    return t;
  }

  const std::string& name() const { return name_; }
  TargetKind kind() const { return kind_; }
  std::pair<double, double> domain() const { return {lo_, hi_}; }
  const Frame& placement() const { return placement_; }
  bool has_closed_form_area() const { return static_cast<bool>(area_); }

  Vec2 native_eval(double s) const { return eval_(s); }
  Vec2 native_derivative(double s) const { return deriv_(s); }

  /// Graph function and its derivative in native coordinates (graph targets only).
  double f(double x) const { return require_graph().f_(x); }
  double fprime(double x) const { return require_graph().fprime_(x); }

  Vec2 eval(double s) const { return placement_.to_global_point(eval_(s)); }
  Vec2 derivative(double s) const { return placement_.to_global_vector(deriv_(s)); }
  Vec2 tangent(double s) const {
    const Vec2 d = derivative(s);
    const double n = norm(d);
    if (!(n > 0.0)) throw Error(ErrorCode::Domain, name_ + ": tangent undefined at s=" + std::to_string(s));
    return d / n;
  }

  /// integral of y dx along the native curve from s0 to s1.
  double native_segment_area(double s0, double s1) const {
    if (area_) return area_(s1) - area_(s0);
    return integrate_adaptive([this](double s) { return eval_(s).y * deriv_(s).x; }, s0, s1, 1e-14);
  }

  /// Parametric area integral of xi * gamma' ds of the placed curve.
  ///
  /// With world = R(phi) p + o this reduces exactly to the native area plus
  /// boundary terms: sc [x^2/2 - y^2/2] - s^2 [x y] + int y dx + o_y [X].
  double segment_area(double s0, double s1) const {
    const double base = native_segment_area(s0, s1);
    if (placement_.rotation == 0.0 && placement_.origin == Vec2{}) return base;
    const double phi = -placement_.rotation;
    const double sn = std::sin(phi), cs = std::cos(phi);
    const Vec2 p0 = eval_(s0), p1 = eval_(s1);
    const double sq = 0.5 * ((p1.x * p1.x - p1.y * p1.y) - (p0.x * p0.x - p0.y * p0.y));
    const double xy = p1.x * p1.y - p0.x * p0.y;
    const double dX = eval(s1).x - eval(s0).x;
    return sn * cs * sq - sn * sn * xy + base + placement_.origin.y * dX;
  }

  /// The same curve moved by world' = R(theta) world + offset.
  friend Target transform_target(const Target& t, double theta, const Vec2& offset) {
    Target out = t;
    out.placement_.rotation = t.placement_.rotation - theta;
    out.placement_.origin = rotate(t.placement_.origin, theta) + offset;
    return out;
  }

 private:
  const Target& require_graph() const {
    if (kind_ != TargetKind::Graph) throw Error(ErrorCode::Domain, name_ + " is not a graph target");
    return *this;
  }

  std::string name_;
  TargetKind kind_ = TargetKind::Graph;
  double lo_ = 0.0, hi_ = 1.0;
  CurveFn eval_, deriv_;
  ScalarFn f_, fprime_, area_;
  Frame placement_{};
};

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"circle",     "vanishing",  "cve",      "optimized",
                                                 "piecewise1", "piecewise2", "parabola", "line"};
  return names;
}

inline std::string catalog_listing() {
  std::string out;
  for (const auto& n : builtin_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

/// Built-in reference curves addressed by name.
inline Target make_builtin(std::string_view name) {
  using std::cos;
  using std::exp;
  using std::sin;
  if (name == "circle") {
    return Target::parametric(
        "circle", [](double s) { return Vec2{cos(s), sin(s)}; }, [](double s) { return Vec2{-sin(s), cos(s)}; },
        0.0, 2.0 * std::numbers::pi, [](double s) { return -(0.5 * s - 0.25 * sin(2.0 * s)); });
  }
  if (name == "vanishing") {
    return Target::graph(
        "vanishing", [](double x) { return sin(x) + 3 * x * x * x * x - 4 * x * x * x + x; },
        [](double x) { return 12 * x * x * x - 12 * x * x + cos(x) + 1; }, 0.0, 1.0,
        [](double x) { return 0.6 * x * x * x * x * x - x * x * x * x + 0.5 * x * x - cos(x); });
  }
  if (name == "cve") {
    return Target::parametric(
        "cve", [](double t) { return Vec2{(t * t * t - t + 1) * sin(t), t * cos(t)}; },
        [](double t) {
          return Vec2{(3 * t * t - 1) * sin(t) + (t * t * t - t + 1) * cos(t), cos(t) - t * sin(t)};
        },
        0.0, 1.0,
        [](double t) {
          const double s2 = sin(2 * t), c2 = cos(2 * t);
          const double t2 = t * t, t3 = t2 * t;
          return t3 * t2 / 10 + t2 * t2 * s2 / 4 - t3 * c2 / 4 - t3 / 6 + t2 * s2 / 8 + t2 / 4 + t * s2 / 4 +
                 3 * t * c2 / 8 - 3 * s2 / 16 + c2 / 8 + 0.125;
        });
  }
  if (name == "optimized") {
    return Target::graph(
        "optimized", [](double x) { return 4 * x * (x - 0.5) * (x - 1) * exp(x); },
        [](double x) { return (4 * x * x * x + 6 * x * x - 10 * x + 2) * exp(x); }, 0.0, 1.0,
        [](double x) { return (4 * x * x * x - 18 * x * x + 38 * x - 38) * exp(x); });
  }
  if (name == "piecewise1") {
    return Target::graph(
        "piecewise1", [](double x) { return (x + 1) * exp(x) - 1; }, [](double x) { return (x + 2) * exp(x); },
        0.0, 1.0, [](double x) { return x * (exp(x) - 1); });
  }
  if (name == "piecewise2") {
    return Target::graph(
        "piecewise2", [](double x) { return x * x * (1 - x) * exp(x); },
        [](double x) { return x * (2 - 2 * x - x * x) * exp(x); }, 0.0, 1.0,
        [](double x) { return (-x * x * x + 4 * x * x - 8 * x + 8) * exp(x); });
  }
  if (name == "parabola") {
    return Target::graph(
        "parabola", [](double x) { return x * x; }, [](double x) { return 2 * x; }, -1.0, 1.0,
        [](double x) { return x * x * x / 3; });
  }
  if (name == "line") {
    return Target::graph(
        "line", [](double x) { return 0.5 * x + 0.25; }, [](double) { return 0.5; }, -1.0, 1.0,
        [](double x) { return 0.25 * x * x + 0.25 * x; });
  }
  throw Error(ErrorCode::Catalog, "unknown target '" + std::string(name) + "'; available: " + catalog_listing());
}

inline constexpr double kNearVerticalSlope = 1e3;

/// Everything needed to build one segment: the Hermite data in a working
/// frame whose origin is the segment's left endpoint, and the maps back.
struct SegmentGeometry {
  HermiteData data;
  AreaSpec spec;
  Frame frame;                  // world <-> working frame
  double chord_rotation = 0.0;  // native (shifted) -> working frame rotation
  double h = 0.0;               // x-extent of the working frame
  bool graph_frame = false;     // working frame is the target's own graph frame
  double s0 = 0.0, s1 = 0.0;
};

/// Builds the segment data for [s0, s1]. Parametric targets, and graph
/// targets with a near-vertical endpoint tangent, are rotated so the chord
/// lies on the positive x-axis.
inline SegmentGeometry hermite_segment_data(const Target& target, double s0, double s1) {
  if (s0 == s1) throw Error(ErrorCode::DegenerateSegment, "segment [s0, s1] has zero length");
  const auto [lo, hi] = target.domain();
  const double slack = 1e-12 * (hi - lo);
  if (!(s0 < s1) || s0 < lo - slack || s1 > hi + slack)
    throw Error(ErrorCode::Domain, "segment [" + std::to_string(s0) + ", " + std::to_string(s1) +
                                       "] is not an increasing subinterval of the target domain");

  const Vec2 p0 = target.native_eval(s0);
  const Vec2 p1 = target.native_eval(s1);
  const Vec2 d_native = p1 - p0;
  if (!(norm(d_native) > 0.0)) throw Error(ErrorCode::DegenerateSegment, "segment chord has zero length");
  const Vec2 t0 = target.native_derivative(s0);
  const Vec2 t1 = target.native_derivative(s1);

  bool graph_frame = target.kind() == TargetKind::Graph;
  if (graph_frame) {
    const bool steep = std::abs(t0.y) > kNearVerticalSlope * std::abs(t0.x) ||
                       std::abs(t1.y) > kNearVerticalSlope * std::abs(t1.x);
    graph_frame = !steep;
  }

  const double total = shift_area(target.native_segment_area(s0, s1), p0.y, p0.x, p1.x);
  const double c_secant = total - 0.5 * d_native.x * d_native.y;

  SegmentGeometry g;
  g.s0 = s0;
  g.s1 = s1;
  g.graph_frame = graph_frame;
  if (graph_frame) {
    g.chord_rotation = 0.0;
    g.data = HermiteData(d_native, t0, t1, total);
    g.spec = AreaSpec(total, d_native);
  } else {
    g.chord_rotation = -std::atan2(d_native.y, d_native.x);
    const Vec2 d{norm(d_native), 0.0};
    // The secant area is rotation invariant; in the chord frame D2 = 0.
    g.data = HermiteData(d, rotate(t0, g.chord_rotation), rotate(t1, g.chord_rotation), c_secant);
    g.spec = AreaSpec(c_secant, d);
  }
  g.h = g.data.d.x;
  g.frame = Frame{target.eval(s0), target.placement().rotation + g.chord_rotation};
  return g;
}

/// Target point at parameter s in the segment's working frame.
inline Vec2 local_point(const Target& target, const SegmentGeometry& g, double s) {
  return rotate(target.native_eval(s) - target.native_eval(g.s0), g.chord_rotation);
}

/// The target as a graph y(x) over the working frame's x-axis. Graph frames
/// evaluate f directly; rotated frames invert x(s) by safeguarded Newton.
inline double local_graph_y(const Target& target, const SegmentGeometry& g, double x) {
  if (g.graph_frame) return target.f(g.s0 + x) - target.f(g.s0);
  const double width = g.s1 - g.s0;
  double s = g.s0 + width * (x / g.h);
  for (int iter = 0; iter < 60; ++iter) {
    const double fx = local_point(target, g, s).x - x;
    const double dx = rotate(target.native_derivative(s), g.chord_rotation).x;
    if (!(dx > 0.0))
      throw Error(ErrorCode::Domain, target.name() + ": target is not a graph over the chord at s=" +
                                         std::to_string(s));
    double step = fx / dx;
    step = std::clamp(step, -width, width);
    s -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(s))) break;
  }
  return local_point(target, g, s).y;
}

}  // namespace apbez
