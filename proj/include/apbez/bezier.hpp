#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "apbez/error.hpp"
#include "apbez/vec2.hpp"

namespace apbez {

/// Cubic Bezier curve given by its four control points.
///
/// Evaluation uses de Casteljau subdivision; derivatives use the power-basis
/// coefficients, which are exact polynomials in t.
struct CubicBezier {
  Vec2 p0, c1, c2, p3;

  Vec2 eval(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::Domain, "eval: t outside [0,1]");
    if (t == 0.0) return p0;
    if (t == 1.0) return p3;
    const double u = 1.0 - t;
    const Vec2 a = u * p0 + t * c1;
    const Vec2 b = u * c1 + t * c2;
    const Vec2 c = u * c2 + t * p3;
    const Vec2 ab = u * a + t * b;
    const Vec2 bc = u * b + t * c;
    return u * ab + t * bc;
  }

  /// Exact derivative of the given order (1, 2 or 3) at t.
  Vec2 derivative(double t, int order = 1) const {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::Domain, "derivative: t outside [0,1]");
    const Vec2 k1 = 3.0 * (c1 - p0);
    const Vec2 k2 = 3.0 * (c2 - 2.0 * c1 + p0);
    const Vec2 k3 = p3 - 3.0 * c2 + 3.0 * c1 - p0;
    switch (order) {
      case 1:
        if (t == 0.0) return k1;
        if (t == 1.0) return 3.0 * (p3 - c2);
        return k1 + t * (2.0 * k2 + 3.0 * t * k3);
      case 2:
        return 2.0 * k2 + 6.0 * t * k3;
      case 3:
        return 6.0 * k3;
      default:
        throw Error(ErrorCode::Domain, "derivative: order must be 1, 2 or 3");
    }
  }

  /// Largest distance from p0 to any control point; the curve's length scale.
  double scale() const {
    return std::max({distance(p0, c1), distance(p0, c2), distance(p0, p3)});
  }
};

/// Maps every control point through `f`. Bezier curves are affine covariant,
/// so this is the image of the curve under any affine `f`.
template <class F>
CubicBezier map_control_points(const CubicBezier& b, F&& f) {
  return {f(b.p0), f(b.c1), f(b.c2), f(b.p3)};
}

inline CubicBezier to_global(const CubicBezier& b, const Frame& frame) {
  return map_control_points(b, [&](const Vec2& p) { return frame.to_global_point(p); });
}

/// Endpoint/tangent/area data of one interpolation problem, expressed in a
/// frame whose origin is the left endpoint. Tangents are unit vectors, so the
/// magnitudes r1, r2 carry length units.
struct HermiteData {
  Vec2 d;              // right endpoint (left endpoint is the origin)
  Vec2 alpha;          // unit tangent at the left endpoint
  Vec2 beta;           // unit tangent at the right endpoint
  double area = 0.0;   // prescribed parametric area in this frame

  HermiteData() = default;
  HermiteData(Vec2 d_, Vec2 alpha_, Vec2 beta_, double area_)
      : d(d_), alpha(unit(alpha_)), beta(unit(beta_)), area(area_) {}

  static constexpr Vec2 a() { return {0.0, 0.0}; }

 private:
  static Vec2 unit(const Vec2& v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::Domain, "tangent direction must be nonzero");
    return v / n;
  }
};

inline CubicBezier bezier_from_hermite(const HermiteData& data, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0))
    throw Error(ErrorCode::InvalidMagnitude,
                "tangent magnitudes must be positive (r1=" + std::to_string(r1) +
                    ", r2=" + std::to_string(r2) + ")");
  return {HermiteData::a(), (r1 / 3.0) * data.alpha, data.d - (r2 / 3.0) * data.beta, data.d};
}

/// Fourth derivative d^4 y / dx^4 of the graph traced by the curve, evaluated
/// at parameter t from the parametric derivatives of x(t) = B1, y(t) = B2.
inline double fourth_spatial_derivative(const CubicBezier& b, double t) {
  const Vec2 d1 = b.derivative(t, 1);
  const Vec2 d2 = b.derivative(t, 2);
  const Vec2 d3 = b.derivative(t, 3);
  const double tol = 1e-12 * b.scale();
  if (std::abs(d1.x) <= tol)
    throw Error(ErrorCode::NearVerticalTangent, "x'(t) vanishes at t=" + std::to_string(t));
  const double x1 = d1.x, x2 = d2.x, x3 = d3.x;
  const double y1 = d1.y, y2 = d2.y, y3 = d3.y;
  const double num = x1 * (15.0 * x2 * x2 * y2 - 4.0 * x1 * x3 * y2 - 6.0 * y3 * x1 * x2) -
                     y1 * (15.0 * x2 * x2 * x2 - 10.0 * x3 * x1 * x2);
  return num / std::pow(x1, 7);
}

/// True iff B1'(t) > 0 on all of [0,1], i.e. the curve is the graph of a
/// function of x. B1' is the Bernstein quadratic with coefficients
/// (r1*alpha.x, 3*D.x - r1*alpha.x - r2*beta.x, r2*beta.x); its minimum is
/// taken in closed form.
inline bool monotone_x(const HermiteData& data, double r1, double r2) {
  const double a0 = r1 * data.alpha.x;
  const double a2 = r2 * data.beta.x;
  const double a1 = 3.0 * data.d.x - a0 - a2;
  double lo = std::min(a0, a2);
  const double curv = a0 - 2.0 * a1 + a2;
  if (curv > 0.0) {
    const double tv = (a0 - a1) / curv;
    if (tv > 0.0 && tv < 1.0) lo = std::min(lo, (a0 * a2 - a1 * a1) / curv);
  }
  return lo > 0.0;
}

}  // namespace apbez
