#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace apbez {

/// Planar point or vector.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Planar cross product a.x*b.y - b.x*a.y; twice the signed triangle area.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - b.x * a.y; }

inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

inline Vec2 normalized(const Vec2& a) { return a / norm(a); }

inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

/// Counter-clockwise rotation about the origin.
inline Vec2 rotate(const Vec2& v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Rotates every entry of `pts` about the origin by `theta`.
inline std::vector<Vec2> rotate_frame(std::span<const Vec2> pts, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& v : pts) out.push_back({c * v.x - s * v.y, s * v.x + c * v.y});
  return out;
}

/// Rigid map from original coordinates to a working frame:
/// working = R(rotation) * (p - origin). Vectors only see the rotation.
struct Frame {
  Vec2 origin{};
  double rotation = 0.0;

  Vec2 to_local_point(const Vec2& p) const { return rotate(p - origin, rotation); }
  Vec2 to_local_vector(const Vec2& v) const { return rotate(v, rotation); }
  Vec2 to_global_point(const Vec2& p) const { return rotate(p, -rotation) + origin; }
  Vec2 to_global_vector(const Vec2& v) const { return rotate(v, -rotation); }
};

}  // namespace apbez
