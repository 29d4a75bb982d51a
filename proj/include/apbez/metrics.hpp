#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "apbez/bezier.hpp"
#include "apbez/error.hpp"
#include "apbez/vec2.hpp"

namespace apbez {

inline constexpr int kDefaultLinfSamples = 10000;
inline constexpr int kDefaultHausdorffSamples = 2000;

enum class Metric { Linf, Hausdorff };

struct ErrorRecord {
  double h = 0.0;
  double linf = 0.0;
  std::optional<double> hausdorff;
  double area_residual = 0.0;

  double value(Metric m) const {
    if (m == Metric::Linf) return linf;
    return hausdorff.value_or(std::numeric_limits<double>::quiet_NaN());
  }

  friend bool operator==(const ErrorRecord&, const ErrorRecord&) = default;
};

/// Chebyshev-Lobatto parameters on [0,1], endpoints included.
inline std::vector<double> chebyshev_parameters(int n) {
  if (n < 2) throw Error(ErrorCode::Domain, "chebyshev_parameters: need at least 2 samples");
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = 0.5 - 0.5 * std::cos(std::numbers::pi * k / (n - 1));
  t.front() = 0.0;
  t.back() = 1.0;
  return t;
}

/// max_t |B2(t) - f(B1(t))| over Chebyshev-distributed parameters.
template <class F>
double linf_error(const CubicBezier& b, F&& f, int n_samples = kDefaultLinfSamples) {
  double worst = 0.0;
  for (double t : chebyshev_parameters(n_samples)) {
    const Vec2 p = b.eval(t);
    worst = std::max(worst, std::abs(p.y - f(p.x)));
  }
  return worst;
}

namespace detail {

inline double point_segment_distance2(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double s = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  const Vec2 q = a + s * ab - p;
  return dot(q, q);
}

// Directed Hausdorff distance (squared) with early termination: the inner
// scan stops once a candidate closer than the running maximum is found, which
// cannot change the result. The scan starts at the previous argmin and walks
// outward, so ordered samples of nearby curves terminate almost immediately.
template <class Dist2>
double directed_hausdorff2(std::span<const Vec2> from, std::size_t target_count, Dist2&& dist2) {
  double cmax = 0.0;
  std::size_t hint = 0;
  for (const Vec2& p : from) {
    double cmin = std::numeric_limits<double>::infinity();
    std::size_t best = hint;
    bool broke = false;
    for (std::size_t step = 0; step < 2 * target_count; ++step) {
      const std::size_t off = (step + 1) / 2;
      std::size_t j;
      if (step % 2 == 1) {
        if (hint + off >= target_count) continue;
        j = hint + off;
      } else {
        if (off > hint) continue;
        j = hint - off;
      }
      const double d = dist2(p, j);
      if (d < cmin) {
        cmin = d;
        best = j;
      }
      if (d < cmax) {
        broke = true;
        break;
      }
    }
    hint = best;
    if (!broke) cmax = std::max(cmax, cmin);
  }
  return cmax;
}

}  // namespace detail

/// Discrete Hausdorff distance between two finite point sets.
inline double hausdorff_discrete(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::Domain, "hausdorff_discrete: empty point sequence");
  auto to_b = [&](const Vec2& p, std::size_t j) {
    const Vec2 d = p - b[j];
    return dot(d, d);
  };
  auto to_a = [&](const Vec2& p, std::size_t j) {
    const Vec2 d = p - a[j];
    return dot(d, d);
  };
  const double ab = detail::directed_hausdorff2(a, b.size(), to_b);
  const double ba = detail::directed_hausdorff2(b, a.size(), to_a);
  return std::sqrt(std::max(ab, ba));
}

namespace detail {

// Uniform grid over a polyline's segments for nearest-segment queries. Each
// segment is registered in every cell its bounding box touches; a query scans
// rings of cells around the point until the ring's lower distance bound
// exceeds the best candidate.
class SegmentGrid {
 public:
  explicit SegmentGrid(std::span<const Vec2> poly) : poly_(poly) {
    lo_ = hi_ = poly[0];
    double length = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      lo_ = {std::min(lo_.x, poly[i].x), std::min(lo_.y, poly[i].y)};
      hi_ = {std::max(hi_.x, poly[i].x), std::max(hi_.y, poly[i].y)};
      if (i > 0) length += distance(poly[i], poly[i - 1]);
    }
    const std::size_t segs = segment_count();
    const double extent = std::max(hi_.x - lo_.x, hi_.y - lo_.y);
    cell_ = std::max({2.0 * length / segs, extent / 1024.0, 1e-300});
    nx_ = static_cast<int>((hi_.x - lo_.x) / cell_) + 1;
    ny_ = static_cast<int>((hi_.y - lo_.y) / cell_) + 1;
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t j = 0; j < segs; ++j) {
      const Vec2 a = poly[j], b = poly[std::min(j + 1, poly.size() - 1)];
      const int x0 = cx(std::min(a.x, b.x)), x1 = cx(std::max(a.x, b.x));
      const int y0 = cy(std::min(a.y, b.y)), y1 = cy(std::max(a.y, b.y));
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) cells_[index(x, y)].push_back(static_cast<int>(j));
    }
    stamp_.assign(segs, 0);
  }

  std::size_t segment_count() const { return poly_.size() > 1 ? poly_.size() - 1 : 1; }

  double distance2(const Vec2& p, std::size_t j) const {
    if (poly_.size() == 1) {
      const Vec2 d = p - poly_[0];
      return dot(d, d);
    }
    return point_segment_distance2(p, poly_[j], poly_[j + 1]);
  }

  /// Squared distance from p to the polyline; stops early once a value below
  /// `enough` is found.
  double nearest2(const Vec2& p, double enough) {
    ++epoch_;
    const int px = cx(p.x), py = cy(p.y);
    double best = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_);
    for (int r = 0; r <= max_ring; ++r) {
      const double bound = std::max(0, r - 1) * cell_;
      if (bound * bound > best) break;
      for (int y = py - r; y <= py + r; ++y) {
        if (y < 0 || y >= ny_) continue;
        const bool edge = y == py - r || y == py + r;
        for (int x = px - r; x <= px + r; x += edge ? 1 : 2 * r) {
          if (x >= 0 && x < nx_) {
            for (int j : cells_[index(x, y)]) {
              if (stamp_[j] == epoch_) continue;
              stamp_[j] = epoch_;
              best = std::min(best, distance2(p, j));
              if (best < enough) return best;
            }
          }
          if (r == 0) break;
        }
      }
    }
    return best;
  }

 private:
  int cx(double x) const { return std::clamp(static_cast<int>((x - lo_.x) / cell_), 0, nx_ - 1); }
  int cy(double y) const { return std::clamp(static_cast<int>((y - lo_.y) / cell_), 0, ny_ - 1); }
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * nx_ + x; }

  std::span<const Vec2> poly_;
  Vec2 lo_, hi_;
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> cells_;
  std::vector<unsigned> stamp_;
  unsigned epoch_ = 0;
};

inline double directed_polyline_hausdorff2(std::span<const Vec2> from, std::span<const Vec2> poly) {
  SegmentGrid grid(poly);
  double cmax = 0.0;
  for (const Vec2& p : from) cmax = std::max(cmax, grid.nearest2(p, cmax));
  return cmax;
}

}  // namespace detail

/// Hausdorff distance between two sampled curves, measuring each sample's
/// distance to the other curve's polyline rather than to its samples. The
/// discretisation error is second order in the sample spacing instead of
/// first order.
inline double hausdorff_polyline(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::Domain, "hausdorff_polyline: empty point sequence");
  const double ab = detail::directed_polyline_hausdorff2(a, b);
  const double ba = detail::directed_polyline_hausdorff2(b, a);
  return std::sqrt(std::max(ab, ba));
}

/// Samples a parametric curve at `n` points approximately uniform in arc
/// length: a fine uniform-parameter pass measures chord lengths, which are
/// then inverted by linear interpolation.
template <class Curve>
std::vector<Vec2> sample_arclength(Curve&& curve, double lo, double hi, int n) {
  if (n < 2) throw Error(ErrorCode::Domain, "sample_arclength: need at least 2 samples");
  const int fine = 8 * n;
  std::vector<double> s(fine + 1), len(fine + 1, 0.0);
  Vec2 prev = curve(lo);
  s[0] = lo;
  for (int i = 1; i <= fine; ++i) {
    s[i] = i == fine ? hi : lo + (hi - lo) * i / fine;
    const Vec2 p = curve(s[i]);
    len[i] = len[i - 1] + distance(p, prev);
    prev = p;
  }
  std::vector<Vec2> out;
  out.reserve(n);
  const double total = len.back();
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      out.push_back(curve(lo));
      continue;
    }
    if (i == n - 1) {
      out.push_back(curve(hi));
      continue;
    }
    const double target = total * i / (n - 1);
    while (k + 1 < len.size() && len[k + 1] < target) ++k;
    const double seg = len[k + 1] - len[k];
    const double w = seg > 0.0 ? (target - len[k]) / seg : 0.0;
    out.push_back(curve(s[k] + w * (s[k + 1] - s[k])));
  }
  return out;
}

inline std::vector<Vec2> sample_arclength(const CubicBezier& b, int n) {
  return sample_arclength([&](double t) { return b.eval(std::clamp(t, 0.0, 1.0)); }, 0.0, 1.0, n);
}

namespace detail {

inline std::vector<std::pair<double, double>> log_points(std::span<const ErrorRecord> records, Metric m) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records) {
    const double e = r.value(m);
    if (!(r.h > 0.0) || !(e > 0.0) || !std::isfinite(e))
      throw Error(ErrorCode::InsufficientData, "estimate_order: errors and h must be positive");
    pts.emplace_back(std::log(r.h), std::log(e));
  }
  return pts;
}

}  // namespace detail

/// Least-squares slope of log(error) against log(h) over all records.
inline double estimate_order(std::span<const ErrorRecord> records, Metric m = Metric::Linf) {
  const auto pts = detail::log_points(records, m);
  if (pts.size() < 2) throw Error(ErrorCode::InsufficientData, "estimate_order: need at least 2 records");
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InsufficientData, "estimate_order: h values must be distinct");
  return sxy / sxx;
}

/// Slope between the last two records only.
inline double last_interval_order(std::span<const ErrorRecord> records, Metric m = Metric::Linf) {
  if (records.size() < 2) throw Error(ErrorCode::InsufficientData, "last_interval_order: need at least 2 records");
  return estimate_order(records.subspan(records.size() - 2), m);
}

}  // namespace apbez
