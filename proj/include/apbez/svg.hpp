#pragma once

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "apbez/experiments.hpp"
#include "apbez/interpolator.hpp"
#include "apbez/targets.hpp"

namespace apbez {

inline constexpr int kSvgSamples = 512;

namespace detail {

inline void svg_polyline(std::ostringstream& out, const std::vector<Vec2>& pts, const char* style) {
  out << "  <polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out << (i ? " " : "") << format_real(pts[i].x) << ',' << format_real(-pts[i].y);
  out << "\"/>\n";
}

}  // namespace detail

/// SVG 1.1 overlay of the target over the segments' span, each interpolant,
/// and its control polygon (dashed). y is flipped so the plot reads upward.
inline std::string render_svg(const Target& target, const std::vector<Segment>& segments) {
  std::vector<std::vector<Vec2>> curves, polygons;
  std::vector<Vec2> reference;
  if (!segments.empty()) {
    const double lo = segments.front().geometry.s0, hi = segments.back().geometry.s1;
    for (int i = 0; i < kSvgSamples; ++i)
      reference.push_back(target.eval(i + 1 == kSvgSamples ? hi : lo + (hi - lo) * i / (kSvgSamples - 1)));
  }
  for (const auto& s : segments) {
    std::vector<Vec2> c;
    for (int i = 0; i < kSvgSamples; ++i) c.push_back(s.bezier.eval(static_cast<double>(i) / (kSvgSamples - 1)));
    curves.push_back(std::move(c));
    polygons.push_back({s.bezier.p0, s.bezier.c1, s.bezier.c2, s.bezier.p3});
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto grow = [&](const std::vector<Vec2>& pts) {
    for (const Vec2& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, -p.y);
      ymax = std::max(ymax, -p.y);
    }
  };
  grow(reference);
  for (const auto& c : curves) grow(c);
  for (const auto& p : polygons) grow(p);
  if (!(xmin <= xmax)) xmin = ymin = 0.0, xmax = ymax = 1.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double margin = 0.05 * span;
  const double w = xmax - xmin + 2 * margin, hgt = ymax - ymin + 2 * margin;
  const double stroke = span / 400.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << format_real(xmin - margin) << ' '
      << format_real(ymin - margin) << ' ' << format_real(w) << ' ' << format_real(hgt) << "\">\n";
  const std::string sw = format_real(stroke), sw2 = format_real(2 * stroke);
  const std::string dash = format_real(4 * stroke);
  const std::string ref_style = "stroke=\"#000000\" stroke-width=\"" + sw2 + "\"";
  const std::string cur_style = "stroke=\"#d62728\" stroke-width=\"" + sw + "\"";
  const std::string poly_style =
      "stroke=\"#1f77b4\" stroke-width=\"" + sw + "\" stroke-dasharray=\"" + dash + "," + dash + "\"";
  detail::svg_polyline(out, reference, ref_style.c_str());
  for (const auto& p : polygons) detail::svg_polyline(out, p, poly_style.c_str());
  for (const auto& c : curves) detail::svg_polyline(out, c, cur_style.c_str());
  out << "</svg>\n";
  return out.str();
}

}  // namespace apbez
