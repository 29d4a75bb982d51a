#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "apbez/bezier.hpp"
#include "apbez/error.hpp"
#include "apbez/vec2.hpp"

namespace apbez {

/// Prescribed area of a segment in the shifted frame, together with the
/// signed area about the secant from the origin to D.
struct AreaSpec {
  double c_total = 0.0;
  double c_secant = 0.0;

  AreaSpec() = default;
  AreaSpec(double total, const Vec2& d) : c_total(total), c_secant(total - 0.5 * d.x * d.y) {}
};

inline AreaSpec area_spec(const HermiteData& data) { return AreaSpec(data.area, data.d); }

/// Area of a curve after translating it by (-x0, -y0): x-shifts leave the
/// parametric area unchanged, y-shifts remove y0 times the x-extent.
constexpr double shift_area(double raw_area, double y0, double gamma_s0, double gamma_s1) {
  return raw_area - y0 * (gamma_s1 - gamma_s0);
}

/// Builds HermiteData from endpoints in arbitrary position, shifting `a` to
/// the origin and correcting `raw_area` accordingly.
inline HermiteData make_hermite_data(const Vec2& a, const Vec2& d, const Vec2& alpha,
                                     const Vec2& beta, double raw_area) {
  return HermiteData(d - a, alpha, beta, shift_area(raw_area, a.y, a.x, d.x));
}

/// The three cross-product coefficients of the area constraint.
struct AreaCoefficients {
  double ab;  // alpha x beta
  double da;  // D x alpha
  double bd;  // beta x D
};

inline AreaCoefficients area_coefficients(const HermiteData& data) {
  return {cross(data.alpha, data.beta), cross(data.d, data.alpha), cross(data.beta, data.d)};
}

/// Closed-form integral of B2 * B1' over [0,1] for the curve built from
/// (data, r1, r2).
inline double bezier_signed_area(const HermiteData& data, double r1, double r2) {
  const auto k = area_coefficients(data);
  return r1 * r2 / 60.0 * k.ab + r1 / 10.0 * k.da + r2 / 10.0 * k.bd + 0.5 * data.d.x * data.d.y;
}

namespace detail {

inline double denominator_tolerance(const HermiteData& data) { return 1e-12 * norm(data.d); }

// Magnitude solving the constraint linear in the unknown:
//   unknown * (known * ab + 6 * own) = 6 * (10 * CR - known * other)
inline double solve_linear(double c_secant, double known, double ab, double own, double other,
                           double tol, std::string_view which) {
  const double den = known * ab + 6.0 * own;
  if (!(std::abs(den) > tol))
    throw Error(ErrorCode::DegenerateDenominator,
                std::string(which) + ": area constraint does not determine the magnitude");
  return 6.0 * (10.0 * c_secant - known * other) / den;
}

inline double require_positive(double r, std::string_view which) {
  if (!(r > 0.0))
    throw Error(ErrorCode::InfeasibleMagnitude,
                std::string(which) + " solved to non-positive value " + std::to_string(r));
  return r;
}

}  // namespace detail

/// r2 such that the curve (data, r1, r2) has secant area spec.c_secant.
inline double solve_r2(const HermiteData& data, const AreaSpec& spec, double r1) {
  const auto k = area_coefficients(data);
  const double r2 = detail::solve_linear(spec.c_secant, r1, k.ab, k.bd, k.da,
                                         detail::denominator_tolerance(data), "solve_r2");
  return detail::require_positive(r2, "r2");
}

/// r1 such that the curve (data, r1, r2) has secant area spec.c_secant.
inline double solve_r1(const HermiteData& data, const AreaSpec& spec, double r2) {
  const auto k = area_coefficients(data);
  const double r1 = detail::solve_linear(spec.c_secant, r2, k.ab, k.da, k.bd,
                                         detail::denominator_tolerance(data), "solve_r1");
  return detail::require_positive(r1, "r1");
}

/// Converts a magnitude measured along x (the B1'(0) = h + P h^3 convention
/// for tangents <1, f'>) into the unit-tangent magnitude, and back.
inline double graph_to_unit(double r_graph, const Vec2& unit_tangent) { return r_graph / unit_tangent.x; }
inline double unit_to_graph(double r_unit, const Vec2& unit_tangent) { return r_unit * unit_tangent.x; }

/// Default family parameter P: average of r1 = h and the r1 obtained by
/// solving the constraint with r2 = h, both measured along x, minus h, over h^3.
///
/// Requires tangents with positive x-component in the frame of `data`.
inline double p_avg(const HermiteData& data, const AreaSpec& spec, double h) {
  if (!(data.alpha.x > 0.0) || !(data.beta.x > 0.0))
    throw Error(ErrorCode::Domain, "p_avg: tangents must point in +x in the working frame");
  if (!(h > 0.0)) throw Error(ErrorCode::Domain, "p_avg: h must be positive");
  const auto k = area_coefficients(data);
  const double r2 = graph_to_unit(h, data.beta);
  const double r1 = detail::solve_linear(spec.c_secant, r2, k.ab, k.da, k.bd,
                                         detail::denominator_tolerance(data), "p_avg");
  const double r1_graph = unit_to_graph(r1, data.alpha);
  return (0.5 * (h + r1_graph) - h) / (h * h * h);
}

enum class SignPattern { MixedSigns, AllNonNegative, AllNonPositive, AllZero };

constexpr std::string_view to_string(SignPattern s) {
  switch (s) {
    case SignPattern::MixedSigns: return "mixed-signs";
    case SignPattern::AllNonNegative: return "all-non-negative";
    case SignPattern::AllNonPositive: return "all-non-positive";
    case SignPattern::AllZero: return "all-zero";
  }
  return "unknown";
}

struct FeasibilityReport {
  double coef_ab = 0.0;
  double coef_da = 0.0;
  double coef_bd = 0.0;
  SignPattern classification = SignPattern::AllZero;
  bool compatible = false;
};

inline std::string describe(const FeasibilityReport& r) {
  return "alpha x beta = " + std::to_string(r.coef_ab) + ", D x alpha = " + std::to_string(r.coef_da) +
         ", beta x D = " + std::to_string(r.coef_bd) + ", pattern " + std::string(to_string(r.classification)) +
         (r.compatible ? ", compatible" : ", incompatible with the prescribed area");
}

/// Existence check for positive (r1, r2) from the signs of the constraint's
/// coefficients. Each coefficient counts as zero when its contribution to
/// the area is below 1e-14 |D|^2.
inline FeasibilityReport classify_feasibility(const HermiteData& data, const AreaSpec& spec) {
  const auto k = area_coefficients(data);
  const double len = norm(data.d);
  const double tol_ab = 1e-14;
  const double tol_lin = 1e-14 * len;
  const double tol_area = 1e-14 * len * len;

  auto sign = [](double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
  const int s[3] = {sign(k.ab, tol_ab), sign(k.da, tol_lin), sign(k.bd, tol_lin)};
  bool pos = false, neg = false;
  for (int v : s) {
    pos = pos || v > 0;
    neg = neg || v < 0;
  }

  FeasibilityReport r;
  r.coef_ab = k.ab;
  r.coef_da = k.da;
  r.coef_bd = k.bd;
  if (pos && neg)
    r.classification = SignPattern::MixedSigns;
  else if (pos)
    r.classification = SignPattern::AllNonNegative;
  else if (neg)
    r.classification = SignPattern::AllNonPositive;
  else
    r.classification = SignPattern::AllZero;

  const int cs = sign(spec.c_secant, tol_area);
  if (cs > 0)
    r.compatible = pos;
  else if (cs < 0)
    r.compatible = neg;
  else
    r.compatible = (pos && neg) || (!pos && !neg);
  return r;
}

}  // namespace apbez
