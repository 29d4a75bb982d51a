#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "apbez/error.hpp"

namespace apbez {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; nodes by Newton iteration on P_n from the
/// Chebyshev initial guesses.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::Domain, "gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      // p0 = P_n(z), p1 = P_{n-1}(z)
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

template <class F>
double integrate_fixed(F&& f, double a, double b, const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace detail {

template <class F>
double adaptive_panel(F& f, double a, double b, double whole, const QuadratureRule& rule, double rel_tol,
                      double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = integrate_fixed(f, a, mid, rule);
  const double right = integrate_fixed(f, mid, b, rule);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= std::max(rel_tol * std::abs(refined), abs_tol)) return refined;
  return adaptive_panel(f, a, mid, left, rule, rel_tol, 0.5 * abs_tol, depth - 1) +
         adaptive_panel(f, mid, b, right, rule, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integration: 15-node panels, bisected until two
/// successive estimates agree to `rel_tol`. Agreement below a rounding floor
/// of 1e-15 * integral of |f| also terminates a panel.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-14, double abs_tol = 0.0,
                          int max_depth = 20) {
  static const QuadratureRule rule = gauss_legendre(15);
  if (a == b) return 0.0;
  const double whole = integrate_fixed(f, a, b, rule);
  const double magnitude = integrate_fixed([&](double x) { return std::abs(f(x)); }, a, b, rule);
  const double floor = std::max(abs_tol, 1e-15 * std::abs(magnitude));
  return detail::adaptive_panel(f, a, b, whole, rule, rel_tol, floor, max_depth);
}

}  // namespace apbez
