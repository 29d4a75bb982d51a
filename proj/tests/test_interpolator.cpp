#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "apbez/interpolator.hpp"

using namespace apbez;

namespace {

// Graph-speed standard construction on the quarter circle (sympy oracle).
constexpr double kQuarterR1 = 1.6404862254808623221;
constexpr double kQuarterR2 = 1.6701340625457317629;

struct ThreadsGuard {
  explicit ThreadsGuard(const char* v) { setenv("APBEZ_THREADS", v, 1); }
  ~ThreadsGuard() { unsetenv("APBEZ_THREADS"); }
};

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> b;
  for (int i = 0; i <= n; ++i) b.push_back(lo + (hi - lo) * i / n);
  b.back() = hi;
  return b;
}

}  // namespace

TEST(Standard, ParabolaIsReproduced) {
  const Target t = make_builtin("parabola");
  for (auto [a, b] : {std::pair{0.0, 0.5}, std::pair{-1.0, 1.0}, std::pair{-0.7, 0.2}}) {
    const Segment s = interpolate_standard(t, a, b);
    EXPECT_LE(s.diagnostics.linf, 1e-14);
    EXPECT_NEAR(s.r1_graph(), b - a, 1e-14);
    EXPECT_NEAR(s.r2_graph(), b - a, 1e-14);
  }
}

TEST(Standard, LineUsesStraightFallback) {
  const Target t = make_builtin("line");
  const Segment s = interpolate_standard(t, -0.5, 0.75);
  EXPECT_LE(s.diagnostics.linf, 1e-15);
  EXPECT_LE(s.diagnostics.area_residual, 1e-15);
}

TEST(Standard, QuarterCircleMatchesOracle) {
  const Target t = make_builtin("circle");
  const Segment s = interpolate_standard(t, 0.0, std::numbers::pi / 2);
  EXPECT_NEAR(s.r1, kQuarterR1, 1e-13);
  EXPECT_NEAR(s.r2, kQuarterR2, 1e-13);
  EXPECT_LE(s.diagnostics.area_residual, 1e-14);
  ASSERT_TRUE(s.diagnostics.hausdorff);
  EXPECT_LT(*s.diagnostics.hausdorff, 1e-2);
  EXPECT_NEAR(distance(s.bezier.p0, Vec2{1, 0}), 0.0, 1e-15);
  EXPECT_NEAR(distance(s.bezier.p3, Vec2{0, 1}), 0.0, 1e-15);
}

TEST(Standard, ExplicitPZeroUsesChordLength) {
  const Target t = make_builtin("piecewise1");
  const Segment s = interpolate_standard(t, 0.25, 0.5, 0.0);
  EXPECT_NEAR(s.r1_graph(), 0.25, 1e-15);
}

TEST(Standard, AreaIsExactOnRandomSegments) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const char* name : {"piecewise1", "piecewise2", "vanishing", "optimized", "cve"}) {
    const Target t = make_builtin(name);
    int built = 0;
    for (int i = 0; i < 200; ++i) {
      double a = U(rng), b = U(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-3) continue;
      try {
        const Segment s = interpolate_standard(t, a, b);
        ++built;
        const double exact = t.segment_area(a, b);
        const double bez = bezier_signed_area(s.geometry.data, s.r1, s.r2);
        EXPECT_LE(s.diagnostics.area_residual, 1e-13 * (1 + std::abs(exact)));
        if (s.geometry.graph_frame) {
          EXPECT_NEAR(bez, shift_area(exact, t.eval(a).y, t.eval(a).x, t.eval(b).x), 1e-13);
        }
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NeedsRefinement);
      }
    }
    EXPECT_GT(built, 50) << name;
  }
}

TEST(Standard, RotationInvariant) {
  const Target base = make_builtin("cve");
  const Segment s0 = interpolate_standard(base, 0.2, 0.5);
  for (double theta : {0.3, 1.1, -2.0}) {
    const Vec2 off{0.4, -1.3};
    const Target moved = transform_target(base, theta, off);
    const Segment s1 = interpolate_standard(moved, 0.2, 0.5);
    EXPECT_NEAR(s1.r1, s0.r1, 1e-12);
    EXPECT_NEAR(s1.r2, s0.r2, 1e-12);
    for (auto [p, q] : {std::pair{s0.bezier.c1, s1.bezier.c1}, std::pair{s0.bezier.c2, s1.bezier.c2}})
      EXPECT_NEAR(distance(rotate(p, theta) + off, q), 0.0, 1e-12);
  }
}

namespace {

// Straight line whose antiderivative is inconsistent with it: the data is
// collinear but the prescribed secant area is not zero.
Target inconsistent_line() {
  return Target::graph("bad", [](double x) { return x; }, [](double) { return 1.0; }, 0.0, 1.0,
                       [](double x) { return 10.0 * x; });
}

}  // namespace

TEST(Standard, RefinementSignalled) {
  try {
    interpolate_standard(inconsistent_line(), 0.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NeedsRefinement);
  }
}

TEST(Optimized, NeverWorseThanStandard) {
  for (const char* name : {"optimized", "piecewise1", "piecewise2", "vanishing"}) {
    const Target t = make_builtin(name);
    for (auto [a, b] : {std::pair{0.0, 0.25}, std::pair{0.25, 0.5}, std::pair{0.6, 0.725}}) {
      OptimizedAP cfg;
      cfg.grid_n = 64;
      cfg.samples = kDefaultLinfSamples;
      const Segment opt = interpolate_optimized(t, a, b, cfg);
      for (auto P : {std::optional<double>{}, std::optional<double>{0.0}}) {
        try {
          const Segment std_seg = interpolate_standard(t, a, b, P);
          EXPECT_LE(opt.diagnostics.linf, std_seg.diagnostics.linf) << name << " [" << a << "," << b << "]";
        } catch (const Error&) {
        }
      }
      EXPECT_LE(opt.diagnostics.area_residual, 1e-14);
    }
  }
}

TEST(Optimized, HausdorffObjectiveOnParametric) {
  const Target t = make_builtin("cve");
  OptimizedAP cfg;
  cfg.grid_n = 32;
  cfg.samples = 500;
  SegmentOptions opt;
  opt.hausdorff_samples = 500;
  const Segment o = interpolate_optimized(t, 0.5, 1.0, cfg, opt);
  const Segment s = interpolate_standard(t, 0.5, 1.0, {}, opt);
  ASSERT_TRUE(o.diagnostics.hausdorff && s.diagnostics.hausdorff);
  EXPECT_LE(*o.diagnostics.hausdorff, *s.diagnostics.hausdorff);
}

TEST(Hermite, ReproducesCubics) {
  const Target t = Target::graph("cubic", [](double x) { return x * x * x - x; },
                                 [](double x) { return 3 * x * x - 1; }, -1.0, 2.0);
  const Segment s = interpolate_hermite(t, -0.5, 1.5);
  EXPECT_LE(s.diagnostics.linf, 1e-13);
  EXPECT_THROW(interpolate_hermite(make_builtin("circle"), 0.0, 1.0), Error);
}

TEST(Hermite, NotAreaPreservingInGeneral) {
  const Target t = make_builtin("piecewise1");
  const Segment s = interpolate_hermite(t, 0.0, 0.5);
  EXPECT_GT(s.diagnostics.area_residual, 1e-8);
  EXPECT_FALSE(is_area_preserving(HermiteBaseline{}));
  EXPECT_TRUE(is_area_preserving(StandardAP{}));
}

TEST(Piecewise, OrderContinuityAndCoverage) {
  const Target t = make_builtin("piecewise2");
  const auto bp = uniform(0.0, 1.0, 16);
  const auto segs = interpolate_piecewise(t, bp, StandardAP{0.0});
  ASSERT_GE(segs.size(), 16u);
  EXPECT_EQ(segs.front().geometry.s0, 0.0);
  EXPECT_EQ(segs.back().geometry.s1, 1.0);
  for (std::size_t i = 1; i < segs.size(); ++i) {
    EXPECT_EQ(segs[i].geometry.s0, segs[i - 1].geometry.s1);
    EXPECT_EQ(segs[i].bezier.p0, segs[i - 1].bezier.p3);
    // G1: both control-leg directions equal the target tangent at the joint.
    const Vec2 out = normalized(segs[i].bezier.c1 - segs[i].bezier.p0);
    const Vec2 in = normalized(segs[i - 1].bezier.p3 - segs[i - 1].bezier.c2);
    EXPECT_NEAR(cross(in, out), 0.0, 1e-12);
    EXPECT_GT(dot(in, out), 0.0);
  }
}

TEST(Piecewise, RefinesInfeasibleIntervals) {
  const Target t = make_builtin("optimized");
  const std::vector<double> bp = {0.0, 1.0};
  const auto segs = interpolate_piecewise(t, bp, StandardAP{});
  EXPECT_GE(segs.size(), 1u);
  EXPECT_EQ(segs.back().geometry.s1, 1.0);
  for (const auto& s : segs) EXPECT_LE(s.diagnostics.area_residual, 1e-14);
}

TEST(Piecewise, InfeasibleAfterMaxDepth) {
  const Target bad = inconsistent_line();
  const std::vector<double> bp = {0.0, 1.0};
  try {
    interpolate_piecewise(bad, bp, StandardAP{});
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    EXPECT_GE(e.s0(), 0.0);
    EXPECT_LE(e.s1(), 1.0);
  }
}

TEST(Piecewise, InvalidInputs) {
  const Target t = make_builtin("piecewise1");
  const std::vector<double> one = {0.0}, bad = {0.0, 0.5, 0.5, 1.0};
  EXPECT_THROW(interpolate_piecewise(t, one, StandardAP{}), Error);
  EXPECT_THROW(interpolate_piecewise(t, bad, StandardAP{}), Error);
  OptimizedAP small;
  small.grid_n = 2;
  try {
    interpolate_piecewise(t, uniform(0, 1, 2), small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
  EXPECT_THROW(validate(Mode{StandardAP{std::nan("")}}), Error);
}

TEST(Piecewise, DeterministicAcrossThreadCounts) {
  const Target t = make_builtin("cve");
  const auto bp = uniform(0.0, 1.0, 12);
  std::vector<Segment> one, many;
  {
    ThreadsGuard g("1");
    one = interpolate_piecewise(t, bp, StandardAP{});
  }
  {
    ThreadsGuard g("4");
    many = interpolate_piecewise(t, bp, StandardAP{});
  }
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].bezier.c1, many[i].bezier.c1);
    EXPECT_EQ(one[i].bezier.c2, many[i].bezier.c2);
    EXPECT_EQ(one[i].diagnostics, many[i].diagnostics);
  }
}

TEST(Perturbation, ShiftsPrescribedArea) {
  const Target t = make_builtin("piecewise1");
  SegmentOptions opt;
  opt.area_perturbation = 2.0;
  const Segment s = interpolate_standard(t, 0.0, 0.25, 0.0, opt);
  const Segment base = interpolate_standard(t, 0.0, 0.25, 0.0);
  EXPECT_NEAR(s.prescribed_area - base.prescribed_area, 2.0 * std::pow(0.25, 5), 1e-15);
  EXPECT_LE(s.diagnostics.area_residual, 1e-15);
}
