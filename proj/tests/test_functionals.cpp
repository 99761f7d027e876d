#include "isocurv/functionals.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isocurv;

namespace {

FourierCoeffs coeffs(double a0, std::vector<double> c, std::vector<double> s = {}) {
  FourierCoeffs a;
  a.a0 = a0;
  a.cos = std::move(c);
  a.sin = std::move(s);
  a.resize(std::max(a.cos.size(), a.sin.size()));
  return a;
}

Polygon2D unit_square(Vec2 c = Vec2::Zero()) {
  return Polygon2D({c + Vec2(0.5, -0.5), c + Vec2(0.5, 0.5), c + Vec2(-0.5, 0.5), c + Vec2(-0.5, -0.5)});
}

Polygon2D random_polygon(Rng& rng, int m) {
  std::vector<Vec2> pts;
  for (int i = 0; i < m; ++i) {
    const double t = rng.uniform(0.0, two_pi), r = rng.uniform(0.5, 1.5);
    pts.push_back(Vec2(r * std::cos(t), r * std::sin(t)));
  }
  return Polygon2D(convex_hull(pts));
}

SupportBody<2> random_smooth(Rng& rng, int K, double amp) {
  FourierCoeffs a;
  a.a0 = 1.0;
  a.resize(K);
  for (int k = 1; k <= K; ++k) {
    a.cos[static_cast<std::size_t>(k - 1)] = rng.uniform(-amp, amp) / (k * k);
    a.sin[static_cast<std::size_t>(k - 1)] = rng.uniform(-amp, amp) / (k * k);
  }
  return make_support_body(a, 256);
}

}  // namespace

// ---------------------------------------------------------------------------
// script_H, G_beta, I_beta

TEST(Functionals, ScriptHBall) {
  const double r = 1.4;
  EXPECT_NEAR(script_H(make_support_body(ball_coeffs(r, Vec2(0.3, 0.2)))).value, pi * r * r, 1e-12);
  EXPECT_NEAR(script_H(make_support_body(ball_coeffs(r, Vec3(0.1, 0, 0)), 16)).value, 4 * pi / 3 * r * r, 1e-12);
}

TEST(Functionals, ScriptHThirdHarmonic) {
  EXPECT_NEAR(script_H(make_support_body(coeffs(1.0, {0, 0, 0.1}))).value, 1.05 * pi, 1e-12);
}

TEST(Functionals, ScriptHRhombusIsHalfGaussMomentum) {
  const double l = 4.0;
  for (double alpha : {0.3, pi / 2, 2.5}) EXPECT_NEAR(script_H(rhombus(l, alpha)).value, rhombus_H_exact(l, alpha) / 2, 1e-13);
}

TEST(Functionals, ScriptHInfimumAtCurvatureCentroid) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto P = random_polygon(rng, 7);
    EXPECT_NEAR(script_H_search(P), script_H(P).value, 1e-9);
    const auto b = random_smooth(rng, 5, 0.05);
    EXPECT_NEAR(script_H_search(b), script_H(b).value, 1e-9);
  }
}

TEST(Functionals, IBetaZeroOnBall) {
  for (double beta : {0.0, 1.0, 5.0 / 3.0, 3.0}) {
    EXPECT_NEAR(I_beta(make_support_body(ball_coeffs(2.0)), beta), 0.0, 1e-13);
    EXPECT_NEAR(I_beta(make_support_body(ball_coeffs(0.5, Vec3(0, 0.2, 0)), 12), beta), 0.0, 1e-13);
  }
}

TEST(Functionals, GBetaExamples) {
  const auto b = make_support_body(coeffs(1.0, {0, 0, 0.1}));
  const double beta = 5.0 / 3.0;
  EXPECT_NEAR(G_beta(b, beta) - (1 + beta) * pi, -pi / 60, 1e-12);
  EXPECT_NEAR(G_beta(unit_square(), beta), pi / 2 + 5.0 / 3.0, 1e-14);
  EXPECT_LT(G_beta(unit_square(), beta), 32.0 / (3 * pi));
}

// ---------------------------------------------------------------------------
// F

TEST(Functionals, FOfBalls) {
  EXPECT_NEAR(F_functional(make_support_body(ball_coeffs(3.0, Vec2(1, 2)))), 1 / (4 * pi * pi), 1e-14);
  EXPECT_NEAR(F_ball(2), 1 / (4 * pi * pi), 1e-16);
  const double w = 4 * pi / 3;
  EXPECT_NEAR(F_ball(3) / (std::pow(3.0, -7) * std::pow(w, -3)), 1.0, 1e-13);
  EXPECT_NEAR(F_functional(make_support_body(ball_coeffs(0.7, Vec3(0.1, 0.2, 0.3)), 16)) / F_ball(3), 1.0, 1e-12);
  EXPECT_NEAR(F_ball_printed(2), F_ball(2), 1e-16);
}

TEST(Functionals, FScaleAndTranslationInvariant) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto P = random_polygon(rng, 9);
    const double lam = rng.uniform(0.1, 10.0);
    const auto Q = transform(P, Vec2(rng.uniform(-3, 3), rng.uniform(-3, 3)), lam);
    EXPECT_NEAR(F_functional(Q), F_functional(P), 1e-12 * F_functional(P));
  }
  const auto c = Cylinder3D(0.3, 1.0);
  EXPECT_NEAR(F_functional(transform(c, Vec3(1, 2, 3), 2.5)), F_functional(c), 1e-12 * F_functional(c));
}

TEST(Functionals, FBoundedByBallProperty) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    EXPECT_LE(F_functional(random_polygon(rng, 3 + trial % 10)), F_ball(2) * (1 + 1e-12));
    if (trial % 10 == 0) {
      EXPECT_LE(F_functional(random_smooth(rng, 6, 0.08)), F_ball(2) * (1 + 1e-10));
    }
  }
}

// ---------------------------------------------------------------------------
// Hausdorff distance

TEST(Hausdorff, ConcentricBalls) {
  EXPECT_NEAR(hausdorff_distance(make_support_body(ball_coeffs(1.0)), make_support_body(ball_coeffs(1.7))), 0.7,
              1e-14);
}

TEST(Hausdorff, TranslateDistance) {
  const Vec2 x0(0.3, -0.4);
  const auto P = unit_square();
  EXPECT_NEAR(hausdorff_distance(P, transform(P, x0, 1.0)), 0.5, 1e-12);
  const auto b = make_support_body(coeffs(1.0, {0, 0.05}, {0.02}));
  EXPECT_NEAR(hausdorff_distance(b, transform(b, x0, 1.0)), 0.5, 1e-12);
  const Cylinder3D c(0.2, 1.0);
  EXPECT_NEAR(hausdorff_distance(c, transform(c, Vec3(0.1, 0.2, 0.2), 1.0)), 0.3, 1e-9);
}

TEST(Hausdorff, SquareVersusDisk) {
  const auto d = make_support_body(ball_coeffs(2.0 / pi));
  EXPECT_NEAR(hausdorff_distance(unit_square(), d), 2.0 / pi - 0.5, 1e-12);
}

TEST(Hausdorff, MetricProperties) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = random_polygon(rng, 6), B = random_polygon(rng, 7), C = random_polygon(rng, 8);
    const double ab = hausdorff_distance(A, B), ba = hausdorff_distance(B, A);
    EXPECT_NEAR(ab, ba, 1e-14);
    EXPECT_LE(ab, hausdorff_distance(A, C) + hausdorff_distance(C, B) + 1e-12);
    EXPECT_EQ(hausdorff_distance(A, A), 0.0);
    EXPECT_NEAR(hausdorff_distance(transform(A, Vec2::Zero(), 2.0), transform(B, Vec2::Zero(), 2.0)), 2 * ab, 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Asymmetry

TEST(Asymmetry, BallIsZero) {
  const auto a = asymmetry(make_support_body(ball_coeffs(1.3, Vec2(0.4, -0.1))));
  EXPECT_LT(a.value, 1e-10);
  EXPECT_NEAR(a.center[0], 0.4, 1e-6);
  const auto b = asymmetry(make_support_body(ball_coeffs(1.0, Vec3(0.1, 0.2, 0.0)), 16));
  EXPECT_LT(b.value, 1e-10);
}

TEST(Asymmetry, UnitSquare) {
  const auto a = asymmetry(unit_square(Vec2(0.2, 0.1)));
  EXPECT_NEAR(a.value, 1 - pi / 4, 1e-9);
  EXPECT_NEAR(a.radius, 2 / pi, 1e-15);
  EXPECT_NEAR(a.center[0], 0.2, 1e-6);
  EXPECT_LT(a.gap, 1e-8);
}

TEST(Asymmetry, SmallSecondHarmonic) {
  for (double t : {1e-2, 1e-3}) {
    const auto b = make_support_body(coeffs(1.0, {0, t}));
    const auto a = asymmetry(b);
    EXPECT_NEAR(a.value / t, 1.0, 5 * t);
  }
}

TEST(Asymmetry, ModesAgreeInPlane) {
  Rng rng(3);
  const auto b = random_smooth(rng, 4, 0.05);
  EXPECT_NEAR(asymmetry(b, AsymmetryMode::Perimeter).value, asymmetry(b, AsymmetryMode::MeanWidth).value, 1e-12);
}

TEST(Asymmetry, InvariantUnderSimilarity) {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto P = random_polygon(rng, 6);
    const double a = asymmetry(P).value;
    EXPECT_NEAR(asymmetry(transform(P, Vec2(1.0, -2.0), 3.0)).value, a, 1e-8);
  }
}

TEST(Asymmetry, Cylinder) {
  const auto a = asymmetry(Cylinder3D(0.5, 1.0), AsymmetryMode::MeanWidth);
  EXPECT_GT(a.value, 0.0);
  const auto b = asymmetry(Cylinder3D(0.5, 1.0, Vec3(0.3, 0.1, -0.2)), AsymmetryMode::MeanWidth);
  EXPECT_NEAR(a.value, b.value, 1e-8);
  EXPECT_LT(a.gap, 1e-6);
}

// ---------------------------------------------------------------------------
// Deficit records

TEST(Deficits, BallIsEqualityCase) {
  for (double beta : {0.0, 1.0, 5.0 / 3.0, 3.0}) {
    const auto r = check_curvature_bound(make_support_body(ball_coeffs(1.0)), beta);
    EXPECT_NEAR(r.deficit, 0.0, 1e-12);
    EXPECT_NEAR(*r.certificate, 0.0, 1e-15);
  }
}

TEST(Deficits, ThirdHarmonicUpperRegime) {
  const auto r = check_curvature_bound(make_support_body(coeffs(1.0, {0, 0, 0.1})), 5.0 / 3.0);
  EXPECT_EQ(r.id, "curvature-upper");
  EXPECT_NEAR(r.deficit, pi / 60, 1e-12);
  EXPECT_NEAR(*r.certificate, -pi / 30, 1e-12);
  EXPECT_NEAR(*r.certificate, 2 * (r.lhs - r.rhs), 1e-12);
}

TEST(Deficits, SquareLowerRegime) {
  const auto r = check_curvature_bound(unit_square(), 0.0);
  EXPECT_EQ(r.id, "curvature-lower");
  EXPECT_NEAR(r.deficit, pi / 2 - 4 / pi, 1e-14);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(Deficits, BetweenRegimesIsInformational) {
  const auto r = check_curvature_bound(unit_square(), 1.3);
  EXPECT_TRUE(r.regime_mismatch);
  EXPECT_FALSE(r.violated());
}

TEST(Deficits, CertificateMatchesRandomSpectral) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = random_smooth(rng, 6, 0.08);
    for (double beta : {0.0, 0.5, 1.0, 5.0 / 3.0, 8.0 / 3.0}) {
      const auto r = check_curvature_bound(b, beta);
      EXPECT_NEAR(*r.certificate, 2 * (r.lhs - r.rhs), 1e-9);
      if (!r.regime_mismatch) {
        EXPECT_GE(r.deficit, -r.err_bound);
      }
    }
  }
}

TEST(Deficits, CertificateMatchesRandomSpectral3D) {
  Rng rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    SphericalCoeffs a(4);
    a.at(0, 0) = 1.0;
    for (int k = 1; k <= 4; ++k)
      for (int m = -k; m <= k; ++m) a.at(k, m) = rng.uniform(-0.02, 0.02) / k;
    const auto b = make_support_body(a, 20);
    for (double beta : {0.0, 1.0, 2.0, beta_threshold(3)}) {
      const auto r = check_curvature_bound(b, beta);
      EXPECT_NEAR(*r.certificate, 3 * (r.lhs - r.rhs), 1e-9);
      EXPECT_GE(r.deficit, -r.err_bound);
    }
  }
}

TEST(Deficits, MomentumBoundExamples) {
  std::vector<Vec2> circle;
  for (int i = 0; i <= 4000; ++i) circle.push_back(Vec2(std::cos(two_pi * i / 4000), std::sin(two_pi * i / 4000)));
  circle.back() = circle.front();
  const auto c = check_momentum_bound({{circle, false}}, 4000);
  EXPECT_NEAR(c.deficit / c.rhs, 0.0, 1e-6);
  const auto s = check_momentum_bound({curve_of(unit_square())});
  EXPECT_NEAR(s.deficit, 16 / (pi * pi) - 4.0 / 3.0, 1e-14);
  EXPECT_FALSE(s.expected_negative);
}

TEST(Deficits, DecomposableSquaresAreExpectedNegative) {
  const double side = 0.25;
  auto sq = [&](double x) {
    return ClosedCurve{{Vec2(x, 0), Vec2(x + side, 0), Vec2(x + side, side), Vec2(x, side)}, true};
  };
  const auto near = check_momentum_bound({sq(0), sq(0.3)});
  const auto far = check_momentum_bound({sq(0), sq(5.0)});
  EXPECT_LT(far.deficit, 0.0);
  EXPECT_TRUE(far.expected_negative);
  EXPECT_GT(near.deficit, far.deficit);
}

TEST(Deficits, NestedComponentsAreNotDecomposable) {
  const ClosedCurve outer{{Vec2(-2, -2), Vec2(2, -2), Vec2(2, 2), Vec2(-2, 2)}, true};
  const ClosedCurve inner{{Vec2(-0.5, -0.5), Vec2(-0.5, 0.5), Vec2(0.5, 0.5), Vec2(0.5, -0.5)}, true};
  const auto r = check_momentum_bound({outer, inner});
  EXPECT_FALSE(r.expected_negative);
  EXPECT_GE(r.deficit, 0.0);
}

TEST(Deficits, MomentumBoundRejectsBadCurves) {
  EXPECT_THROW(check_momentum_bound({{{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0.5, 2)}, false}}), OpenCurve);
  EXPECT_THROW(check_momentum_bound({{{Vec2(0, 0), Vec2(1, 1), Vec2(1, 0), Vec2(0, 1)}, true}}), SelfIntersection);
}

TEST(Deficits, MomentumBoundRandomPolygonsProperty) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = check_momentum_bound({curve_of(random_polygon(rng, 3 + trial % 12))});
    EXPECT_GE(r.deficit, -r.err_bound);
  }
}

TEST(Deficits, ArclengthResampleIsEquispaced) {
  const auto p = arclength_resample(unit_square().vertices(), 8);
  ASSERT_EQ(p.size(), 8u);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR((p[(i + 1) % 8] - p[i]).norm(), 0.5, 1e-14);
}
