#include "isocurv/io.hpp"

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

}  // namespace

// ---------------------------------------------------------------------------
// Validation

TEST(SupportBody, DiskHasConstantSupport) {
  const auto b = make_support_body(coeffs(1.0, {}));
  for (const auto& nd : b.nodes()) {
    EXPECT_NEAR(nd.h, 1.0, 1e-15);
    EXPECT_NEAR(nd.point.norm(), 1.0, 1e-14);
    EXPECT_NEAR(nd.s(1), 1.0, 1e-14);
  }
}

TEST(SupportBody, ThirdHarmonicSlack) {
  const auto b = make_support_body(coeffs(1.0, {0, 0, 0.1}));
  EXPECT_NEAR(b.min_slack(), 0.2, 1e-12);
  const auto& n0 = b.nodes().front();
  EXPECT_NEAR(n0.point.x(), 1.1, 1e-14);
  EXPECT_NEAR(n0.point.y(), 0.0, 1e-14);
  EXPECT_NEAR(n0.s(1), 0.2, 1e-14);
}

TEST(SupportBody, NotConvexReportsSlack) {
  try {
    make_support_body(coeffs(1.0, {0, 0, 0.2}));
    FAIL() << "expected NotConvex";
  } catch (const NotConvex& e) {
    EXPECT_NEAR(e.min_slack, -0.6, 1e-12);
  }
}

TEST(SupportBody, NonPositiveSupport) {
  EXPECT_THROW(make_support_body(coeffs(1.0, {1.5})), NonPositiveSupport);
}

TEST(SupportBody, TranslatedDiskIsShiftedCircle) {
  const auto b = make_support_body(coeffs(1.0, {0.3}));
  for (const auto& nd : b.nodes()) EXPECT_NEAR((nd.point - Vec2(0.3, 0)).norm(), 1.0, 1e-14);
  const Vec2 c = curvature_centroid(b);
  EXPECT_NEAR(c.x(), 0.3, 1e-15);
  EXPECT_NEAR(c.y(), 0.0, 1e-15);
}

TEST(SupportBody, SphereBall) {
  const auto b = make_support_body(ball_coeffs(1.0, Vec3(0, 0, 0)), 16);
  const auto r = measure_report(b);
  for (int i = 0; i <= 3; ++i) EXPECT_NEAR(r.W[static_cast<std::size_t>(i)].value, 4 * pi / 3, 1e-12) << i;
  EXPECT_NEAR(r.perimeter.value, 4 * pi, 1e-12);
}

TEST(SupportBody, TranslatedBallCentroids) {
  const Vec3 c(0.1, -0.2, 0.3);
  const auto b = make_support_body(ball_coeffs(2.0, c), 16);
  EXPECT_LT((curvature_centroid(b) - c).norm(), 1e-14);
  EXPECT_LT((centroid(b) - c).norm(), 1e-12);
  for (const auto& nd : b.nodes()) EXPECT_NEAR((nd.point - c).norm(), 2.0, 1e-12);
}

TEST(Polygon, RejectsClockwiseAndDegenerate) {
  EXPECT_THROW(Polygon2D({Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)}), ValidationError);
  EXPECT_THROW(Polygon2D({Vec2(0, 0), Vec2(1, 0)}), ValidationError);
  EXPECT_THROW(Polygon2D({Vec2(0, 0), Vec2(2, 0), Vec2(1, 0.1), Vec2(1, 1)}), NotConvex);
}

TEST(Polygon, SquareSupport) {
  const auto P = unit_square();
  EXPECT_NEAR(P.support(Vec2(1, 0)), 0.5, 1e-15);
  EXPECT_NEAR(P.support(Vec2(1, 1).normalized()), std::sqrt(0.5), 1e-15);
}

TEST(Polygon, RhombusSupportAlongDiagonal) {
  const double l = 4.0, a = 0.7;
  EXPECT_NEAR(rhombus(l, a).support(Vec2(1, 0)), l / 4 * std::cos(a / 2), 1e-15);
}

TEST(Polygon, SampledBoundaryConvergesToVertices) {
  const auto P = unit_square();
  auto dist_to_boundary = [&](const Vec2& q) {
    double d = 1e300;
    for (std::size_t i = 0; i < P.size(); ++i) {
      const Vec2 a = P.vertex(i), e = P.vertex(i + 1) - a;
      const double t = std::clamp((q - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
      d = std::min(d, (a + t * e - q).norm());
    }
    return d;
  };
  for (int n : {64, 128, 256, 512}) {
    const DirectionGrid<2> g(n);
    const auto pts = envelope_points(polygon_support_samples(P, g), g);
    for (const auto& q : pts) EXPECT_LT(dist_to_boundary(q), 1e-13);
    for (const auto& v : P.vertices()) {
      double d = 1e300;
      for (const auto& q : pts) d = std::min(d, (q - v).norm());
      EXPECT_LT(d, 1e-13);
    }
  }
}

// ---------------------------------------------------------------------------
// Transform

TEST(Transform, TranslatedDisk) {
  const auto a = transform(coeffs(1.0, {}), Vec2(0.3, 0), 1.0);
  EXPECT_NEAR(a.a0, 1.0, 0);
  EXPECT_NEAR(a.c(1), 0.3, 1e-15);
}

TEST(Transform, ScalingDoublesPerimeter) {
  Rng rng(3);
  const auto P = random_polygon(rng, 12);
  EXPECT_NEAR(transform(P, Vec2::Zero(), 2.0).perimeter(), 2 * P.perimeter(), 1e-13);
  const auto b = make_support_body(coeffs(1.0, {0.1, 0.05, 0.02}, {0.0, -0.03}));
  const auto b2 = transform(b, Vec2::Zero(), 2.0);
  EXPECT_NEAR(measure_report(b2).perimeter.value, 2 * measure_report(b).perimeter.value, 1e-12);
}

TEST(Transform, SquareScaledKeepsLastQuermass) {
  EXPECT_NEAR(measure_report(transform(unit_square(), Vec2::Zero(), 3.0)).W[2].value, pi, 0);
}

TEST(Transform, PropertyScalingLaws) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto P = random_polygon(rng, 10);
    const double lam = rng.uniform(0.2, 5.0);
    const Vec2 x0(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const auto Q = transform(P, x0, lam);
    const auto a = measure_report(P), b = measure_report(Q);
    EXPECT_NEAR(b.volume.value, lam * lam * a.volume.value, 1e-12 * b.volume.value);
    EXPECT_NEAR(b.perimeter.value, lam * a.perimeter.value, 1e-12 * b.perimeter.value);
    const double ma = boundary_momentum(P, centroid(P)).value, mb = boundary_momentum(Q, centroid(Q)).value;
    EXPECT_NEAR(mb, std::pow(lam, 3) * ma, 1e-11 * mb);
  }
}

// ---------------------------------------------------------------------------
// Quermassintegrals and momenta

TEST(Measures, SquareQuermass) {
  const auto r = measure_report(unit_square());
  EXPECT_DOUBLE_EQ(r.W[0].value, 1.0);
  EXPECT_DOUBLE_EQ(r.W[1].value, 2.0);
  EXPECT_DOUBLE_EQ(r.W[2].value, pi);
}

TEST(Measures, ThirdHarmonicQuermass) {
  const auto r = measure_report(make_support_body(coeffs(1.0, {0, 0, 0.1})));
  EXPECT_NEAR(r.W[0].value, 0.96 * pi, 1e-13);
  EXPECT_NEAR(r.W[1].value, pi, 1e-13);
  EXPECT_NEAR(r.W[2].value, pi, 1e-15);
  EXPECT_LT(r.W[0].error, 1e-12);
}

TEST(Measures, PolygonSupportBodyAgreesWithExact) {
  // Smooth bodies and their quadrature: the area formula (1/2) int h (h + h'')
  // against the shoelace area of a fine polygon inscribed in the curve.
  const auto b = make_support_body(coeffs(1.0, {0.05, 0.04, 0.01}, {0.02}));
  std::vector<Vec2> pts;
  for (const auto& nd : b.nodes()) pts.push_back(nd.point);
  const Polygon2D P(pts);
  EXPECT_NEAR(measure_report(b).volume.value, P.area(), 1e-5);
  EXPECT_NEAR(measure_report(b).perimeter.value, P.perimeter(), 1e-5);
}

TEST(Measures, AleksandrovFenchelHoldsForRandomBodies) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    EXPECT_GE(aleksandrov_fenchel_slack(measure_report(random_polygon(rng, 9))), -1e-14);
  }
  SphericalCoeffs a(3);
  a.at(0, 0) = 1.0;
  a.at(2, 1) = 0.03;
  a.at(3, -2) = 0.02;
  EXPECT_GE(aleksandrov_fenchel_slack(measure_report(make_support_body(a, 24))), -1e-13);
}

TEST(Measures, CurvatureMeasureAtoms) {
  const auto m = curvature_measure(unit_square());
  ASSERT_EQ(m.atoms.size(), 4u);
  for (const auto& a : m.atoms) EXPECT_NEAR(a.mass, pi / 2, 1e-15);
  const double alpha = 0.6;
  const auto R = curvature_measure(rhombus(4.0, alpha));
  EXPECT_NEAR(R.atoms[0].mass, pi - alpha, 1e-14);
  EXPECT_NEAR(R.atoms[1].mass, alpha, 1e-14);
  EXPECT_NEAR(R.atoms[2].mass, pi - alpha, 1e-14);
  const auto D = curvature_measure(make_support_body(coeffs(2.0, {})));
  EXPECT_NEAR(D.density.front(), 0.5, 1e-15);
  EXPECT_NEAR(D.total(), two_pi, 1e-12);
}

TEST(Measures, BoundaryMomentumExamples) {
  EXPECT_NEAR(boundary_momentum(unit_square(), Vec2::Zero()).value, 4.0 / 3.0, 1e-15);
  const double r = 1.7;
  EXPECT_NEAR(boundary_momentum(make_support_body(coeffs(r, {})), Vec2::Zero()).value, two_pi * r * r * r, 1e-12);
  // Cylinder with L = 1/eps - eps: direct integration, not the printed form.
  const auto c = cylinder_reference(0.1);
  EXPECT_NEAR(boundary_momentum(cylinder_family(0.1), Vec3::Zero()).value, c.total(), 1e-12);
  EXPECT_NEAR(c.total(), 52.40679, 1e-5);
  EXPECT_NEAR(c.printed_total(), 204.82, 5e-3);
}

TEST(Measures, CylinderMomentumAgainstQuadrature) {
  // Independent tensor-product quadrature of int |x|^2 over the cylinder surface.
  const double e = 0.3, L = 1.2;
  const int n = 400;
  double lateral = 0.0, caps = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = -L / 2 + L * (i + 0.5) / n;
    lateral += (e * e + z * z) * two_pi * e * L / n;
    const double rr = e * (i + 0.5) / n;
    caps += 2.0 * (rr * rr + L * L / 4) * two_pi * rr * e / n;
  }
  EXPECT_NEAR(boundary_momentum(Cylinder3D(e, L), Vec3::Zero()).value, lateral + caps, 1e-5);
}

TEST(Measures, GaussMomentumExamples) {
  const double r = 1.3;
  const auto d = make_support_body(ball_coeffs(r, Vec2(0.2, 0.1)));
  EXPECT_NEAR(gauss_weighted_momentum(d, Vec2(0.2, 0.1)).value(), two_pi * r * r, 1e-12);
  const auto b = make_support_body(coeffs(1.0, {0, 0, 0.1}));
  const auto g = gauss_weighted_momentum(b, Vec2::Zero());
  EXPECT_NEAR(g.quadrature, 2.1 * pi, 1e-12);
  EXPECT_NEAR(g.spectral, 2.1 * pi, 1e-12);
  EXPECT_NEAR(gauss_weighted_momentum(unit_square(), Vec2::Zero()).value(), pi, 1e-14);
}

TEST(Measures, GaussMomentumTwoRoutesAgree3D) {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    SphericalCoeffs a(4);
    a.at(0, 0) = 1.0;
    for (int k = 1; k <= 4; ++k)
      for (int m = -k; m <= k; ++m) a.at(k, m) = rng.uniform(-0.01, 0.01);
    const auto b = make_support_body(a, 24);
    const Vec3 x0(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
    const auto g = gauss_weighted_momentum(b, x0);
    EXPECT_NEAR(g.quadrature, g.spectral, 1e-11 * g.spectral);
  }
}

TEST(Measures, MeanCurvatureMomentum) {
  const double r = 1.5;
  EXPECT_NEAR(mean_curvature_momentum(make_support_body(coeffs(r, {})), Vec2::Zero()).value, two_pi * r * r, 1e-12);
  const auto ball = make_support_body(ball_coeffs(1.0, Vec3(0, 0, 0)), 16);
  EXPECT_NEAR(mean_curvature_momentum(ball, Vec3::Zero()).value, 4 * pi, 1e-12);
  EXPECT_NEAR(min_mean_curvature_momentum(ball).value, 8 * pi, 1e-12);
  const auto e = ellipse(0.05);
  EXPECT_NEAR(mean_curvature_momentum(e, Vec2::Zero()).value, ellipse_reference(0.05).curvature_momentum, 1e-3);
}

TEST(Measures, MeanCurvatureMomentumBoundProperty) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    SphericalCoeffs a(3);
    a.at(0, 0) = 1.0;
    for (int k = 2; k <= 3; ++k)
      for (int m = -k; m <= k; ++m) a.at(k, m) = rng.uniform(-0.02, 0.02);
    const auto b = make_support_body(a, 16);
    EXPECT_GE(min_mean_curvature_momentum(b).value, 6.0 * measure_report(b).volume.value * (1 - 1e-12));
  }
}

TEST(Measures, CylinderMeanCurvatureAgainstQuadrature) {
  // Lateral H = 1/(2 eps) (normalized), rims carry (pi/2)/2 per unit length.
  const double e = 0.4, L = 2.0;
  const int n = 2000;
  double lateral = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = -L / 2 + L * (i + 0.5) / n;
    lateral += (e * e + z * z) * (1.0 / (2 * e)) * two_pi * e * L / n;
  }
  const double rims = 2.0 * (pi / 4) * two_pi * e * (e * e + L * L / 4);
  EXPECT_NEAR(mean_curvature_momentum(Cylinder3D(e, L), Vec3::Zero()).value, lateral + rims, 1e-5);
  EXPECT_NEAR(measure_report(Cylinder3D(e, L)).W[2].value, (pi * L + pi * pi * e) / 3, 1e-14);
}

TEST(Measures, StarBodyMatchesSupportBody) {
  // A disk of radius 2 centred at the origin in polar form.
  const StarBody2D s(std::vector<double>(64, 2.0));
  const auto r = measure_report(s);
  EXPECT_NEAR(r.volume.value, 4 * pi, 1e-12);
  EXPECT_NEAR(r.perimeter.value, 4 * pi, 1e-12);
  EXPECT_NEAR(boundary_momentum(s, Vec2::Zero()).value, two_pi * 8, 1e-11);
  EXPECT_NEAR(mean_curvature_momentum(s, Vec2::Zero()).value, two_pi * 4, 1e-11);
}

TEST(Measures, CentroidsOfSymmetricBodies) {
  const Vec2 p(0.7, -0.4);
  const auto sq = unit_square(p);
  EXPECT_LT((centroid(sq) - p).norm(), 1e-15);
  EXPECT_LT((curvature_centroid(sq) - p).norm(), 1e-15);
  EXPECT_LT(curvature_centroid(unit_square()).norm(), 1e-16);
  const auto e = transform(ellipse(0.1), p, 1.0);
  EXPECT_LT((centroid(e) - p).norm(), 1e-12);
  EXPECT_LT((curvature_centroid(e) - p).norm(), 1e-12);
}

TEST(Measures, CurvatureCentroidInsideBody) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto P = random_polygon(rng, 8);
    const Vec2 c = curvature_centroid(P);
    for (std::size_t i = 0; i < P.size(); ++i)
      EXPECT_GE(Polygon2D::cross(P.vertex(i + 1) - P.vertex(i), c - P.vertex(i)), -1e-12);
  }
}

// ---------------------------------------------------------------------------
// Families

TEST(Families, EllipseExpansions) {
  EXPECT_NEAR(measure_report(ellipse(0.0)).perimeter.value, two_pi, 1e-12);
  const double eps = 0.05;
  const auto b = ellipse(eps);
  const auto ref = ellipse_reference(eps);
  const auto r = measure_report(b);
  EXPECT_NEAR(r.volume.value, ref.area, 1e-12);
  EXPECT_NEAR(r.perimeter.value, ref.perimeter, 1e-5);
  EXPECT_THROW(ellipse(0.3), ValidationError);
}

TEST(Families, EllipseCorollaryGap) {
  for (double beta : {0.0, 1.0, 1.5}) {
    const double eps = 0.01;
    EXPECT_NEAR(corollary_gap(ellipse(eps), beta) / ellipse_reference(eps).corollary_gap(beta), 1.0, 1e-3) << beta;
  }
}

TEST(Families, RhombusExactMatchesAtoms) {
  EXPECT_NEAR(rhombus_H_exact(4.0, pi / 2), pi, 1e-15);
  for (int i = 1; i <= 50; ++i) {
    const double alpha = pi * i / 51.0;
    const double l = 3.0;
    EXPECT_NEAR(gauss_weighted_momentum(rhombus(l, alpha), Vec2::Zero()).value(), rhombus_H_exact(l, alpha), 1e-12);
    EXPECT_LT(rhombus_H_exact(l, alpha), pi * l * l / 8);
  }
}

TEST(Families, CylinderReference) {
  const auto c = cylinder_reference(0.1);
  EXPECT_NEAR(c.L, 9.9, 1e-15);
  EXPECT_NEAR(c.perimeter, two_pi, 1e-13);
  EXPECT_GT(cylinder_reference(0.01).printed_total(), 10 * c.printed_total());
  EXPECT_GT(cylinder_reference(0.01).total(), 10 * c.total());
  const auto d = cylinder_reference(1.0 - 1e-9);
  EXPECT_NEAR(d.printed_caps, pi / 2, 1e-6);
  EXPECT_NEAR(cylinder_reference(0.001).total() / cylinder_reference(0.001).growth(), 1.0, 1e-3);
}

TEST(Families, PerturbedBallNormalization) {
  HarmonicSpectrum u(2, 2);
  u[3] = std::sqrt(pi);  // cos 2 theta
  const auto b = perturbed_ball<2>(u, 0.01, DirectionGrid<2>(256));
  EXPECT_NEAR(b.volume(), pi, 1e-12);
  EXPECT_LT(b.barycenter().norm(), 1e-12);
  const auto ball = perturbed_ball<2>(u, 0.0, DirectionGrid<2>(64));
  EXPECT_NEAR(ball.radius(), 1.0, 1e-14);
  EXPECT_THROW(perturbed_ball<2>(u, 0.2, DirectionGrid<2>(64)), PerturbationTooLarge);
}

TEST(Families, PerturbedBallOffCentreIsRecentred) {
  HarmonicSpectrum u(3, 3);
  u[static_cast<std::size_t>(sh_index(1, 0))] = 0.02;
  u[static_cast<std::size_t>(sh_index(3, 2))] = 0.01;
  const auto b = perturbed_ball<3>(u, 1.0, DirectionGrid<3>(16));
  EXPECT_NEAR(b.volume(), 4 * pi / 3, 1e-12);
  EXPECT_LT(b.barycenter().norm(), 1e-12);
}

// ---------------------------------------------------------------------------
// Serialization

TEST(Io, RoundTripAndFingerprint) {
  const json j = json::parse(R"({"type":"support","dim":2,"a0":1.0,"cos":[0,0,0.1],"grid":256})");
  const AnyBody b = body_from_json(j);
  const std::string fp = fingerprint(b);
  EXPECT_EQ(fp.size(), 16u);
  EXPECT_EQ(fingerprint(body_from_json(to_json(b))), fp);
  const AnyBody c = body_from_json(json::parse(R"({"type":"support","dim":2,"a0":1.0,"cos":[0,0,0.1001],"grid":256})"));
  EXPECT_NE(fingerprint(c), fp);
}

TEST(Io, ParsesAllTypes) {
  EXPECT_EQ(dimension(body_from_json(json::parse(R"({"type":"polygon","vertices":[[0,0],[1,0],[0,1]]})"))), 2);
  EXPECT_EQ(dimension(body_from_json(json::parse(R"({"type":"cylinder","eps":0.1,"L":2})"))), 3);
  EXPECT_EQ(dimension(body_from_json(json::parse(R"({"type":"ball","dim":3,"r":1,"grid":8})"))), 3);
  EXPECT_EQ(dimension(body_from_json(json::parse(R"({"type":"ellipse","a":1.1,"b":0.9,"grid":128})"))), 2);
  EXPECT_EQ(dimension(body_from_json(json::parse(R"({"type":"star","rho":[1,1,1,1,1,1,1,1]})"))), 2);
  EXPECT_EQ(dimension(body_from_json(json::parse(
                R"({"type":"support","dim":3,"a0":1,"coeffs":[[2,1,0.01]],"grid":16})"))),
            3);
  const AnyBody t = body_from_json(json::parse(
      R"({"type":"transformed","base":{"type":"polygon","vertices":[[0,0],[1,0],[0,1]]},"translation":[1,2],"scale":2})"));
  EXPECT_NEAR(std::get<Polygon2D>(t).vertex(0).x(), 2.0, 1e-15);
}

TEST(Io, RejectsMalformed) {
  EXPECT_THROW(body_from_json(json::parse(R"({"type":"blob"})")), ValidationError);
  EXPECT_THROW(body_from_json(json::parse(R"({"type":"polygon"})")), ValidationError);
  EXPECT_THROW(body_from_json(json::parse(R"({"type":"support","dim":2})")), ValidationError);
  EXPECT_THROW(body_from_json(json::parse(R"({"type":"support","dim":2,"a0":1,"cos":[0,0,0.2]})")), NotConvex);
  EXPECT_THROW(body_from_file("/nonexistent/body.json"), ValidationError);
}
