#pragma once

// Volumes, perimeters, quermassintegrals, curvature measures, weighted
// boundary momenta and the two centroids of a body.

#include "isocurv/bodies.hpp"

#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

namespace isocurv {

/// A computed value and a heuristic bound on its quadrature error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct MeasureReport {
  int dim = 2;
  Estimate volume;
  Estimate perimeter;
  std::vector<Estimate> W;  // W_0 ... W_n
  Estimate mean_width;
};

namespace detail {

inline constexpr double roundoff = 64.0 * std::numeric_limits<double>::epsilon();

/// Quadrature of a node functional over the sphere of directions, with the
/// half-grid difference (every other node in 2D, every other longitude in
/// 3D) plus a roundoff floor as error estimate.
template <int N, class F>
Estimate integrate(const SupportBody<N>& b, F&& f) {
  const auto& nodes = b.nodes();
  double full = 0.0, half = 0.0, mag = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = f(nodes[i]) * nodes[i].weight;
    full += v;
    mag += std::abs(v);
    bool even;
    if constexpr (N == 2) {
      even = i % 2 == 0;
    } else {
      even = (static_cast<int>(i) % b.grid().longitudes()) % 2 == 0;
    }
    if (even) half += 2.0 * v;
  }
  return {full, std::abs(full - half) + roundoff * mag};
}

template <int N, class F>
Vec<N> integrate_vector(const SupportBody<N>& b, F&& f) {
  Vec<N> s = Vec<N>::Zero();
  for (const auto& nd : b.nodes()) s += f(nd) * nd.weight;
  return s;
}

inline Estimate exact(double v) { return {v, roundoff * std::abs(v)}; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Measure reports

/// W_i = (1/n) int h s_{n-1-i} over S^{n-1} for i < n, and W_n = omega_n.
template <int N>
MeasureReport measure_report(const SupportBody<N>& b) {
  MeasureReport r;
  r.dim = N;
  for (int i = 0; i < N; ++i) {
    Estimate e = detail::integrate(b, [i](const SupportNode<N>& nd) { return nd.h * nd.s(N - 1 - i); });
    e.value /= N;
    e.error /= N;
    r.W.push_back(e);
  }
  r.W.push_back(detail::exact(unit_ball_volume(N)));
  r.volume = r.W[0];
  r.perimeter = {N * r.W[1].value, N * r.W[1].error};
  const double f = 2.0 / unit_ball_volume(N);
  r.mean_width = {f * r.W[N - 1].value, f * r.W[N - 1].error};
  return r;
}

inline MeasureReport measure_report(const Polygon2D& P) {
  MeasureReport r;
  r.dim = 2;
  r.volume = detail::exact(P.area());
  r.perimeter = detail::exact(P.perimeter());
  r.W = {r.volume, detail::exact(0.5 * P.perimeter()), detail::exact(pi)};
  r.mean_width = detail::exact(P.perimeter() / pi);
  return r;
}

inline MeasureReport measure_report(const Cylinder3D& c) {
  MeasureReport r;
  r.dim = 3;
  const double e = c.eps, L = c.L;
  r.volume = detail::exact(pi * e * e * L);
  r.perimeter = detail::exact(two_pi * e * L + two_pi * e * e);
  // W_2 = (1/3) int H: lateral H = 1/(2 eps), plus the two right-angled rims.
  r.W = {r.volume, detail::exact(r.perimeter.value / 3.0), detail::exact(pi * (L + pi * e) / 3.0),
         detail::exact(unit_ball_volume(3))};
  r.mean_width = detail::exact(2.0 * r.W[2].value / unit_ball_volume(3));
  return r;
}

/// Area and length of a star body; W_2 = pi by the turning-tangent theorem.
inline MeasureReport measure_report(const StarBody2D& s) {
  double area = 0.0, per = 0.0, area_h = 0.0, per_h = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    const auto& q = s.jet(j);
    const double a = 0.5 * q.f * q.f * s.weight(), p = std::hypot(q.f, q.d1) * s.weight();
    area += a;
    per += p;
    if (j % 2 == 0) {
      area_h += 2 * a;
      per_h += 2 * p;
    }
  }
  MeasureReport r;
  r.dim = 2;
  r.volume = {area, std::abs(area - area_h) + detail::roundoff * area};
  r.perimeter = {per, std::abs(per - per_h) + detail::roundoff * per};
  r.W = {r.volume, {0.5 * per, 0.5 * r.perimeter.error}, detail::exact(pi)};
  r.mean_width = {per / pi, r.perimeter.error / pi};
  return r;
}

/// Smallest relative slack of the Aleksandrov-Fenchel chain
/// (W_j/omega)^{1/(n-j)} >= (W_i/omega)^{1/(n-i)}, 0 <= i < j < n.
inline double aleksandrov_fenchel_slack(const MeasureReport& r) {
  const int n = r.dim;
  const double w = unit_ball_volume(n);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = std::pow(r.W[static_cast<std::size_t>(j)].value / w, 1.0 / (n - j));
      const double b = std::pow(r.W[static_cast<std::size_t>(i)].value / w, 1.0 / (n - i));
      worst = std::min(worst, (a - b) / a);
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Curvature measures (planar)

struct CurvatureAtom {
  Vec2 point;
  double mass = 0.0;
};

/// Planar curvature measure: atoms plus a density against arclength.
struct CurvatureMeasure {
  std::vector<CurvatureAtom> atoms;
  std::vector<Vec2> points;
  std::vector<double> density;    // curvature 1/(h + h'') at each node
  std::vector<double> arclength;  // arclength element (h + h'') dtheta

  double total() const {
    double t = 0.0;
    for (const auto& a : atoms) t += a.mass;
    for (std::size_t i = 0; i < density.size(); ++i) t += density[i] * arclength[i];
    return t;
  }

  template <class F>
  double integrate(F&& phi) const {
    double t = 0.0;
    for (const auto& a : atoms) t += a.mass * phi(a.point);
    for (std::size_t i = 0; i < density.size(); ++i) t += density[i] * arclength[i] * phi(points[i]);
    return t;
  }
};

inline CurvatureMeasure curvature_measure(const Polygon2D& P) {
  CurvatureMeasure m;
  for (std::size_t i = 0; i < P.size(); ++i) m.atoms.push_back({P.vertex(i), P.exterior_angle(i)});
  return m;
}

/// Smooth bodies: the Gauss-map pushforward is uniform, so kappa ds = dtheta.
/// Nodes with vanishing radius carry their mass as atoms.
inline CurvatureMeasure curvature_measure(const SupportBody<2>& b) {
  CurvatureMeasure m;
  for (const auto& nd : b.nodes()) {
    const double r = nd.radii[0];
    if (r > 1e-14 * std::abs(b.mean_support())) {
      m.points.push_back(nd.point);
      m.density.push_back(1.0 / r);
      m.arclength.push_back(r * nd.weight);
    } else {
      m.atoms.push_back({nd.point, nd.weight});
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Boundary momentum  int_{bd E} |x - x0|^2

template <int N>
Estimate boundary_momentum(const SupportBody<N>& b, const std::type_identity_t<Vec<N>>& x0) {
  return detail::integrate(b, [&](const SupportNode<N>& nd) { return (nd.point - x0).squaredNorm() * nd.s(N - 1); });
}

/// Exact per-edge antiderivative: int_0^1 |a + t(b-a)|^2 L dt = L(|a|^2 + a.b + |b|^2)/3.
inline Estimate boundary_momentum(const Polygon2D& P, const Vec2& x0) {
  double m = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const Vec2 a = P.vertex(i) - x0, c = P.vertex(i + 1) - x0;
    m += (c - a).norm() * (a.squaredNorm() + a.dot(c) + c.squaredNorm()) / 3.0;
  }
  return detail::exact(m);
}

/// Lateral surface 2 pi [eps^3 L + eps L^3 / 12] and both caps
/// pi [eps^4 + L^2 eps^2 / 2] about the centre, then the parallel-axis shift.
inline Estimate boundary_momentum(const Cylinder3D& c, const Vec3& x0) {
  const double e = c.eps, L = c.L;
  const double lateral = two_pi * (e * e * e * L + e * L * L * L / 12.0);
  const double caps = pi * (e * e * e * e + 0.5 * L * L * e * e);
  const double per = two_pi * e * L + two_pi * e * e;
  return detail::exact(lateral + caps + per * (x0 - c.center).squaredNorm());
}

inline Estimate boundary_momentum(const StarBody2D& s, const Vec2& x0) {
  double m = 0.0, mh = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    const auto& q = s.jet(j);
    const double v = (s.point(j) - x0).squaredNorm() * std::hypot(q.f, q.d1) * s.weight();
    m += v;
    if (j % 2 == 0) mh += 2 * v;
  }
  return {m, std::abs(m - mh) + detail::roundoff * std::abs(m)};
}

// ---------------------------------------------------------------------------
// Gauss-curvature weighted momentum  int |x - x0|^2 dmu^G

struct GaussMomentum {
  double quadrature = 0.0;  // boundary quadrature against the curvature measure
  double spectral = 0.0;    // sum (1 + k(n+k-2)) a_k^2 of the recentred support
  double difference = 0.0;
  double error = 0.0;
  bool two_routes = false;
  double value() const { return quadrature; }
};

/// Sum (1 + k(n+k-2)) a^2 over the spectrum of h - <x0, w>.
inline double spectral_gauss_momentum(HarmonicSpectrum s, const Vec2& x0) {
  if (s.degree < 1) s.coeffs.resize(3, 0.0), s.degree = 1;
  s[1] -= x0.x() * std::sqrt(pi);
  s[2] -= x0.y() * std::sqrt(pi);
  double t = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) t += (1.0 + laplace_eigenvalue(s.degree_of(i), 2)) * s[i] * s[i];
  return t;
}

inline double spectral_gauss_momentum(HarmonicSpectrum s, const Vec3& x0) {
  if (s.degree < 1) s.coeffs.resize(4, 0.0), s.degree = 1;
  const double f = std::sqrt(4.0 * pi / 3.0);
  s[static_cast<std::size_t>(sh_index(1, 1))] -= x0.x() * f;
  s[static_cast<std::size_t>(sh_index(1, -1))] -= x0.y() * f;
  s[static_cast<std::size_t>(sh_index(1, 0))] -= x0.z() * f;
  double t = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) t += (1.0 + laplace_eigenvalue(s.degree_of(i), 3)) * s[i] * s[i];
  return t;
}

template <int N>
GaussMomentum gauss_weighted_momentum(const SupportBody<N>& b, const std::type_identity_t<Vec<N>>& x0, double rel_tol = 1e-8) {
  GaussMomentum g;
  const Estimate q = detail::integrate(b, [&](const SupportNode<N>& nd) { return (nd.point - x0).squaredNorm(); });
  g.quadrature = q.value;
  g.error = q.error;
  g.spectral = spectral_gauss_momentum(b.spectrum(), x0);
  g.difference = g.quadrature - g.spectral;
  g.two_routes = true;
  if (std::abs(g.difference) > rel_tol * std::max(std::abs(g.quadrature), std::abs(g.spectral)))
    throw MethodMismatch(g.quadrature, g.spectral);
  return g;
}

inline GaussMomentum gauss_weighted_momentum(const Polygon2D& P, const Vec2& x0) {
  GaussMomentum g;
  for (std::size_t i = 0; i < P.size(); ++i) g.quadrature += P.exterior_angle(i) * (P.vertex(i) - x0).squaredNorm();
  g.spectral = g.quadrature;
  g.error = detail::roundoff * g.quadrature;
  return g;
}

/// The Gauss image of each rim is a hemisphere, spread uniformly in the rim angle.
inline GaussMomentum gauss_weighted_momentum(const Cylinder3D& c, const Vec3& x0) {
  GaussMomentum g;
  const Vec3 y = x0 - c.center;
  g.quadrature = 4.0 * pi * (c.eps * c.eps + 0.25 * c.L * c.L + y.squaredNorm());
  g.spectral = g.quadrature;
  g.error = detail::roundoff * g.quadrature;
  return g;
}

// ---------------------------------------------------------------------------
// Mean-curvature weighted momentum  int |x - x0|^2 H dH^{n-1}, H normalized
// so that the unit sphere has H = 1. Multiply by (n-1) for the unnormalized
// measure.

template <int N>
Estimate mean_curvature_momentum(const SupportBody<N>& b, const std::type_identity_t<Vec<N>>& x0) {
  return detail::integrate(b, [&](const SupportNode<N>& nd) { return (nd.point - x0).squaredNorm() * nd.s(N - 2); });
}

/// Polar form: H ds = (rho^2 + 2 rho'^2 - rho rho'') / (rho^2 + rho'^2) dtheta.
inline Estimate mean_curvature_momentum(const StarBody2D& s, const Vec2& x0) {
  double m = 0.0, mh = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    const auto& q = s.jet(j);
    const double hds = (q.f * q.f + 2 * q.d1 * q.d1 - q.f * q.d2) / (q.f * q.f + q.d1 * q.d1);
    const double v = (s.point(j) - x0).squaredNorm() * hds * s.weight();
    m += v;
    if (j % 2 == 0) mh += 2 * v;
  }
  return {m, std::abs(m - mh) + detail::roundoff * std::abs(m)};
}

/// In the plane the mean and Gauss curvature measures coincide.
inline Estimate mean_curvature_momentum(const Polygon2D& P, const Vec2& x0) {
  const double v = gauss_weighted_momentum(P, x0).quadrature;
  return detail::exact(v);
}

/// Lateral H = 1/(2 eps); each rim carries (pi/2)/2 per unit length.
inline Estimate mean_curvature_momentum(const Cylinder3D& c, const Vec3& x0) {
  const double e = c.eps, L = c.L;
  const double about_center = pi * (e * e * L + L * L * L / 12.0) + pi * pi * e * (e * e + 0.25 * L * L);
  const double mass = pi * L + pi * pi * e;
  return detail::exact(about_center + mass * (x0 - c.center).squaredNorm());
}

/// Total mass and first moment of the normalized mean-curvature measure.
template <int N>
std::pair<double, Vec<N>> mean_curvature_moments(const SupportBody<N>& b) {
  const double mass = detail::integrate(b, [](const SupportNode<N>& nd) { return nd.s(N - 2); }).value;
  const Vec<N> first = detail::integrate_vector(b, [](const SupportNode<N>& nd) { return Vec<N>(nd.point * nd.s(N - 2)); });
  return {mass, first};
}

/// min over x0 of the unnormalized mean-curvature momentum (n-1) int H |x-x0|^2,
/// attained at the mean-curvature barycentre.
template <int N>
Estimate min_mean_curvature_momentum(const SupportBody<N>& b) {
  const auto [mass, first] = mean_curvature_moments(b);
  Estimate e = mean_curvature_momentum(b, Vec<N>(first / mass));
  e.value *= (N - 1);
  e.error *= (N - 1);
  return e;
}

inline Estimate min_mean_curvature_momentum(const Polygon2D& P) {
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < P.size(); ++i) c += P.exterior_angle(i) * P.vertex(i);
  return mean_curvature_momentum(P, Vec2(c / two_pi));
}

// ---------------------------------------------------------------------------
// Centroids

/// Barycentre of the boundary with respect to surface measure.
template <int N>
Vec<N> centroid(const SupportBody<N>& b) {
  const Vec<N> m = detail::integrate_vector(b, [](const SupportNode<N>& nd) { return Vec<N>(nd.point * nd.s(N - 1)); });
  const double p = detail::integrate(b, [](const SupportNode<N>& nd) { return nd.s(N - 1); }).value;
  return m / p;
}

inline Vec2 centroid(const Polygon2D& P) {
  Vec2 m = Vec2::Zero();
  for (std::size_t i = 0; i < P.size(); ++i) m += (P.vertex(i + 1) - P.vertex(i)).norm() * 0.5 * (P.vertex(i) + P.vertex(i + 1));
  return m / P.perimeter();
}

inline Vec3 centroid(const Cylinder3D& c) { return c.center; }

inline Vec2 centroid(const StarBody2D& s) {
  Vec2 m = Vec2::Zero();
  double p = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    const double ds = std::hypot(s.jet(j).f, s.jet(j).d1);
    m += s.point(j) * ds;
    p += ds;
  }
  return m / p;
}

/// (1/(n omega_n)) int x dmu^G. For series bodies this is read off the
/// degree-1 coefficients; analytic bodies use quadrature.
inline Vec2 curvature_centroid(const SupportBody<2>& b) {
  if (b.spectral()) return {b.coeffs().c(1), b.coeffs().s(1)};
  return detail::integrate_vector(b, [](const SupportNode<2>& nd) { return nd.point; }) / two_pi;
}

inline Vec3 curvature_centroid(const SupportBody<3>& b) {
  if (b.spectral()) {
    const auto& a = b.coeffs();
    const double s = std::sqrt(3.0);
    return {s * a.at(1, 1), s * a.at(1, -1), s * a.at(1, 0)};
  }
  return detail::integrate_vector(b, [](const SupportNode<3>& nd) { return nd.point; }) / (4.0 * pi);
}

inline Vec2 curvature_centroid(const Polygon2D& P) {
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < P.size(); ++i) c += P.exterior_angle(i) * P.vertex(i);
  return c / two_pi;
}

inline Vec3 curvature_centroid(const Cylinder3D& c) { return c.center; }

}  // namespace isocurv
