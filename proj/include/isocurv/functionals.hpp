#pragma once

// Composite functionals (script_H, G_beta, I_beta, F), Hausdorff distance,
// asymmetry indices and signed inequality deficits.

#include "isocurv/io.hpp"
#include "isocurv/minimize.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace isocurv {

inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

template <class B>
struct body_dim;
template <int N>
struct body_dim<SupportBody<N>> : std::integral_constant<int, N> {};
template <>
struct body_dim<Polygon2D> : std::integral_constant<int, 2> {};
template <>
struct body_dim<StarBody2D> : std::integral_constant<int, 2> {};
template <>
struct body_dim<Cylinder3D> : std::integral_constant<int, 3> {};
template <int N>
struct body_dim<NearlySphericalBody<N>> : std::integral_constant<int, N> {};

/// One evaluation of an inequality. `deficit` >= 0 means the claimed
/// inequality holds; `err_bound` is the quadrature error budget.
struct DeficitRecord {
  std::string id;
  double beta = nan;
  int n = 2;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;
  double err_bound = 0.0;
  std::string fingerprint;
  std::uint64_t seed = 0;
  std::optional<double> certificate;  // spectral identity, n * (lhs - rhs)
  bool regime_mismatch = false;       // beta strictly between the two regimes
  bool expected_negative = false;     // input outside the theorem's hypotheses

  bool violated(double abs_tol = 0.0) const { return !regime_mismatch && deficit < -(err_bound + abs_tol); }
};

// ---------------------------------------------------------------------------
// script_H = (1/n) inf_x0 int |x - x0|^2 dmu^G, attained at the curvature centroid

template <int N>
Estimate script_H(const SupportBody<N>& b) {
  const GaussMomentum g = gauss_weighted_momentum(b, curvature_centroid(b));
  return {g.quadrature / N, g.error / N};
}

inline Estimate script_H(const Polygon2D& P) {
  const GaussMomentum g = gauss_weighted_momentum(P, curvature_centroid(P));
  return {g.quadrature / 2.0, g.error / 2.0};
}

inline Estimate script_H(const Cylinder3D& c) {
  const GaussMomentum g = gauss_weighted_momentum(c, c.center);
  return {g.quadrature / 3.0, g.error / 3.0};
}

/// Cross-check of the infimum by direct minimization over x0.
template <class B>
double script_H_search(const B& b) {
  constexpr int N = body_dim<B>::value;
  auto f = [&](const VecX& x) { return gauss_weighted_momentum(b, Vec<N>(x)).quadrature; };
  const double scale = std::sqrt(measure_report(b).W[static_cast<std::size_t>(N - 1)].value);
  const auto r = nelder_mead(f, VecX(centroid(b)), 0.1 * scale, 1e-15, 1e-10 * scale);
  return r.value / N;
}

template <class B>
Estimate quermass(const B& b, int i) {
  return measure_report(b).W[static_cast<std::size_t>(i)];
}

/// G_beta = script_H + beta W_{n-2}.
template <class B>
double G_beta(const B& b, double beta) {
  constexpr int N = body_dim<B>::value;
  return script_H(b).value + beta * quermass(b, N - 2).value;
}

/// I_beta = (1 + beta)/omega_n - G_beta / W_{n-1}^2.
template <class B>
double I_beta(const B& b, double beta) {
  constexpr int N = body_dim<B>::value;
  const double w = quermass(b, N - 1).value;
  return (1.0 + beta) / unit_ball_volume(N) - G_beta(b, beta) / (w * w);
}

// ---------------------------------------------------------------------------
// F = |E|^{(n-2)(n+1)} inf_x0 M(x0) / P^{n^2-1}; the infimum sits at the
// boundary barycentre, M(xbar) = M(0) - P |xbar|^2.

inline double F_from(int n, double volume, double perimeter, double min_momentum) {
  return std::pow(volume, (n - 2) * (n + 1)) * min_momentum / std::pow(perimeter, n * n - 1);
}

template <class B>
double F_functional(const B& b) {
  constexpr int N = body_dim<B>::value;
  const auto r = measure_report(b);
  return F_from(N, r.volume.value, r.perimeter.value, boundary_momentum(b, centroid(b)).value);
}

template <int N>
double F_functional(const NearlySphericalBody<N>& b) {
  return F_from(N, b.volume(), b.perimeter(), b.min_momentum());
}

/// F of the ball by direct evaluation: omega^{(n-2)(n+1)} n omega / (n omega)^{n^2-1}.
inline double F_ball(int n) {
  const double w = unit_ball_volume(n);
  return F_from(n, w, n * w, n * w);
}

/// The constant 1/(n omega_n)^{n^2-2} as stated in the quantitative theorem.
inline double F_ball_printed(int n) { return 1.0 / std::pow(sphere_area(n), n * n - 2); }

// ---------------------------------------------------------------------------
// Support functions at arbitrary directions

template <int N>
double support_of(const SupportBody<N>& b, const Vec<N>& w) {
  return b.support(w);
}
inline double support_of(const Polygon2D& P, const Vec2& w) { return P.support(w); }
inline double support_of(const Cylinder3D& c, const Vec3& w) { return c.support(w); }

inline Vec3 direction_from_angles(double t, double p) {
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

namespace detail {

/// Local maximization of a residual on S^1 around angle t0 (half-width dt).
template <class F>
std::pair<double, double> refine_circle(F&& res, double t0, double dt) {
  auto neg = [&](double t) { return -res(t); };
  const auto r = boost::math::tools::brent_find_minima(neg, t0 - dt, t0 + dt, 50);
  const double at0 = res(t0);
  if (-r.second < at0) return {t0, at0};
  return {r.first, -r.second};
}

/// Local maximization of a residual on S^2 around (t0, p0).
template <class F>
std::pair<Vec3, double> refine_sphere(F&& res, double t0, double p0, double dt) {
  auto neg = [&](const VecX& a) { return -res(direction_from_angles(a[0], a[1])); };
  VecX x0(2);
  x0 << t0, p0;
  const auto r = nelder_mead(neg, x0, 0.5 * dt, 1e-15, 1e-12, 400);
  const Vec3 w0 = direction_from_angles(t0, p0);
  const double v0 = res(w0);
  if (-r.value < v0) return {w0, v0};
  return {direction_from_angles(r.x[0], r.x[1]), -r.value};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hausdorff distance of convex bodies: max |h_A - h_B| over directions

template <class A, class B>
double hausdorff_distance(const A& a, const B& b, int resolution = 0) {
  constexpr int N = body_dim<A>::value;
  static_assert(N == body_dim<B>::value, "bodies must have the same dimension");
  if constexpr (N == 2) {
    const DirectionGrid<2> g(resolution > 0 ? resolution : 4096);
    auto res = [&](double t) {
      const Vec2 w(std::cos(t), std::sin(t));
      return std::abs(support_of(a, w) - support_of(b, w));
    };
    std::vector<double> v(static_cast<std::size_t>(g.size()));
    for (int j = 0; j < g.size(); ++j) v[static_cast<std::size_t>(j)] = res(g.angle(j));
    double best = 0.0;
    const double dt = two_pi / g.size();
    const double top = *std::max_element(v.begin(), v.end());
    for (int j = 0; j < g.size(); ++j) {
      const double vj = v[static_cast<std::size_t>(j)];
      best = std::max(best, vj);
      const double l = v[static_cast<std::size_t>((j + g.size() - 1) % g.size())];
      const double r = v[static_cast<std::size_t>((j + 1) % g.size())];
      if (vj >= l && vj >= r && vj >= top - 1e-3 * (top + 1e-300))
        best = std::max(best, detail::refine_circle(res, g.angle(j), dt).second);
    }
    return best;
  } else {
    const DirectionGrid<3> g(resolution > 0 ? resolution : 48);
    auto res = [&](const Vec3& w) { return std::abs(support_of(a, w) - support_of(b, w)); };
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < g.size(); ++i) {
      const double v = res(g.direction(i));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    const int lat = arg / g.longitudes();
    const double dt = pi / g.latitudes();
    return std::max(best, detail::refine_sphere(res, g.theta(lat), g.phi(arg % g.longitudes()), dt).second);
  }
}

// ---------------------------------------------------------------------------
// Asymmetry  (1/r) min_x max_w |h(w) - r - <x, w>|

enum class AsymmetryMode { Perimeter, MeanWidth };

inline const char* to_string(AsymmetryMode m) { return m == AsymmetryMode::Perimeter ? "perimeter" : "mean-width"; }

struct AsymmetryResult {
  double value = 0.0;
  VecX center;
  double radius = 0.0;
  AsymmetryMode mode = AsymmetryMode::Perimeter;
  double gap = 0.0;  // certified optimality gap plus residual discretization, relative to r
};

inline constexpr double asymmetry_certificate_tol = 1e-6;

namespace detail {

template <int N>
struct DirectionSample {
  Vec<N> w;
  double h;
  double t;  // angle (n=2) or colatitude (n=3)
  double p;  // longitude (n=3)
};

template <int N, class S>
AsymmetryResult asymmetry_core(S&& support, std::vector<DirectionSample<N>> D, double spacing, double r,
                               const std::vector<Vec<N>>& starts, AsymmetryMode mode) {
  auto phi = [&](const VecX& x, VecX* g) {
    double best = -1.0;
    for (const auto& d : D) {
      const double e = d.h - r - d.w.dot(Vec<N>(x));
      if (std::abs(e) > best) {
        best = std::abs(e);
        if (g) *g = VecX(-(e >= 0 ? 1.0 : -1.0) * d.w);
      }
    }
    return best;
  };
  auto residual_at = [&](const Vec<N>& x, const Vec<N>& w) { return std::abs(support(w) - r - w.dot(x)); };

  VecX x_best = VecX(starts.front());
  double f_best = phi(x_best, nullptr);
  for (const auto& s : starts) {
    const auto m = nelder_mead([&](const VecX& x) { return phi(x, nullptr); }, VecX(s), 0.05 * r, 1e-13, 1e-9 * r,
                               2000);
    if (m.value < f_best) {
      f_best = m.value;
      x_best = m.x;
    }
  }

  AsymmetryResult out;
  out.mode = mode;
  out.radius = r;
  double ell_gap = 0.0, disc = 0.0;
  for (int round = 0; round < 8; ++round) {
    double hmax = 0.0;
    for (const auto& d : D) hmax = std::max(hmax, std::abs(d.h - r));
    const double R0 = 1.05 * (phi(x_best, nullptr) + hmax) + 1e-12 * r;
    const auto e = ellipsoid_method([&](const VecX& x, VecX& g) { return phi(x, &g); }, x_best,
                                    x_best.norm() + R0, 1e-11 * r, 20000);
    x_best = e.x;
    ell_gap = std::max(0.0, e.gap());
    const Vec<N> xc(x_best);

    // Exchange step: add the continuous local maximizers near the discrete top.
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t i = 0; i < D.size(); ++i) cand.push_back({std::abs(D[i].h - r - D[i].w.dot(xc)), i});
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const double top = cand.front().first;
    double refined = top;
    std::vector<DirectionSample<N>> extra;
    std::vector<Vec<N>> seeds;
    const double near = std::cos(2.0 * spacing);
    for (std::size_t c = 0; c < std::min<std::size_t>(cand.size(), 24); ++c) {
      if (cand[c].first < top - 0.05 * top - 1e-14 * r) break;
      const auto& d = D[cand[c].second];
      // Neighbours of a refined sample climb to the same peak.
      if (std::any_of(seeds.begin(), seeds.end(), [&](const Vec<N>& s) { return s.dot(d.w) > near; })) continue;
      seeds.push_back(d.w);
      if constexpr (N == 2) {
        const auto [t, v] = refine_circle([&](double tt) { return residual_at(xc, Vec2(std::cos(tt), std::sin(tt))); },
                                          d.t, spacing);
        const Vec2 w(std::cos(t), std::sin(t));
        extra.push_back({w, support(w), t, 0.0});
        refined = std::max(refined, v);
      } else {
        const auto [w, v] = refine_sphere([&](const Vec3& ww) { return residual_at(xc, ww); }, d.t, d.p, spacing);
        const auto [t, p] = angles_of(w);
        extra.push_back({w, support(w), t, p});
        refined = std::max(refined, v);
      }
    }
    disc = refined - e.upper;
    out.value = refined / r;
    out.center = x_best;
    D.insert(D.end(), extra.begin(), extra.end());
    if (disc <= 1e-11 * r) break;
  }
  out.gap = (ell_gap + std::max(0.0, disc)) / r;
  if (ell_gap > asymmetry_certificate_tol * r) throw NonConverged(out.value, ell_gap / r);
  return out;
}

template <int N>
std::vector<Vec<N>> asymmetry_starts(const Vec<N>& c1, const Vec<N>& c2, double r) {
  std::vector<Vec<N>> s{c1, c2, 0.5 * (c1 + c2)};
  Vec<N> e = Vec<N>::Zero();
  e[0] = 0.1 * r;
  s.push_back(c1 + e);
  e.setZero();
  e[1] = 0.1 * r;
  s.push_back(c1 + e);
  return s;
}

inline std::vector<DirectionSample<2>> circle_samples(int n, const std::function<double(const Vec2&)>& h) {
  std::vector<DirectionSample<2>> D;
  for (int j = 0; j < n; ++j) {
    const double t = two_pi * j / n;
    const Vec2 w(std::cos(t), std::sin(t));
    D.push_back({w, h(w), t, 0.0});
  }
  return D;
}

inline std::vector<DirectionSample<3>> sphere_samples(const DirectionGrid<3>& g,
                                                      const std::function<double(const Vec3&)>& h) {
  std::vector<DirectionSample<3>> D;
  for (int i = 0; i < g.size(); ++i) {
    const Vec3 w = g.direction(i);
    D.push_back({w, h(w), g.theta(i / g.longitudes()), g.phi(i % g.longitudes())});
  }
  return D;
}

}  // namespace detail

/// Matching radius: P(B_r) = P(E) or W_{n-1}(B_r) = W_{n-1}(E).
template <class B>
double matching_radius(const B& b, AsymmetryMode mode) {
  constexpr int N = body_dim<B>::value;
  const auto r = measure_report(b);
  if (mode == AsymmetryMode::Perimeter) return std::pow(r.perimeter.value / sphere_area(N), 1.0 / (N - 1));
  return r.W[static_cast<std::size_t>(N - 1)].value / unit_ball_volume(N);
}

inline AsymmetryResult asymmetry(const SupportBody<2>& b, AsymmetryMode mode = AsymmetryMode::Perimeter) {
  const double r = matching_radius(b, mode);
  std::vector<detail::DirectionSample<2>> D;
  const auto& g = b.grid();
  for (int j = 0; j < g.size(); ++j) D.push_back({g.direction(j), b.nodes()[static_cast<std::size_t>(j)].h, g.angle(j), 0.0});
  return detail::asymmetry_core<2>([&](const Vec2& w) { return b.support(w); }, std::move(D), two_pi / g.size(), r,
                                   detail::asymmetry_starts<2>(centroid(b), curvature_centroid(b), r), mode);
}

inline AsymmetryResult asymmetry(const SupportBody<3>& b, AsymmetryMode mode = AsymmetryMode::Perimeter) {
  const double r = matching_radius(b, mode);
  std::vector<detail::DirectionSample<3>> D;
  const auto& g = b.grid();
  for (int i = 0; i < g.size(); ++i)
    D.push_back({g.direction(i), b.nodes()[static_cast<std::size_t>(i)].h, g.theta(i / g.longitudes()),
                 g.phi(i % g.longitudes())});
  return detail::asymmetry_core<3>([&](const Vec3& w) { return b.support(w); }, std::move(D), pi / g.latitudes(), r,
                                   detail::asymmetry_starts<3>(centroid(b), curvature_centroid(b), r), mode);
}

inline AsymmetryResult asymmetry(const Polygon2D& P, AsymmetryMode mode = AsymmetryMode::Perimeter) {
  const double r = matching_radius(P, mode);
  const int n = 4096;
  auto h = [&](const Vec2& w) { return P.support(w); };
  return detail::asymmetry_core<2>(h, detail::circle_samples(n, h), two_pi / n, r,
                                   detail::asymmetry_starts<2>(centroid(P), curvature_centroid(P), r), mode);
}

inline AsymmetryResult asymmetry(const Cylinder3D& c, AsymmetryMode mode = AsymmetryMode::Perimeter) {
  const double r = matching_radius(c, mode);
  const DirectionGrid<3> g(48);
  auto h = [&](const Vec3& w) { return c.support(w); };
  return detail::asymmetry_core<3>(h, detail::sphere_samples(g, h), pi / g.latitudes(), r,
                                   detail::asymmetry_starts<3>(c.center, c.center, r), mode);
}

// ---------------------------------------------------------------------------
// Inequality records

/// beta W_{n-2} + script_H against (1 + beta) W_{n-1}^2 / omega_n: the lower
/// bound for beta <= n-1, the upper bound for beta >= beta(n). For series
/// bodies the certificate sum_{k>=2} [(1+beta) + (1 - beta/(n-1)) k(n+k-2)] a_k^2
/// equals n (lhs - rhs).
template <class B>
std::vector<DeficitRecord> check_curvature_bound(const B& b, const std::vector<double>& betas) {
  constexpr int N = body_dim<B>::value;
  const auto rep = measure_report(b);
  const Estimate H = script_H(b);
  const Estimate& Wa = rep.W[static_cast<std::size_t>(N - 2)];
  const Estimate& Wb = rep.W[static_cast<std::size_t>(N - 1)];
  const double w = unit_ball_volume(N);
  const std::string fp = fingerprint(b);
  std::optional<HarmonicSpectrum> spec;
  if constexpr (std::is_same_v<B, SupportBody<N>>) {
    if (b.spectral()) spec = b.spectrum();
  }
  std::vector<DeficitRecord> out;
  for (double beta : betas) {
    DeficitRecord r;
    r.n = N;
    r.beta = beta;
    r.lhs = beta * Wa.value + H.value;
    r.rhs = (1.0 + beta) * Wb.value * Wb.value / w;
    r.err_bound = beta * Wa.error + H.error + (1.0 + beta) * 2.0 * Wb.value * Wb.error / w +
                  1e-13 * (std::abs(r.lhs) + std::abs(r.rhs));
    if (beta <= N - 1 + 1e-15) {
      r.id = "curvature-lower";
      r.deficit = r.lhs - r.rhs;
    } else if (beta >= beta_threshold(N) - 1e-12) {
      r.id = "curvature-upper";
      r.deficit = r.rhs - r.lhs;
    } else {
      r.id = "curvature-between";
      r.deficit = r.rhs - r.lhs;
      r.regime_mismatch = true;
    }
    if (spec) {
      double c = 0.0;
      for (std::size_t i = 0; i < spec->size(); ++i) {
        const int k = spec->degree_of(i);
        if (k < 2) continue;
        c += ((1.0 + beta) + (1.0 - beta / (N - 1)) * laplace_eigenvalue(k, N)) * (*spec)[i] * (*spec)[i];
      }
      r.certificate = c;
    }
    r.fingerprint = fp;
    out.push_back(std::move(r));
  }
  return out;
}

template <class B>
DeficitRecord check_curvature_bound(const B& b, double beta) {
  return check_curvature_bound(b, std::vector<double>{beta}).front();
}

/// A closed planar curve: polygon vertices (closure implicit) or samples of
/// a curve whose last point repeats the first.
struct ClosedCurve {
  std::vector<Vec2> points;
  bool polygon = true;
};

/// Points equally spaced in arclength along the closed polyline through `p`.
inline std::vector<Vec2> arclength_resample(const std::vector<Vec2>& p, int m) {
  const std::size_t n = p.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + (p[(i + 1) % n] - p[i]).norm();
  const double L = cum[n];
  std::vector<Vec2> out;
  std::size_t seg = 0;
  for (int k = 0; k < m; ++k) {
    const double s = L * k / m;
    while (seg + 1 < n && cum[seg + 1] <= s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0 ? (s - cum[seg]) / len : 0.0;
    out.push_back(p[seg] + t * (p[(seg + 1) % n] - p[seg]));
  }
  return out;
}

namespace detail {

inline bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = Polygon2D::cross(b - a, c - a), d2 = Polygon2D::cross(b - a, d - a);
  const double d3 = Polygon2D::cross(d - c, a - c), d4 = Polygon2D::cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

inline bool self_intersects(const std::vector<Vec2>& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return true;
    }
  return false;
}

inline bool point_in_polygon(const Vec2& q, const std::vector<Vec2>& p) {
  bool in = false;
  for (std::size_t i = 0, j = p.size() - 1; i < p.size(); j = i++)
    if ((p[i].y() > q.y()) != (p[j].y() > q.y()) &&
        q.x() < (p[j].x() - p[i].x()) * (q.y() - p[i].y()) / (p[j].y() - p[i].y()) + p[i].x())
      in = !in;
  return in;
}

inline double polyline_area(const std::vector<Vec2>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += Polygon2D::cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * a;
}

}  // namespace detail

/// inf_x0 sum_i int_{C_i} |x - x0|^2 against P^3 / (2 pi)^2. Components not
/// nested inside the largest one make the union decomposable; such records
/// are flagged expected-negative.
inline DeficitRecord check_momentum_bound(const std::vector<ClosedCurve>& components, int resample = 512) {
  if (components.empty()) throw ValidationError("momentum bound needs at least one curve");
  std::vector<std::vector<Vec2>> curves;
  for (const auto& c : components) {
    std::vector<Vec2> p = c.points;
    if (p.size() < 3) throw OpenCurve("curve needs at least 3 points");
    if (!c.polygon) {
      double len = 0.0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) len += (p[i + 1] - p[i]).norm();
      if ((p.back() - p.front()).norm() > 1e-9 * len) throw OpenCurve("sampled curve does not close");
      p.pop_back();
      p = arclength_resample(p, std::max<int>(resample, 3));
    }
    if (detail::self_intersects(p)) throw SelfIntersection("curve crosses itself");
    curves.push_back(std::move(p));
  }
  double P = 0.0, M0 = 0.0;
  Vec2 first = Vec2::Zero();
  for (const auto& p : curves) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 a = p[i], c = p[(i + 1) % p.size()];
      const double L = (c - a).norm();
      P += L;
      M0 += L * (a.squaredNorm() + a.dot(c) + c.squaredNorm()) / 3.0;
      first += L * 0.5 * (a + c);
    }
  }
  const Vec2 bar = first / P;
  DeficitRecord r;
  r.id = "momentum-bound";
  r.n = 2;
  r.lhs = M0 - P * bar.squaredNorm();
  r.rhs = P * P * P / (4.0 * pi * pi);
  r.deficit = r.rhs - r.lhs;
  r.err_bound = 1e-13 * (r.lhs + r.rhs);
  std::size_t outer = 0;
  for (std::size_t i = 1; i < curves.size(); ++i)
    if (std::abs(detail::polyline_area(curves[i])) > std::abs(detail::polyline_area(curves[outer]))) outer = i;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i == outer) continue;
    for (const auto& q : curves[i])
      if (!detail::point_in_polygon(q, curves[outer])) r.expected_negative = true;
  }
  json fp = json::array();
  for (const auto& p : curves) {
    json c = json::array();
    for (const auto& q : p) c.push_back({q.x(), q.y()});
    fp.push_back(c);
  }
  r.fingerprint = hex64(fnv1a(fp.dump()));
  return r;
}

inline ClosedCurve curve_of(const Polygon2D& P) { return {P.vertices(), true}; }

}  // namespace isocurv
