#pragma once

// Convex body representations: support-function bodies on S^1 / S^2,
// exact convex polygons, radial star bodies and the closed cylinder.

#include "isocurv/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace isocurv {

using json = nlohmann::json;

inline constexpr double convexity_tolerance = 1e-10;

/// One quadrature node of a support body: outward normal, the boundary point
/// with that normal, the principal radii of curvature there, and the
/// quadrature weight of the node on the sphere of directions.
template <int N>
struct SupportNode {
  Vec<N> normal;
  Vec<N> point;
  std::array<double, N - 1> radii;
  double h = 0.0;
  double weight = 0.0;

  /// Normalized elementary symmetric function s_k of the radii.
  double s(int k) const {
    if (k == 0) return 1.0;
    if constexpr (N == 2) {
      return radii[0];
    } else {
      return k == 1 ? 0.5 * (radii[0] + radii[1]) : radii[0] * radii[1];
    }
  }
};

template <int N>
struct BasisTraits;

template <>
struct BasisTraits<2> {
  using Coeffs = FourierCoeffs;
  using Jet = CircleJet;
  using Analytic = std::function<CircleJet(double)>;
};

template <>
struct BasisTraits<3> {
  using Coeffs = SphericalCoeffs;
  using Jet = SphereJet;
  using Analytic = std::function<SphereJet(double, double)>;
};

namespace detail {

inline std::array<double, 1> radii_of(const CircleJet& j) { return {j.f + j.d2}; }

inline std::array<double, 2> radii_of(const SphereJet& j) {
  const Eigen::Matrix2d A = j.hess + j.f * Eigen::Matrix2d::Identity();
  const double m = 0.5 * (A(0, 0) + A(1, 1));
  const double d = std::hypot(0.5 * (A(0, 0) - A(1, 1)), A(0, 1));
  return {m - d, m + d};
}

}  // namespace detail

/// A convex body given by its support function, either as a finite harmonic
/// series or as an exact analytic function with derivatives. Immutable; all
/// grid samples are computed at construction.
template <int N>
class SupportBody {
 public:
  using Coeffs = typename BasisTraits<N>::Coeffs;
  using Jet = typename BasisTraits<N>::Jet;
  using Analytic = typename BasisTraits<N>::Analytic;

  struct Options {
    bool require_positive = true;
    double tolerance = convexity_tolerance;
  };

  SupportBody(Coeffs coeffs, DirectionGrid<N> grid, Options opt = {})
      : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    const int K = degree();
    if (4 * K > grid_.resolution())
      throw ValidationError("truncation degree " + std::to_string(K) + " exceeds grid resolution / 4");
    if constexpr (N == 3) {
      if (K >= grid_.latitudes()) throw ValidationError("too few latitudes for the truncation degree");
    }
    build(opt);
  }

  /// Exact support function; `descriptor` is its canonical JSON form.
  SupportBody(Analytic f, json descriptor, DirectionGrid<N> grid, Options opt = {})
      : grid_(std::move(grid)), analytic_(std::move(f)), descriptor_(std::move(descriptor)) {
    build(opt);
  }

  static constexpr int dim = N;

  bool spectral() const { return coeffs_.has_value(); }
  const Coeffs& coeffs() const { return *coeffs_; }
  const json& descriptor() const { return descriptor_; }
  const Analytic& analytic() const { return analytic_; }
  const DirectionGrid<N>& grid() const { return grid_; }
  const std::vector<SupportNode<N>>& nodes() const { return nodes_; }

  int degree() const {
    if (!coeffs_) return -1;
    if constexpr (N == 2) {
      return coeffs_->degree();
    } else {
      return coeffs_->degree;
    }
  }

  /// Mean of h over the sphere (the constant coefficient for series).
  double mean_support() const { return mean_h_; }
  double min_slack() const { return min_slack_; }
  const Vec<N>& worst_direction() const { return worst_dir_; }
  double min_support() const { return min_h_; }

  /// Jet of h at an angle (n=2) or at (theta, phi) (n=3).
  Jet jet(double theta, double phi = 0.0) const {
    if constexpr (N == 2) {
      (void)phi;
      return coeffs_ ? evaluate(*coeffs_, theta) : analytic_(theta);
    } else {
      return coeffs_ ? evaluate(*coeffs_, theta, phi) : analytic_(theta, phi);
    }
  }

  /// h at a unit direction.
  double support(const Vec<N>& w) const {
    if constexpr (N == 2) {
      return jet(std::atan2(w.y(), w.x())).f;
    } else {
      const auto [t, p] = angles_of(w);
      if (std::sin(t) < 1e-12) {
        // The series evaluator needs 0 < theta < pi; nudge off the pole.
        const double tt = t < 1.0 ? 1e-9 : pi - 1e-9;
        return jet(tt, 0.0).f;
      }
      return jet(t, p).f;
    }
  }

  /// Boundary point with outward normal in direction (theta[, phi]).
  Vec<N> point_at(double theta, double phi = 0.0) const {
    const Jet j = jet(theta, phi);
    if constexpr (N == 2) {
      const Vec2 nu(std::cos(theta), std::sin(theta)), tau(-std::sin(theta), std::cos(theta));
      return j.f * nu + j.d1 * tau;
    } else {
      const auto fr = sphere_frame(theta, phi);
      return j.f * fr[2] + j.grad[0] * fr[0] + j.grad[1] * fr[1];
    }
  }

  /// Orthonormal-basis spectrum of h: exact for series, projected otherwise.
  HarmonicSpectrum spectrum() const {
    if (coeffs_) return to_spectrum(*coeffs_);
    std::vector<double> hs;
    hs.reserve(nodes_.size());
    for (const auto& nd : nodes_) hs.push_back(nd.h);
    return analyze(hs, grid_, -1, false);
  }

 private:
  void build(const Options& opt) {
    std::vector<Jet> jets;
    if (coeffs_) {
      jets = evaluate_on_grid(*coeffs_, grid_);
    } else {
      jets.reserve(static_cast<std::size_t>(grid_.size()));
      for (int i = 0; i < grid_.size(); ++i) {
        if constexpr (N == 2) {
          jets.push_back(analytic_(grid_.angle(i)));
        } else {
          const int lat = i / grid_.longitudes();
          jets.push_back(analytic_(grid_.theta(lat), grid_.phi(i % grid_.longitudes())));
        }
      }
    }
    nodes_.resize(jets.size());
    double wsum = 0.0, hsum = 0.0;
    min_slack_ = std::numeric_limits<double>::infinity();
    min_h_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < jets.size(); ++i) {
      const int ii = static_cast<int>(i);
      auto& nd = nodes_[i];
      const auto& j = jets[i];
      nd.h = j.f;
      nd.weight = grid_.weight(ii);
      nd.radii = detail::radii_of(j);
      if constexpr (N == 2) {
        const double t = grid_.angle(ii);
        nd.normal = {std::cos(t), std::sin(t)};
        nd.point = j.f * nd.normal + j.d1 * Vec2(-std::sin(t), std::cos(t));
      } else {
        const int lat = ii / grid_.longitudes();
        const auto fr = sphere_frame(grid_.theta(lat), grid_.phi(ii % grid_.longitudes()));
        nd.normal = fr[2];
        nd.point = j.f * fr[2] + j.grad[0] * fr[0] + j.grad[1] * fr[1];
      }
      wsum += nd.weight;
      hsum += nd.weight * nd.h;
      const double slack = *std::min_element(nd.radii.begin(), nd.radii.end());
      if (slack < min_slack_) {
        min_slack_ = slack;
        worst_dir_ = nd.normal;
      }
      if (nd.h < min_h_) {
        min_h_ = nd.h;
        min_h_dir_ = nd.normal;
      }
    }
    mean_h_ = coeffs_ ? constant_term() : hsum / wsum;
    const double scale = std::max(std::abs(mean_h_), 1e-300);
    const auto [wt, wp] = direction_angles(worst_dir_);
    if (min_slack_ < -opt.tolerance * scale) throw NotConvex(min_slack_, wt, wp);
    if (opt.require_positive && !(min_h_ > 0.0)) {
      const auto [ht, hp] = direction_angles(min_h_dir_);
      throw NonPositiveSupport(min_h_, ht, hp);
    }
  }

  double constant_term() const {
    if constexpr (N == 2) {
      return coeffs_->a0;
    } else {
      return coeffs_->c[0];
    }
  }

  static std::pair<double, double> direction_angles(const Vec<N>& w) {
    if constexpr (N == 2) {
      return {std::atan2(w.y(), w.x()), 0.0};
    } else {
      return angles_of(w);
    }
  }

  DirectionGrid<N> grid_;
  std::optional<Coeffs> coeffs_;
  Analytic analytic_;
  json descriptor_;
  std::vector<SupportNode<N>> nodes_;
  double mean_h_ = 0.0;
  double min_slack_ = 0.0;
  double min_h_ = 0.0;
  Vec<N> worst_dir_ = Vec<N>::Zero();
  Vec<N> min_h_dir_ = Vec<N>::Zero();
};

/// Validated support body from series coefficients.
inline SupportBody<2> make_support_body(const FourierCoeffs& a, int grid_nodes = default_circle_nodes) {
  return SupportBody<2>(a, DirectionGrid<2>(grid_nodes));
}

inline SupportBody<3> make_support_body(const SphericalCoeffs& a, int latitudes = default_sphere_latitudes) {
  return SupportBody<3>(a, DirectionGrid<3>(latitudes));
}

/// Ball of radius r centred at c as a degree-1 series.
inline FourierCoeffs ball_coeffs(double r, const Vec2& c = Vec2::Zero()) {
  FourierCoeffs a;
  a.a0 = r;
  a.resize(1);
  a.cos[0] = c.x();
  a.sin[0] = c.y();
  return a;
}

inline SphericalCoeffs ball_coeffs(double r, const Vec3& c) {
  SphericalCoeffs a(1);
  a.at(0, 0) = r;
  const double s = 1.0 / std::sqrt(3.0);
  a.at(1, 1) = c.x() * s;
  a.at(1, -1) = c.y() * s;
  a.at(1, 0) = c.z() * s;
  return a;
}

// ---------------------------------------------------------------------------
// Polygons

/// Convex polygon with counter-clockwise vertices. Kept exact: every
/// quantity is computed from the vertices, never from a smoothed support.
class Polygon2D {
 public:
  explicit Polygon2D(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
    const std::size_t n = v_.size();
    if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
    for (const auto& p : v_)
      if (!p.allFinite()) throw ValidationError("polygon vertex is not finite");
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, (v_[i] - v_[j]).norm());
    for (std::size_t i = 0; i < n; ++i)
      if ((v_[i] - v_[(i + 1) % n]).norm() <= 1e-12 * diam)
        throw ValidationError("polygon has repeated vertex " + std::to_string(i));
    if (signed_area() <= 0.0) throw ValidationError("polygon vertices must be counter-clockwise with positive area");
    double min_cross = std::numeric_limits<double>::infinity(), turning = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e0 = v_[i] - v_[(i + n - 1) % n], e1 = v_[(i + 1) % n] - v_[i];
      const double c = cross(e0, e1);
      if (c < min_cross) {
        min_cross = c;
        worst = i;
      }
      turning += std::atan2(c, e0.dot(e1));
    }
    if (min_cross < -1e-12 * diam * diam || std::abs(turning - two_pi) > 1e-9) {
      const Vec2 e = v_[(worst + 1) % n] - v_[worst];
      throw NotConvex(min_cross, std::atan2(-e.x(), e.y()));
    }
  }

  const std::vector<Vec2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Vec2& vertex(std::size_t i) const { return v_[i % v_.size()]; }

  double signed_area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) a += cross(v_[i], vertex(i + 1));
    return 0.5 * a;
  }
  double area() const { return signed_area(); }
  double perimeter() const {
    double p = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) p += (vertex(i + 1) - v_[i]).norm();
    return p;
  }
  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      for (std::size_t j = i + 1; j < v_.size(); ++j) d = std::max(d, (v_[i] - v_[j]).norm());
    return d;
  }

  /// Exterior angle (curvature atom) at vertex i, in [0, pi).
  double exterior_angle(std::size_t i) const {
    const std::size_t n = v_.size();
    const Vec2 e0 = v_[i] - v_[(i + n - 1) % n], e1 = vertex(i + 1) - v_[i];
    return std::atan2(cross(e0, e1), e0.dot(e1));
  }

  double support(const Vec2& w) const {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& p : v_) h = std::max(h, p.dot(w));
    return h;
  }

  static double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

 private:
  std::vector<Vec2> v_;
};

/// Exact support values max_v <v, w(theta_j)> on a circle grid.
inline std::vector<double> polygon_support_samples(const Polygon2D& P, const DirectionGrid<2>& grid) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) out.push_back(P.support(grid.direction(j)));
  return out;
}

/// Boundary points recovered from support samples: the intersection of
/// consecutive support lines <x, w_j> = h_j and <x, w_{j+1}> = h_{j+1}.
inline std::vector<Vec2> envelope_points(const std::vector<double>& h, const DirectionGrid<2>& grid) {
  std::vector<Vec2> out;
  const int n = grid.size();
  for (int j = 0; j < n; ++j) {
    const Vec2 a = grid.direction(j), b = grid.direction((j + 1) % n);
    const double d = Polygon2D::cross(a, b);
    const double ha = h[static_cast<std::size_t>(j)], hb = h[static_cast<std::size_t>((j + 1) % n)];
    out.push_back(Vec2((ha * b.y() - hb * a.y()) / d, (hb * a.x() - ha * b.x()) / d));
  }
  return out;
}

/// Convex hull by Andrew's monotone chain, counter-clockwise, collinear
/// points dropped.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && Polygon2D::cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && Polygon2D::cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

namespace detail {

inline Circle circle_two(const Vec2& a, const Vec2& b) { return {0.5 * (a + b), 0.5 * (a - b).norm()}; }

inline Circle circle_three(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * Polygon2D::cross(ab, ac);
  if (std::abs(d) < 1e-300) {
    Circle best = circle_two(a, b);
    for (const auto& cc : {circle_two(a, c), circle_two(b, c)})
      if (cc.radius > best.radius) best = cc;
    return best;
  }
  const double ab2 = ab.squaredNorm(), ac2 = ac.squaredNorm();
  const Vec2 o(ac.y() * ab2 - ab.y() * ac2, ab.x() * ac2 - ac.x() * ab2);
  return {a + o / d, (o / d).norm()};
}

inline bool inside(const Circle& c, const Vec2& p) { return (p - c.center).norm() <= c.radius * (1.0 + 1e-12) + 1e-15; }

}  // namespace detail

/// Smallest enclosing circle (Welzl, iterative form; deterministic order).
inline Circle min_enclosing_circle(const std::vector<Vec2>& pts) {
  Circle c{pts.empty() ? Vec2::Zero() : pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (detail::inside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (detail::inside(c, pts[j])) continue;
      c = detail::circle_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k)
        if (!detail::inside(c, pts[k])) c = detail::circle_three(pts[i], pts[j], pts[k]);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Star-shaped bodies

/// Planar region {r w(t) : r < rho(t)} from samples rho(2 pi j / N), j < N.
/// The closing sample rho(2 pi) = rho(0) is implicit.
class StarBody2D {
 public:
  explicit StarBody2D(std::vector<double> rho) : rho_(std::move(rho)) {
    const int n = static_cast<int>(rho_.size());
    if (n < 8) throw ValidationError("star body needs at least 8 radial samples");
    for (int j = 0; j < n; ++j)
      if (!(rho_[static_cast<std::size_t>(j)] > 0.0) || !std::isfinite(rho_[static_cast<std::size_t>(j)]))
        throw NonPositiveSupport(rho_[static_cast<std::size_t>(j)], two_pi * j / n);
    // Trigonometric interpolant: exact derivatives of the band-limited
    // reconstruction (the Nyquist mode is dropped).
    const int K = (n - 1) / 2;
    coeffs_.resize(K);
    double s0 = 0.0;
    for (double r : rho_) s0 += r;
    coeffs_.a0 = s0 / n;
    for (int k = 1; k <= K; ++k) {
      double c = 0.0, s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double t = two_pi * static_cast<double>((static_cast<long long>(k) * j) % n) / n;
        c += rho_[static_cast<std::size_t>(j)] * std::cos(t);
        s += rho_[static_cast<std::size_t>(j)] * std::sin(t);
      }
      coeffs_.cos[static_cast<std::size_t>(k - 1)] = 2.0 * c / n;
      coeffs_.sin[static_cast<std::size_t>(k - 1)] = 2.0 * s / n;
    }
    jets_.reserve(rho_.size());
    for (int j = 0; j < n; ++j) jets_.push_back(evaluate(coeffs_, angle(j)));
  }

  const std::vector<double>& rho() const { return rho_; }
  int size() const { return static_cast<int>(rho_.size()); }
  double angle(int j) const { return two_pi * j / size(); }
  double weight() const { return two_pi / size(); }
  const FourierCoeffs& interpolant() const { return coeffs_; }
  /// rho, rho', rho'' at node j.
  const CircleJet& jet(int j) const { return jets_[static_cast<std::size_t>(j)]; }
  Vec2 point(int j) const { return rho_[static_cast<std::size_t>(j)] * Vec2(std::cos(angle(j)), std::sin(angle(j))); }

 private:
  std::vector<double> rho_;
  FourierCoeffs coeffs_;
  std::vector<CircleJet> jets_;
};

// ---------------------------------------------------------------------------
// Cylinder

/// Closed cylinder B^2_eps x [-L/2, L/2] about the z-axis, shifted to `center`.
struct Cylinder3D {
  double eps = 1.0;
  double L = 1.0;
  Vec3 center = Vec3::Zero();

  Cylinder3D(double e, double l, Vec3 c = Vec3::Zero()) : eps(e), L(l), center(c) {
    if (!(eps > 0.0) || !(L > 0.0) || !std::isfinite(eps) || !std::isfinite(L))
      throw ValidationError("cylinder needs eps > 0 and L > 0");
  }

  double support(const Vec3& w) const {
    return eps * std::hypot(w.x(), w.y()) + 0.5 * L * std::abs(w.z()) + center.dot(w);
  }
};

using AnyBody = std::variant<SupportBody<2>, SupportBody<3>, Polygon2D, StarBody2D, Cylinder3D>;

inline int dimension(const AnyBody& b) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SupportBody<3>> || std::is_same_v<T, Cylinder3D>)
          return 3;
        else
          return 2;
      },
      b);
}

// ---------------------------------------------------------------------------
// Rigid motions and dilations: x -> lambda (x + x0), i.e. h -> lambda (h + <x0, w>)

inline FourierCoeffs transform(FourierCoeffs a, const Vec2& x0, double lambda) {
  a.resize(std::max(a.degree(), 1));
  a.cos[0] += x0.x();
  a.sin[0] += x0.y();
  a.a0 *= lambda;
  for (auto& c : a.cos) c *= lambda;
  for (auto& s : a.sin) s *= lambda;
  return a;
}

inline SphericalCoeffs transform(const SphericalCoeffs& in, const Vec3& x0, double lambda) {
  SphericalCoeffs a(std::max(in.degree, 1));
  for (std::size_t i = 0; i < in.c.size(); ++i) a.c[i] = in.c[i];
  const double s = 1.0 / std::sqrt(3.0);
  a.at(1, 1) += x0.x() * s;
  a.at(1, -1) += x0.y() * s;
  a.at(1, 0) += x0.z() * s;
  for (auto& c : a.c) c *= lambda;
  return a;
}

namespace detail {

inline void check_scale(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("scale must be positive");
}

inline json transform_descriptor(const json& base, const json& x0, double lambda) {
  return json{{"type", "transformed"}, {"base", base}, {"translation", x0}, {"scale", lambda}};
}

}  // namespace detail

/// The transformed body need not contain the origin, so positivity of the
/// support function is not re-checked.
inline SupportBody<2> transform(const SupportBody<2>& b, const Vec2& x0, double lambda) {
  detail::check_scale(lambda);
  const SupportBody<2>::Options opt{false, convexity_tolerance};
  if (b.spectral()) return SupportBody<2>(transform(b.coeffs(), x0, lambda), b.grid(), opt);
  auto f = b.analytic();
  auto g = [f, x0, lambda](double t) {
    CircleJet j = f(t);
    const double c = std::cos(t), s = std::sin(t);
    return CircleJet{lambda * (j.f + x0.x() * c + x0.y() * s), lambda * (j.d1 - x0.x() * s + x0.y() * c),
                     lambda * (j.d2 - x0.x() * c - x0.y() * s)};
  };
  return SupportBody<2>(g, detail::transform_descriptor(b.descriptor(), {x0.x(), x0.y()}, lambda), b.grid(),
                        opt);
}

inline SupportBody<3> transform(const SupportBody<3>& b, const Vec3& x0, double lambda) {
  detail::check_scale(lambda);
  const SupportBody<3>::Options opt{false, convexity_tolerance};
  if (b.spectral()) return SupportBody<3>(transform(b.coeffs(), x0, lambda), b.grid(), opt);
  auto f = b.analytic();
  auto g = [f, x0, lambda](double t, double p) {
    SphereJet j = f(t, p);
    const auto fr = sphere_frame(t, p);
    const double l = x0.dot(fr[2]);
    j.f = lambda * (j.f + l);
    j.grad = lambda * (j.grad + Eigen::Vector2d(x0.dot(fr[0]), x0.dot(fr[1])));
    j.hess = lambda * (j.hess - l * Eigen::Matrix2d::Identity());
    return j;
  };
  return SupportBody<3>(g, detail::transform_descriptor(b.descriptor(), {x0.x(), x0.y(), x0.z()}, lambda),
                        b.grid(), opt);
}

inline Polygon2D transform(const Polygon2D& P, const Vec2& x0, double lambda) {
  detail::check_scale(lambda);
  std::vector<Vec2> v;
  for (const auto& p : P.vertices()) v.push_back(lambda * (p + x0));
  return Polygon2D(std::move(v));
}

inline Cylinder3D transform(const Cylinder3D& c, const Vec3& x0, double lambda) {
  detail::check_scale(lambda);
  return Cylinder3D(lambda * c.eps, lambda * c.L, lambda * (c.center + x0));
}

/// Boundary samples (point, normal, radii) of a support body.
template <int N>
const std::vector<SupportNode<N>>& boundary_points(const SupportBody<N>& b) {
  return b.nodes();
}

}  // namespace isocurv
