#pragma once

// Analytic families with closed-form reference values: ellipses, rhombi,
// thin cylinders and volume/barycentre-normalized nearly spherical bodies.

#include "isocurv/measures.hpp"

#include <cmath>
#include <vector>

namespace isocurv {

// ---------------------------------------------------------------------------
// Ellipse

/// h = sqrt(a^2 cos^2 t + b^2 sin^2 t) with exact derivatives.
inline SupportBody<2> ellipse_body(double a, double b, int grid_nodes = default_circle_nodes) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("ellipse semiaxes must be positive");
  auto f = [a, b](double t) {
    const double c = std::cos(t), s = std::sin(t);
    const double q = a * a * c * c + b * b * s * s;
    const double h = std::sqrt(q);
    const double q1 = (b * b - a * a) * std::sin(2 * t);
    const double q2 = 2.0 * (b * b - a * a) * std::cos(2 * t);
    return CircleJet{h, q1 / (2 * h), q2 / (2 * h) - q1 * q1 / (4 * h * h * h)};
  };
  return SupportBody<2>(f, json{{"type", "ellipse"}, {"a", a}, {"b", b}}, DirectionGrid<2>(grid_nodes));
}

/// Second-order expansions for semiaxes 1 +- eps.
struct EllipseReference {
  double eps = 0.0;
  double perimeter = 0.0;           // 2 pi + (pi/2) eps^2
  double area = 0.0;                // pi (1 - eps^2), exact
  double curvature_momentum = 0.0;  // int H |x|^2 = 2 pi + 6 pi eps^2
  /// int |x|^2 dmu + 2 beta |E| - (1 + beta) P^2 / (2 pi) = pi (5 - 3 beta) eps^2
  double corollary_gap(double beta) const { return pi * (5.0 - 3.0 * beta) * eps * eps; }
};

inline EllipseReference ellipse_reference(double eps) {
  return {eps, two_pi + 0.5 * pi * eps * eps, pi * (1.0 - eps * eps), two_pi + 6.0 * pi * eps * eps};
}

inline SupportBody<2> ellipse(double eps, int grid_nodes = default_circle_nodes) {
  if (!(eps >= 0.0) || eps >= 0.3) throw ValidationError("ellipse needs 0 <= eps < 0.3");
  return ellipse_body(1.0 + eps, 1.0 - eps, grid_nodes);
}

/// Corollary-form gap int |x - x0|^2 dmu + 2 beta |E| - (1 + beta) P^2 / (2 pi)
/// about the curvature centroid (the origin for centred bodies).
inline double corollary_gap(const SupportBody<2>& b, double beta) {
  const auto r = measure_report(b);
  const double m = gauss_weighted_momentum(b, curvature_centroid(b)).quadrature;
  const double P = r.perimeter.value;
  return m + 2.0 * beta * r.volume.value - (1.0 + beta) * P * P / two_pi;
}

// ---------------------------------------------------------------------------
// Rhombus

/// Rhombus of perimeter l with angle alpha at +-P1 = +-(l/4) cos(alpha/2) e1
/// and pi - alpha at +-P2 = +-(l/4) sin(alpha/2) e2.
inline Polygon2D rhombus(double l, double alpha) {
  if (!(l > 0.0) || !(alpha > 0.0) || !(alpha < pi)) throw ValidationError("rhombus needs l > 0, 0 < alpha < pi");
  const double p1 = 0.25 * l * std::cos(0.5 * alpha), p2 = 0.25 * l * std::sin(0.5 * alpha);
  return Polygon2D({Vec2(p1, 0), Vec2(0, p2), Vec2(-p1, 0), Vec2(0, -p2)});
}

/// f(alpha) = (pi - alpha) cos^2(alpha/2) + alpha sin^2(alpha/2).
inline double rhombus_f(double alpha) {
  const double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha);
  return (pi - alpha) * c * c + alpha * s * s;
}

/// (l^2/8) f(alpha): the Gauss-weighted momentum of the rhombus about its
/// centre, sum of (exterior angle) |P_i|^2. This is n times the canonical
/// script_H (which carries the 1/n factor).
inline double rhombus_H_exact(double l, double alpha) { return l * l / 8.0 * rhombus_f(alpha); }

// ---------------------------------------------------------------------------
// Cylinder family at perimeter 2 pi

struct CylinderReference {
  double eps = 0.0;
  double L = 0.0;
  double perimeter = 0.0;
  // As printed: lateral 2 pi [eps^3 L + eps L^3 / 3], caps (pi/2)[eps^4 + L^2 eps^2].
  double printed_lateral = 0.0;
  double printed_caps = 0.0;
  double printed_total() const { return printed_lateral + printed_caps; }
  // Direct integration: lateral 2 pi [eps^3 L + eps L^3 / 12], both caps pi [eps^4 + L^2 eps^2 / 2].
  double lateral = 0.0;
  double caps = 0.0;
  double total() const { return lateral + caps; }
  /// Leading-order growth as eps -> 0 of the printed and of the direct totals.
  double printed_growth() const { return 2.0 * pi / (3.0 * eps * eps); }
  double growth() const { return pi / (6.0 * eps * eps); }
};

inline CylinderReference cylinder_reference(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ValidationError("cylinder family needs 0 < eps < 1");
  CylinderReference c;
  c.eps = eps;
  c.L = 1.0 / eps - eps;
  const double L = c.L, e = eps;
  c.perimeter = two_pi * e * L + two_pi * e * e;
  c.printed_lateral = two_pi * (e * e * e * L + e * L * L * L / 3.0);
  c.printed_caps = 0.5 * pi * (e * e * e * e + L * L * e * e);
  c.lateral = two_pi * (e * e * e * L + e * L * L * L / 12.0);
  c.caps = pi * (e * e * e * e + 0.5 * L * L * e * e);
  return c;
}

inline Cylinder3D cylinder_family(double eps) { return Cylinder3D(eps, 1.0 / eps - eps); }

// ---------------------------------------------------------------------------
// Nearly spherical bodies  {r w (1 + v(w))}

namespace detail {

template <int N>
struct RadialNode {
  Vec<N> w;
  double v = 0.0;
  double grad2 = 0.0;  // |grad v|^2
  double weight = 0.0;
};

inline std::vector<RadialNode<2>> radial_nodes(const HarmonicSpectrum& v, const DirectionGrid<2>& g) {
  std::vector<RadialNode<2>> out;
  const auto jets = evaluate_on_grid(to_fourier(v), g);
  for (int j = 0; j < g.size(); ++j) {
    const auto& q = jets[static_cast<std::size_t>(j)];
    out.push_back({g.direction(j), q.f, q.d1 * q.d1, g.weight(j)});
  }
  return out;
}

inline std::vector<RadialNode<3>> radial_nodes(const HarmonicSpectrum& v, const DirectionGrid<3>& g) {
  std::vector<RadialNode<3>> out;
  const auto jets = evaluate_on_grid(to_spherical(v), g);
  for (int i = 0; i < g.size(); ++i) {
    const auto& q = jets[static_cast<std::size_t>(i)];
    out.push_back({g.direction(i), q.f, q.grad.squaredNorm(), g.weight(i)});
  }
  return out;
}

}  // namespace detail

/// Radial graph rho = r (1 + v) over S^{n-1}. Volume, perimeter, momentum
/// and barycentre use the exact integrands (no expansion).
template <int N>
class NearlySphericalBody {
 public:
  NearlySphericalBody(double r, HarmonicSpectrum v, DirectionGrid<N> grid)
      : r_(r), v_(std::move(v)), grid_(std::move(grid)) {
    if (v_.dim != N) throw ValidationError("perturbation spectrum has the wrong dimension");
    refresh();
  }

  double radius() const { return r_; }
  const HarmonicSpectrum& perturbation() const { return v_; }
  const DirectionGrid<N>& grid() const { return grid_; }

  double volume() const { return std::pow(r_, N) / N * sum([](double v, double) { return std::pow(1.0 + v, N); }); }
  double perimeter() const {
    return std::pow(r_, N - 1) *
           sum([](double v, double g2) { return std::pow(1.0 + v, N - 2) * std::sqrt((1 + v) * (1 + v) + g2); });
  }
  /// Boundary momentum about the origin.
  double momentum() const {
    return std::pow(r_, N + 1) *
           sum([](double v, double g2) { return std::pow(1.0 + v, N) * std::sqrt((1 + v) * (1 + v) + g2); });
  }
  Vec<N> barycenter() const {
    Vec<N> m = Vec<N>::Zero();
    double p = 0.0;
    for (const auto& nd : nodes_) {
      const double s = std::sqrt((1 + nd.v) * (1 + nd.v) + nd.grad2);
      m += nd.w * std::pow(1.0 + nd.v, N - 1) * s * nd.weight;
      p += std::pow(1.0 + nd.v, N - 2) * s * nd.weight;
    }
    return r_ * m / p;
  }
  /// Boundary momentum about the barycentre (the infimum over centres).
  double min_momentum() const {
    const Vec<N> b = barycenter();
    return momentum() - perimeter() * b.squaredNorm();
  }

  /// W^{1,inf} size of v on the grid: max |v| + max |grad v|.
  double w1inf() const {
    double a = 0.0, g = 0.0;
    for (const auto& nd : nodes_) {
      a = std::max(a, std::abs(nd.v));
      g = std::max(g, std::sqrt(nd.grad2));
    }
    return a + g;
  }

  /// Perturbation of the unit-radius parametrization, u = r (1 + v) - 1.
  SobolevNorms unit_perturbation_norms() const {
    HarmonicSpectrum u = v_;
    for (auto& c : u.coeffs) c *= r_;
    u[0] += (r_ - 1.0) * (N == 2 ? std::sqrt(two_pi) : std::sqrt(4.0 * pi));
    return sobolev_norms(u);
  }

  /// Rescale to volume omega_n m_radius^n, then remove the barycentre by
  /// Newton steps on the degree-1 coefficients (Jacobian ~ identity in units
  /// of r), iterating both until the barycentre is below `tol` * r.
  void normalize(double target_radius = 1.0, double tol = 1e-12, int min_passes = 3, int max_passes = 60) {
    const double target = unit_ball_volume(N) * std::pow(target_radius, N);
    for (int pass = 0; pass < max_passes; ++pass) {
      r_ *= std::pow(target / volume(), 1.0 / N);
      const Vec<N> b = barycenter();
      if (pass + 1 >= min_passes && b.norm() < tol * r_ &&
          std::abs(volume() / target - 1.0) < 1e-13)
        return;
      shift_degree_one(-b / r_);
      refresh();
    }
    throw NonConverged(barycenter().norm(), tol * r_);
  }

 private:
  template <class F>
  double sum(F&& f) const {
    double s = 0.0;
    for (const auto& nd : nodes_) s += f(nd.v, nd.grad2) * nd.weight;
    return s;
  }

  void shift_degree_one(const Vec<N>& c) {
    if (v_.degree < 1) {
      v_.coeffs.resize(static_cast<std::size_t>(HarmonicSpectrum::count(N, 1)), 0.0);
      v_.degree = 1;
    }
    if constexpr (N == 2) {
      v_[1] += c.x() * std::sqrt(pi);
      v_[2] += c.y() * std::sqrt(pi);
    } else {
      const double f = std::sqrt(4.0 * pi / 3.0);
      v_[static_cast<std::size_t>(sh_index(1, 1))] += c.x() * f;
      v_[static_cast<std::size_t>(sh_index(1, -1))] += c.y() * f;
      v_[static_cast<std::size_t>(sh_index(1, 0))] += c.z() * f;
    }
  }

  void refresh() {
    nodes_ = detail::radial_nodes(v_, grid_);
    for (const auto& nd : nodes_)
      if (!(1.0 + nd.v > 0.0)) throw PerturbationTooLarge("radial function is not positive");
  }

  double r_;
  HarmonicSpectrum v_;
  DirectionGrid<N> grid_;
  std::vector<detail::RadialNode<N>> nodes_;
};

/// r (1 + t u) with |E| = omega_n and zero boundary barycentre.
template <int N>
NearlySphericalBody<N> perturbed_ball(const HarmonicSpectrum& u, double t, DirectionGrid<N> grid,
                                      double eps0 = 0.1) {
  if (u.dim != N) throw ValidationError("perturbation spectrum has the wrong dimension");
  if (!u.coeffs.empty() && std::abs(u[0]) > 0.0) throw ValidationError("perturbation must have no degree-0 term");
  HarmonicSpectrum v = u;
  for (auto& c : v.coeffs) c *= t;
  NearlySphericalBody<N> b(1.0, v, std::move(grid));
  if (!(b.w1inf() < eps0)) throw PerturbationTooLarge("|t u|_{W^{1,inf}} = " + std::to_string(b.w1inf()) +
                                                      " exceeds " + std::to_string(eps0));
  b.normalize();
  return b;
}

/// Second-order prediction of M - P^{n^2-1} / (n omega_n)^{n^2-2} for |E| = omega_n:
/// (n+1)/2 (1 + (n-1)^2) int u^2 - (n^2 - 2)/2 int |grad u|^2.
inline double fuglede_prediction(int n, const SobolevNorms& u) {
  return 0.5 * (n + 1) * (1.0 + (n - 1.0) * (n - 1.0)) * u.l2_squared - 0.5 * (n * n - 2.0) * u.grad_squared;
}

}  // namespace isocurv
