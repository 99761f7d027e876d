#pragma once

// Real harmonic bases: trigonometric series on S^1 and real spherical
// harmonics on S^2, with exact derivatives.
//
// Two coefficient conventions coexist:
//  * amplitude coefficients (FourierCoeffs, SphericalCoeffs) describe a body
//    the way people write it down: h = a0 + 0.1 cos 3t, or a0 times the
//    4pi-normalised spherical harmonics so that a0 = 1 is the unit ball;
//  * orthonormal coefficients (HarmonicSpectrum in spectral.hpp) are the
//    L^2(S^{n-1}) coordinates used by every Parseval-type identity.

#include "isocurv/core.hpp"
#include "isocurv/grid.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace isocurv {

/// h(t) = a0 + sum_k cos[k-1] cos(k t) + sin[k-1] sin(k t)
struct FourierCoeffs {
  double a0 = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  int degree() const { return static_cast<int>(std::max(cos.size(), sin.size())); }
  double c(int k) const { return k >= 1 && k <= static_cast<int>(cos.size()) ? cos[k - 1] : 0.0; }
  double s(int k) const { return k >= 1 && k <= static_cast<int>(sin.size()) ? sin[k - 1] : 0.0; }
  void resize(int k) {
    cos.resize(static_cast<std::size_t>(k), 0.0);
    sin.resize(static_cast<std::size_t>(k), 0.0);
  }
};

inline int sh_index(int k, int m) { return k * k + k + m; }
inline int sh_count(int degree) { return (degree + 1) * (degree + 1); }

/// h = sum_{k,m} c_{k,m} sqrt(4 pi) Y_{k,m}; c_{0,0} is the constant term.
struct SphericalCoeffs {
  int degree = 0;
  std::vector<double> c = std::vector<double>(1, 0.0);

  explicit SphericalCoeffs(int deg = 0)
      : degree(deg), c(static_cast<std::size_t>(sh_count(deg)), 0.0) {}

  double& at(int k, int m) { return c[static_cast<std::size_t>(sh_index(k, m))]; }
  double at(int k, int m) const {
    return k <= degree ? c[static_cast<std::size_t>(sh_index(k, m))] : 0.0;
  }
};

/// Value and angular derivatives of a function on S^1.
struct CircleJet {
  double f = 0.0, d1 = 0.0, d2 = 0.0;
};

/// Value and covariant derivatives of a function on S^2 in the orthonormal
/// frame (e_theta, e_phi).
struct SphereJet {
  double f = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

// ---------------------------------------------------------------------------
// Trigonometric series

inline CircleJet evaluate(const FourierCoeffs& a, double t) {
  CircleJet out{a.a0, 0.0, 0.0};
  const double c1 = std::cos(t), s1 = std::sin(t);
  double ck = 1.0, sk = 0.0;
  for (int k = 1; k <= a.degree(); ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    const double ak = a.c(k), bk = a.s(k);
    out.f += ak * ck + bk * sk;
    out.d1 += k * (bk * ck - ak * sk);
    out.d2 -= static_cast<double>(k) * k * (ak * ck + bk * sk);
  }
  return out;
}

/// Evaluates the series and its derivatives at every node of a uniform grid
/// using an exact cosine table indexed by (k*j) mod N.
inline std::vector<CircleJet> evaluate_on_grid(const FourierCoeffs& a, const DirectionGrid<2>& grid) {
  const int n = grid.size();
  std::vector<double> ct(static_cast<std::size_t>(n)), st(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ct[static_cast<std::size_t>(j)] = std::cos(grid.angle(j));
    st[static_cast<std::size_t>(j)] = std::sin(grid.angle(j));
  }
  std::vector<CircleJet> out(static_cast<std::size_t>(n), CircleJet{a.a0, 0.0, 0.0});
  for (int k = 1; k <= a.degree(); ++k) {
    const double ak = a.c(k), bk = a.s(k);
    if (ak == 0.0 && bk == 0.0) continue;
    const double kk = static_cast<double>(k) * k;
    for (int j = 0; j < n; ++j) {
      const auto idx = static_cast<std::size_t>((static_cast<long long>(k) * j) % n);
      const double c = ct[idx], s = st[idx];
      auto& o = out[static_cast<std::size_t>(j)];
      o.f += ak * c + bk * s;
      o.d1 += k * (bk * c - ak * s);
      o.d2 -= kk * (ak * c + bk * s);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Real spherical harmonics

/// Orthonormal associated Legendre functions Pbar_k^m(cos theta) (no
/// Condon-Shortley phase) and their first two theta-derivatives, for
/// 0 <= m <= k <= degree. Requires 0 < theta < pi.
class LegendreTable {
 public:
  LegendreTable(double theta, int degree)
      : degree_(degree),
        p_(size(degree), 0.0),
        dp_(size(degree), 0.0),
        d2p_(size(degree), 0.0) {
    const double x = std::cos(theta), s = std::sin(theta);
    const double cot = x / s;
    p(0, 0) = 1.0 / std::sqrt(4.0 * pi);
    for (int m = 1; m <= degree; ++m)
      p(m, m) = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p(m - 1, m - 1);
    for (int m = 0; m < degree; ++m) p(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * p(m, m);
    for (int m = 0; m <= degree; ++m) {
      for (int k = m + 2; k <= degree; ++k) {
        const double kk = static_cast<double>(k) * k, mm = static_cast<double>(m) * m;
        const double a = std::sqrt((4.0 * kk - 1.0) / (kk - mm));
        const double b = std::sqrt(((k - 1.0) * (k - 1.0) - mm) / (4.0 * (k - 1.0) * (k - 1.0) - 1.0));
        p(k, m) = a * (x * p(k - 1, m) - b * p(k - 2, m));
      }
    }
    for (int k = 0; k <= degree; ++k) {
      for (int m = 0; m <= k; ++m) {
        const double prev = k > m ? p(k - 1, m) : 0.0;
        const double c = std::sqrt((2.0 * k + 1.0) / (2.0 * k - 1.0) * (static_cast<double>(k) * k - static_cast<double>(m) * m));
        const double d = (k * x * p(k, m) - (k > m ? c * prev : 0.0)) / s;
        dp(k, m) = d;
        d2p(k, m) = -cot * d - (k * (k + 1.0) - m * m / (s * s)) * p(k, m);
      }
    }
  }

  int degree() const { return degree_; }
  double P(int k, int m) const { return p_[index(k, m)]; }
  double dP(int k, int m) const { return dp_[index(k, m)]; }
  double d2P(int k, int m) const { return d2p_[index(k, m)]; }

 private:
  static std::size_t size(int degree) {
    return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
  }
  static std::size_t index(int k, int m) { return static_cast<std::size_t>(k * (k + 1) / 2 + m); }
  double& p(int k, int m) { return p_[index(k, m)]; }
  double& dp(int k, int m) { return dp_[index(k, m)]; }
  double& d2p(int k, int m) { return d2p_[index(k, m)]; }

  int degree_;
  std::vector<double> p_, dp_, d2p_;
};

/// Orthonormal real spherical harmonic Y_{k,m}(theta, phi).
inline double real_sh(const LegendreTable& t, int k, int m, double phi) {
  if (m == 0) return t.P(k, 0);
  if (m > 0) return std::sqrt(2.0) * t.P(k, m) * std::cos(m * phi);
  return std::sqrt(2.0) * t.P(k, -m) * std::sin(-m * phi);
}

namespace detail {

// Per-latitude longitudinal Fourier data of a spherical series: for each
// order m the cosine and sine parts and their theta-derivatives.
struct OrderParts {
  std::vector<std::array<double, 3>> cos_part, sin_part;  // {f, f_theta, f_thetatheta}
};

inline OrderParts order_parts(const SphericalCoeffs& a, const LegendreTable& t) {
  const int K = a.degree;
  const double scale = std::sqrt(4.0 * pi);
  OrderParts out;
  out.cos_part.assign(static_cast<std::size_t>(K + 1), {0.0, 0.0, 0.0});
  out.sin_part.assign(static_cast<std::size_t>(K + 1), {0.0, 0.0, 0.0});
  for (int m = 0; m <= K; ++m) {
    const double norm = scale * (m == 0 ? 1.0 : std::sqrt(2.0));
    auto& cp = out.cos_part[static_cast<std::size_t>(m)];
    auto& sp = out.sin_part[static_cast<std::size_t>(m)];
    for (int k = m; k <= K; ++k) {
      const double cc = a.at(k, m) * norm;
      const double cs = m > 0 ? a.at(k, -m) * norm : 0.0;
      cp[0] += cc * t.P(k, m);
      cp[1] += cc * t.dP(k, m);
      cp[2] += cc * t.d2P(k, m);
      sp[0] += cs * t.P(k, m);
      sp[1] += cs * t.dP(k, m);
      sp[2] += cs * t.d2P(k, m);
    }
  }
  return out;
}

inline SphereJet assemble(const OrderParts& parts, double sin_t, double cos_t, double phi) {
  double f = 0, ft = 0, ftt = 0, fp = 0, fpp = 0, ftp = 0;
  const int K = static_cast<int>(parts.cos_part.size()) - 1;
  for (int m = 0; m <= K; ++m) {
    const double c = std::cos(m * phi), s = std::sin(m * phi);
    const auto& cp = parts.cos_part[static_cast<std::size_t>(m)];
    const auto& sp = parts.sin_part[static_cast<std::size_t>(m)];
    f += cp[0] * c + sp[0] * s;
    ft += cp[1] * c + sp[1] * s;
    ftt += cp[2] * c + sp[2] * s;
    fp += m * (sp[0] * c - cp[0] * s);
    ftp += m * (sp[1] * c - cp[1] * s);
    fpp -= static_cast<double>(m) * m * (cp[0] * c + sp[0] * s);
  }
  SphereJet j;
  const double cot = cos_t / sin_t;
  j.f = f;
  j.grad = {ft, fp / sin_t};
  const double off = (ftp - cot * fp) / sin_t;
  j.hess << ftt, off, off, fpp / (sin_t * sin_t) + cot * ft;
  return j;
}

}  // namespace detail

inline SphereJet evaluate(const SphericalCoeffs& a, double theta, double phi) {
  const LegendreTable t(theta, a.degree);
  return detail::assemble(detail::order_parts(a, t), std::sin(theta), std::cos(theta), phi);
}

inline std::vector<SphereJet> evaluate_on_grid(const SphericalCoeffs& a, const DirectionGrid<3>& grid) {
  std::vector<SphereJet> out(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.latitudes(); ++i) {
    const LegendreTable t(grid.theta(i), a.degree);
    const auto parts = detail::order_parts(a, t);
    for (int j = 0; j < grid.longitudes(); ++j)
      out[static_cast<std::size_t>(grid.node(i, j))] =
          detail::assemble(parts, grid.sin_theta(i), grid.cos_theta(i), grid.phi(j));
  }
  return out;
}

/// Orthonormal frame (e_theta, e_phi, omega) at a direction.
inline std::array<Vec3, 3> sphere_frame(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta), sp = std::sin(phi), cp = std::cos(phi);
  return {Vec3{ct * cp, ct * sp, -st}, Vec3{-sp, cp, 0.0}, Vec3{st * cp, st * sp, ct}};
}

inline std::pair<double, double> angles_of(const Vec3& w) {
  const double r = w.norm();
  return {std::acos(std::clamp(w.z() / r, -1.0, 1.0)), std::atan2(w.y(), w.x())};
}

}  // namespace isocurv
