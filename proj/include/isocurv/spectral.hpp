#pragma once

// Harmonic analysis in orthonormal bases, Sobolev norms, the interpolation
// inequality for zero-mean functions, and the modulus g used by the
// quantitative estimates.

#include "isocurv/harmonics.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace isocurv {

/// Coefficients in the real orthonormal basis of L^2(S^{n-1}).
/// n = 2: index 0 is the constant 1/sqrt(2 pi); 2k-1 and 2k are cos k and sin k
/// (each divided by sqrt(pi)). n = 3: index k^2 + k + m is Y_{k,m}.
struct HarmonicSpectrum {
  int dim = 2;
  int degree = 0;
  std::vector<double> coeffs;

  HarmonicSpectrum() = default;
  HarmonicSpectrum(int d, int K) : dim(d), degree(K), coeffs(static_cast<std::size_t>(count(d, K)), 0.0) {}

  static int count(int d, int K) { return d == 2 ? 2 * K + 1 : (K + 1) * (K + 1); }
  std::size_t size() const { return coeffs.size(); }
  int degree_of(std::size_t i) const {
    const int ii = static_cast<int>(i);
    if (dim == 2) return (ii + 1) / 2;
    return static_cast<int>(std::floor(std::sqrt(static_cast<double>(ii)) + 1e-12));
  }
  double& operator[](std::size_t i) { return coeffs[i]; }
  double operator[](std::size_t i) const { return coeffs[i]; }

  /// Sum of squared coefficients of degree k.
  double degree_energy(int k) const {
    double e = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (degree_of(i) == k) e += coeffs[i] * coeffs[i];
    return e;
  }
};

/// Laplace-Beltrami eigenvalue k(n + k - 2) on S^{n-1}.
inline double laplace_eigenvalue(int k, int n) { return static_cast<double>(k) * (n + k - 2); }

// ---------------------------------------------------------------------------
// Conversions between amplitude and orthonormal coefficients

inline HarmonicSpectrum to_spectrum(const FourierCoeffs& a) {
  HarmonicSpectrum s(2, a.degree());
  const double sp = std::sqrt(pi);
  s[0] = a.a0 * std::sqrt(two_pi);
  for (int k = 1; k <= a.degree(); ++k) {
    s[static_cast<std::size_t>(2 * k - 1)] = a.c(k) * sp;
    s[static_cast<std::size_t>(2 * k)] = a.s(k) * sp;
  }
  return s;
}

inline HarmonicSpectrum to_spectrum(const SphericalCoeffs& a) {
  HarmonicSpectrum s(3, a.degree);
  const double f = std::sqrt(4.0 * pi);
  for (std::size_t i = 0; i < a.c.size(); ++i) s[i] = a.c[i] * f;
  return s;
}

inline FourierCoeffs to_fourier(const HarmonicSpectrum& s) {
  if (s.dim != 2) throw ValidationError("spectrum is not on the circle");
  FourierCoeffs a;
  a.a0 = s[0] / std::sqrt(two_pi);
  a.resize(s.degree);
  const double sp = std::sqrt(pi);
  for (int k = 1; k <= s.degree; ++k) {
    a.cos[static_cast<std::size_t>(k - 1)] = s[static_cast<std::size_t>(2 * k - 1)] / sp;
    a.sin[static_cast<std::size_t>(k - 1)] = s[static_cast<std::size_t>(2 * k)] / sp;
  }
  return a;
}

inline SphericalCoeffs to_spherical(const HarmonicSpectrum& s) {
  if (s.dim != 3) throw ValidationError("spectrum is not on the sphere");
  SphericalCoeffs a(s.degree);
  const double f = std::sqrt(4.0 * pi);
  for (std::size_t i = 0; i < s.size(); ++i) a.c[i] = s[i] / f;
  return a;
}

// ---------------------------------------------------------------------------
// Analysis and synthesis

namespace detail {

inline void check_top_octave(const HarmonicSpectrum& s) {
  if (s.degree < 2) return;
  double total = 0.0, top = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = s[i] * s[i];
    total += e;
    if (2 * s.degree_of(i) > s.degree) top += e;
  }
  if (total > 0.0 && top / total > 1e-6) throw AliasingSuspected(top / total);
}

}  // namespace detail

/// Projects samples on a uniform circle grid onto cos/sin up to degree K
/// (default N/4). Throws AliasingSuspected if more than 1e-6 of the energy
/// sits in degrees (K/2, K].
inline HarmonicSpectrum analyze(const std::vector<double>& f, const DirectionGrid<2>& grid, int K = -1,
                                bool check_aliasing = true) {
  const int n = grid.size();
  if (static_cast<int>(f.size()) != n) throw ValidationError("sample count does not match grid");
  if (K < 0) K = n / 4;
  if (4 * K > n) throw ValidationError("need at least 4 samples per requested degree");
  std::vector<double> ct(static_cast<std::size_t>(n)), st(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ct[static_cast<std::size_t>(j)] = std::cos(grid.angle(j));
    st[static_cast<std::size_t>(j)] = std::sin(grid.angle(j));
  }
  HarmonicSpectrum s(2, K);
  const double w = grid.weight(0);
  double sum = 0.0;
  for (double v : f) sum += v;
  s[0] = sum * w / std::sqrt(two_pi);
  for (int k = 1; k <= K; ++k) {
    double c = 0.0, d = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto idx = static_cast<std::size_t>((static_cast<long long>(k) * j) % n);
      c += f[static_cast<std::size_t>(j)] * ct[idx];
      d += f[static_cast<std::size_t>(j)] * st[idx];
    }
    s[static_cast<std::size_t>(2 * k - 1)] = c * w / std::sqrt(pi);
    s[static_cast<std::size_t>(2 * k)] = d * w / std::sqrt(pi);
  }
  if (check_aliasing) detail::check_top_octave(s);
  return s;
}

/// Projects samples on a Gauss-Legendre sphere grid onto real spherical
/// harmonics up to degree K (default min(24, longitudes/4)).
inline HarmonicSpectrum analyze(const std::vector<double>& f, const DirectionGrid<3>& grid, int K = -1,
                                bool check_aliasing = true) {
  if (static_cast<int>(f.size()) != grid.size()) throw ValidationError("sample count does not match grid");
  if (K < 0) K = std::min(24, grid.resolution() / 4);
  if (4 * K > grid.resolution() || K >= grid.latitudes())
    throw ValidationError("sphere grid too coarse for requested degree");
  HarmonicSpectrum s(3, K);
  const int nlon = grid.longitudes();
  const double dphi = two_pi / nlon;
  std::vector<double> cm(static_cast<std::size_t>(K + 1)), sm(static_cast<std::size_t>(K + 1));
  for (int i = 0; i < grid.latitudes(); ++i) {
    std::fill(cm.begin(), cm.end(), 0.0);
    std::fill(sm.begin(), sm.end(), 0.0);
    for (int j = 0; j < nlon; ++j) {
      const double v = f[static_cast<std::size_t>(grid.node(i, j))];
      for (int m = 0; m <= K; ++m) {
        cm[static_cast<std::size_t>(m)] += v * std::cos(m * grid.phi(j));
        sm[static_cast<std::size_t>(m)] += v * std::sin(m * grid.phi(j));
      }
    }
    const LegendreTable t(grid.theta(i), K);
    const double w = grid.latitude_weight(i) * dphi;
    for (int k = 0; k <= K; ++k) {
      s[static_cast<std::size_t>(sh_index(k, 0))] += w * t.P(k, 0) * cm[0];
      for (int m = 1; m <= k; ++m) {
        const double p = std::sqrt(2.0) * t.P(k, m) * w;
        s[static_cast<std::size_t>(sh_index(k, m))] += p * cm[static_cast<std::size_t>(m)];
        s[static_cast<std::size_t>(sh_index(k, -m))] += p * sm[static_cast<std::size_t>(m)];
      }
    }
  }
  if (check_aliasing) detail::check_top_octave(s);
  return s;
}

inline std::vector<double> synthesize(const HarmonicSpectrum& s, const DirectionGrid<2>& grid) {
  const auto jets = evaluate_on_grid(to_fourier(s), grid);
  std::vector<double> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.f);
  return out;
}

inline std::vector<double> synthesize(const HarmonicSpectrum& s, const DirectionGrid<3>& grid) {
  const auto jets = evaluate_on_grid(to_spherical(s), grid);
  std::vector<double> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.f);
  return out;
}

// ---------------------------------------------------------------------------
// Norms

struct SobolevNorms {
  double l2_squared = 0.0;
  double grad_squared = 0.0;
  double l2() const { return std::sqrt(l2_squared); }
  double grad() const { return std::sqrt(grad_squared); }
};

inline SobolevNorms sobolev_norms(const HarmonicSpectrum& s) {
  SobolevNorms out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a2 = s[i] * s[i];
    out.l2_squared += a2;
    out.grad_squared += laplace_eigenvalue(s.degree_of(i), s.dim) * a2;
  }
  return out;
}

struct SupNorms {
  double value = 0.0;     // max |v|
  double gradient = 0.0;  // max |grad v|
};

/// Grid maxima of |v| and |grad v|, a lower estimate of the true sup norms.
inline SupNorms sup_norms(const HarmonicSpectrum& s, const DirectionGrid<2>& grid) {
  SupNorms out;
  for (const auto& j : evaluate_on_grid(to_fourier(s), grid)) {
    out.value = std::max(out.value, std::abs(j.f));
    out.gradient = std::max(out.gradient, std::abs(j.d1));
  }
  return out;
}

inline SupNorms sup_norms(const HarmonicSpectrum& s, const DirectionGrid<3>& grid) {
  SupNorms out;
  for (const auto& j : evaluate_on_grid(to_spherical(s), grid)) {
    out.value = std::max(out.value, std::abs(j.f));
    out.gradient = std::max(out.gradient, j.grad.norm());
  }
  return out;
}

struct InterpCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  std::string note;
};

/// Interpolation inequality for zero-mean v:
///   n = 2:  |v|_inf <= pi |grad v|_2
///   n = 3:  |v|_inf^2 <= 4 |grad v|_2^2 log(8e |grad v|_inf^2 / |grad v|_2^2)
/// The n = 3 branch is evaluated with the exponents exactly as stated.
inline InterpCheck interp_check(const HarmonicSpectrum& s, double sup_norm, double sup_grad_norm) {
  if (!s.coeffs.empty() && std::abs(s[0]) > 1e-12)
    throw ZeroMeanViolated("interpolation check needs a zero-mean function (k=0 coefficient " +
                           std::to_string(s[0]) + ")");
  const SobolevNorms nrm = sobolev_norms(s);
  InterpCheck out;
  if (s.dim == 2) {
    out.lhs = sup_norm;
    out.rhs = pi * nrm.grad();
  } else {
    out.lhs = sup_norm * sup_norm;
    out.note = "log argument read as 8e*|grad v|_inf^2/|grad v|_2^2 (exponent n-1 = 2 as stated)";
    if (nrm.grad_squared > 0.0)
      out.rhs = 4.0 * nrm.grad_squared *
                std::log(8.0 * std::exp(1.0) * sup_grad_norm * sup_grad_norm / nrm.grad_squared);
  }
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

// ---------------------------------------------------------------------------
// The modulus g

/// f(t) = sqrt(t log(1/t)) on (0, 1/e), increasing from 0 to e^{-1/2}.
inline double f_forward(double t) { return std::sqrt(t * std::log(1.0 / t)); }

inline double f_inverse(double y) {
  const double top = std::exp(-0.5);
  if (!(y >= 0.0) || y >= top)
    throw OutOfDomain("f^{-1}(" + std::to_string(y) + ") is outside (0, e^{-1/2})");
  if (y == 0.0) return 0.0;
  auto fn = [y](double t) { return f_forward(t) - y; };
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13; };
  const auto r = boost::math::tools::bisect(fn, 1e-300, std::exp(-1.0), tol);
  return 0.5 * (r.first + r.second);
}

inline double g_function(double s, int n) {
  if (!(s >= 0.0)) throw OutOfDomain("g needs s >= 0");
  if (n == 2) return s * s;
  if (n == 3) return f_inverse(s * s);
  return std::pow(s, 0.5 * (n + 1));
}

}  // namespace isocurv
