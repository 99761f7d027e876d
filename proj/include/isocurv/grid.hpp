#pragma once

// Quadrature grids on S^1 (uniform trapezoid) and S^2 (Gauss-Legendre in
// cos(colatitude) times uniform longitudes).

#include "isocurv/core.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace isocurv {

inline constexpr int default_circle_nodes = 2048;
inline constexpr int default_sphere_latitudes = 64;

/// Grid resolution override from ISO_GRID_N, or `fallback`.
inline int grid_resolution_from_env(int fallback) {
  if (const char* env = std::getenv("ISO_GRID_N")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return fallback;
}

template <int N>
class DirectionGrid;

template <>
class DirectionGrid<2> {
 public:
  explicit DirectionGrid(int nodes = default_circle_nodes) : n_(nodes) {
    if (!is_power_of_two(nodes) || nodes < 8)
      throw ValidationError("circle grid size must be a power of two >= 8, got " +
                            std::to_string(nodes));
  }

  int size() const { return n_; }
  /// Resolution parameter in the sense of the anti-aliasing rule K <= res/4.
  int resolution() const { return n_; }
  double angle(int j) const { return two_pi * j / n_; }
  double weight(int /*j*/) const { return two_pi / n_; }
  Vec2 direction(int j) const {
    const double t = angle(j);
    return {std::cos(t), std::sin(t)};
  }

  friend bool operator==(const DirectionGrid& a, const DirectionGrid& b) { return a.n_ == b.n_; }

 private:
  int n_;
};

template <>
class DirectionGrid<3> {
 public:
  /// `latitudes` Gauss-Legendre rows; longitudes default to twice that.
  explicit DirectionGrid(int latitudes = default_sphere_latitudes, int longitudes = 0)
      : nlat_(latitudes), nlon_(longitudes > 0 ? longitudes : 2 * latitudes) {
    if (nlat_ < 2 || nlon_ < 4)
      throw ValidationError("sphere grid too small");
    build();
  }

  int size() const { return nlat_ * nlon_; }
  int latitudes() const { return nlat_; }
  int longitudes() const { return nlon_; }
  int resolution() const { return nlon_; }

  int node(int i, int j) const { return i * nlon_ + j; }
  double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
  double cos_theta(int i) const { return cos_[static_cast<std::size_t>(i)]; }
  double sin_theta(int i) const { return sin_[static_cast<std::size_t>(i)]; }
  double phi(int j) const { return two_pi * j / nlon_; }
  double latitude_weight(int i) const { return lat_w_[static_cast<std::size_t>(i)]; }

  double weight(int node) const { return latitude_weight(node / nlon_) * two_pi / nlon_; }

  Vec3 direction(int node) const {
    const int i = node / nlon_;
    const int j = node % nlon_;
    const double p = phi(j);
    return {sin_theta(i) * std::cos(p), sin_theta(i) * std::sin(p), cos_theta(i)};
  }

  friend bool operator==(const DirectionGrid& a, const DirectionGrid& b) {
    return a.nlat_ == b.nlat_ && a.nlon_ == b.nlon_;
  }

 private:
  void build() {
    namespace bm = boost::math;
    // Boost returns the non-negative roots only.
    const std::vector<double> pos = bm::legendre_p_zeros<double>(nlat_);
    std::vector<double> x;
    for (double r : pos) {
      x.push_back(r);
      if (r != 0.0) x.push_back(-r);
    }
    std::sort(x.begin(), x.end(), std::greater<>());  // north to south
    for (double xi : x) {
      const double dp = bm::legendre_p_prime(nlat_, xi);
      cos_.push_back(xi);
      sin_.push_back(std::sqrt(std::max(0.0, 1.0 - xi * xi)));
      theta_.push_back(std::acos(xi));
      lat_w_.push_back(2.0 / ((1.0 - xi * xi) * dp * dp));
    }
  }

  int nlat_;
  int nlon_;
  std::vector<double> theta_, cos_, sin_, lat_w_;
};

}  // namespace isocurv
