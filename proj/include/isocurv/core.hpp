#pragma once

// Shared constants, small vector types, error hierarchy and deterministic
// random numbers used throughout the library.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isocurv {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface measure of S^{n-1}, i.e. n * omega_n.
inline double sphere_area(int n) { return n * unit_ball_volume(n); }

/// Upper threshold (n-1)(1 + n/(n+1)) above which balls maximize G_beta.
inline double beta_threshold(int n) {
  return (n - 1) * (1.0 + static_cast<double>(n) / (n + 1));
}

// ---------------------------------------------------------------------------
// Errors. InputError covers anything caused by a bad body or config;
// NumericError covers a computation that could not reach its tolerance.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class NotConvex : public InputError {
 public:
  NotConvex(double min_slack, double worst_theta, double worst_phi = 0.0)
      : InputError("body is not convex: min curvature-radius slack " +
                   std::to_string(min_slack)),
        min_slack(min_slack),
        worst_theta(worst_theta),
        worst_phi(worst_phi) {}
  double min_slack;
  double worst_theta;
  double worst_phi;
};

class NonPositiveSupport : public InputError {
 public:
  NonPositiveSupport(double value, double theta, double phi = 0.0)
      : InputError("support function is not positive (" + std::to_string(value) +
                   "); origin is not interior"),
        value(value),
        theta(theta),
        phi(phi) {}
  double value;
  double theta;
  double phi;
};

class ZeroMeanViolated : public InputError {
 public:
  using InputError::InputError;
};

class OutOfDomain : public InputError {
 public:
  using InputError::InputError;
};

class OpenCurve : public InputError {
 public:
  using InputError::InputError;
};

class SelfIntersection : public InputError {
 public:
  using InputError::InputError;
};

class PerturbationTooLarge : public InputError {
 public:
  using InputError::InputError;
};

class UnknownExample : public InputError {
 public:
  using InputError::InputError;
};

class AliasingSuspected : public NumericError {
 public:
  AliasingSuspected(double fraction)
      : NumericError("top-octave energy fraction " + std::to_string(fraction) +
                     " suggests aliasing"),
        fraction(fraction) {}
  double fraction;
};

class MethodMismatch : public NumericError {
 public:
  MethodMismatch(double a, double b)
      : NumericError("quadrature and spectral routes disagree: " + std::to_string(a) +
                     " vs " + std::to_string(b)),
        a(a),
        b(b) {}
  double a;
  double b;
};

class NonConverged : public NumericError {
 public:
  NonConverged(double best, double gap)
      : NumericError("minimization did not converge: best " + std::to_string(best) +
                     ", gap bound " + std::to_string(gap)),
        best(best),
        gap(gap) {}
  double best;
  double gap;
};

class GenerationFailed : public NumericError {
 public:
  using NumericError::NumericError;
};

class Stalled : public NumericError {
 public:
  explicit Stalled(double last_slack)
      : NumericError("optimizer stalled against the convexity constraint"),
        last_slack(last_slack) {}
  double last_slack;
};

class PoorFit : public NumericError {
 public:
  explicit PoorFit(double r2)
      : NumericError("power-law fit has R^2 = " + std::to_string(r2)), r2(r2) {}
  double r2;
};

// ---------------------------------------------------------------------------
// Deterministic randomness. The standard distributions are implementation
// defined, so uniform doubles are built from raw 64-bit words.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  /// Independent stream for item `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next() {
    // xorshift64*
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// FNV-1a, used for body fingerprints (std::hash is not stable across runs).
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace isocurv
