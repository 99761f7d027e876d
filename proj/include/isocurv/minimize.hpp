#pragma once

// Small derivative-free minimizers: Nelder-Mead, and the central-cut
// ellipsoid method for convex functions with a certified lower bound.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace isocurv {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

struct MinimizeResult {
  VecX x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead with standard coefficients. Stops when the simplex spread in
/// function values falls below f_tol and its diameter below x_tol.
inline MinimizeResult nelder_mead(const std::function<double(const VecX&)>& f, const VecX& x0, double step,
                                  double f_tol = 1e-14, double x_tol = 1e-12, int max_iter = 5000) {
  const int d = static_cast<int>(x0.size());
  std::vector<VecX> s(static_cast<std::size_t>(d + 1), x0);
  std::vector<double> fv(static_cast<std::size_t>(d + 1));
  for (int i = 0; i < d; ++i) s[static_cast<std::size_t>(i + 1)][i] += step;
  for (std::size_t i = 0; i < s.size(); ++i) fv[i] = f(s[i]);
  std::vector<std::size_t> idx(s.size());
  MinimizeResult r;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second = idx[idx.size() - 2];
    double diam = 0.0;
    for (const auto& p : s) diam = std::max(diam, (p - s[best]).norm());
    if (std::abs(fv[worst] - fv[best]) <= f_tol * (1.0 + std::abs(fv[best])) && diam <= x_tol) {
      r.converged = true;
      break;
    }
    VecX c = VecX::Zero(d);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != worst) c += s[i];
    c /= d;
    const VecX xr = c + (c - s[worst]);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const VecX xe = c + 2.0 * (c - s[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        s[worst] = xe;
        fv[worst] = fe;
      } else {
        s[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      s[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const VecX xc = outside ? VecX(c + 0.5 * (xr - c)) : VecX(c + 0.5 * (s[worst] - c));
      const double fc = f(xc);
      if (fc < std::min(fr, fv[worst])) {
        s[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i == best) continue;
          s[i] = s[best] + 0.5 * (s[i] - s[best]);
          fv[i] = f(s[i]);
        }
      }
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  r.x = s[static_cast<std::size_t>(it - fv.begin())];
  r.value = *it;
  return r;
}

struct EllipsoidResult {
  VecX x;               // best point found
  double upper = 0.0;   // f(x)
  double lower = 0.0;   // certified lower bound on min f over the start ball
  int iterations = 0;
  double gap() const { return upper - lower; }
};

/// Central-cut ellipsoid method for a convex f with subgradient oracle
/// `fg(x, g) -> f(x)`. The minimizer must lie in the ball of radius R about
/// c. Each iterate certifies min f >= f(x_k) - sqrt(g^T P g).
inline EllipsoidResult ellipsoid_method(const std::function<double(const VecX&, VecX&)>& fg, const VecX& c, double R,
                                        double gap_tol, int max_iter = 5000) {
  const int d = static_cast<int>(c.size());
  VecX x = c;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(d, d) * R * R;
  EllipsoidResult r;
  r.x = c;
  r.upper = std::numeric_limits<double>::infinity();
  r.lower = -std::numeric_limits<double>::infinity();
  VecX g(d);
  const double dd = d;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    const double fx = fg(x, g);
    if (fx < r.upper) {
      r.upper = fx;
      r.x = x;
    }
    const VecX Pg = P * g;
    const double gpg = g.dot(Pg);
    if (!(gpg > 0.0)) {  // zero subgradient: x is optimal
      r.lower = fx;
      break;
    }
    const double s = std::sqrt(gpg);
    r.lower = std::max(r.lower, fx - s);
    if (r.upper - r.lower <= gap_tol) break;
    const VecX step = Pg / s;
    if (d == 1) {
      x -= 0.5 * step;
      P *= 0.25;
    } else {
      x -= step / (dd + 1.0);
      P = (dd * dd / (dd * dd - 1.0)) * (P - (2.0 / (dd + 1.0)) * (step * step.transpose()));
      P = 0.5 * (P + P.transpose());
    }
  }
  return r;
}

/// Lawson-Hanson non-negative least squares: argmin |E x - f| over x >= 0.
/// `warm`, if given, seeds the passive set and receives the final one.
inline VecX nnls(const MatX& E, const VecX& f, std::vector<bool>* warm = nullptr, double tol = 1e-12) {
  const Eigen::Index m = E.cols();
  VecX x = VecX::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  if (warm && warm->size() == passive.size()) passive = *warm;
  const MatX G = E.transpose() * E;
  const VecX Ef = E.transpose() * f;
  auto solve_passive = [&] {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < m; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    const auto p = static_cast<Eigen::Index>(idx.size());
    MatX Gp(p, p);
    VecX bp(p);
    for (Eigen::Index a = 0; a < p; ++a) {
      bp[a] = Ef[idx[static_cast<std::size_t>(a)]];
      for (Eigen::Index b = 0; b < p; ++b) Gp(a, b) = G(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
    const VecX sp = Gp.ldlt().solve(bp);
    VecX s = VecX::Zero(m);
    for (std::size_t i = 0; i < idx.size(); ++i) s[idx[i]] = sp[static_cast<Eigen::Index>(i)];
    return s;
  };
  // A warm start keeps only a passive set whose unconstrained solution is positive.
  for (bool changed = true; changed;) {
    changed = false;
    if (std::none_of(passive.begin(), passive.end(), [](bool b) { return b; })) break;
    const VecX s = solve_passive();
    for (Eigen::Index j = 0; j < m; ++j) {
      if (passive[static_cast<std::size_t>(j)] && s[j] <= tol) {
        passive[static_cast<std::size_t>(j)] = false;
        changed = true;
      }
    }
    if (!changed) x = s;
  }
  const double scale = tol * std::max(1.0, E.norm() * f.norm());
  for (int outer = 0; outer < 3 * m + 10; ++outer) {
    const VecX w = Ef - G * x;
    Eigen::Index t = -1;
    double best = scale;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best) best = w[t = j];
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = true;
    for (int inner = 0; inner < 3 * m + 10; ++inner) {
      const VecX s = solve_passive();
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x[j] / (x[j] - s[j]));
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  if (warm) *warm = passive;
  return x;
}

}  // namespace isocurv
