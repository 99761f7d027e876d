#pragma once

// Projected gradient ascent over Fourier-parametrized planar convex bodies,
// and second-order checks of functionals at the ball.

#include "isocurv/harness.hpp"

#include <future>
#include <sstream>
#include <string>
#include <vector>

namespace isocurv {

enum class Objective { F, G_beta, neg_G_beta, script_H };

inline Objective parse_objective(const std::string& s) {
  if (s == "F") return Objective::F;
  if (s == "G_beta") return Objective::G_beta;
  if (s == "neg_G_beta") return Objective::neg_G_beta;
  if (s == "script_H") return Objective::script_H;
  throw ValidationError("unknown objective '" + s + "'");
}

inline const char* to_string(Objective o) {
  switch (o) {
    case Objective::F: return "F";
    case Objective::G_beta: return "G_beta";
    case Objective::neg_G_beta: return "neg_G_beta";
    case Objective::script_H: return "script_H";
  }
  return "";
}

/// In the plane P = 2 W_1 = 2 pi a0, so fixing either one fixes a0.
enum class ConstraintMode { FixedPerimeter, FixedW, ScaleInvariant };

struct OptimizeConfig {
  Objective objective = Objective::F;
  int n = 2;
  int K = 8;
  ConstraintMode mode = ConstraintMode::ScaleInvariant;
  double beta = 2.0;
  double perimeter = two_pi;  // target for the fixed-perimeter / fixed-W modes
  std::uint64_t seed = 0;
  int max_iter = 10000;
  double grad_tol = 1e-8;
  double min_slack = 0.01;
  double degeneracy = 1e-4;  // stop when W_0 / W_1^2 drops below this
  double init_decay = 0.3;
  int stall_limit = 50;
  int grid = 0;
  int trace_every = 1;
  bool throw_on_stall = true;
};

struct TraceEntry {
  int iteration = 0;
  std::vector<double> coeffs;  // c_2, s_2, ..., c_K, s_K at a0 = 1
  double objective = 0.0;
  double slack = 0.0;
  double step = 0.0;
};

struct OptimizationTrace {
  std::vector<TraceEntry> entries;
  std::string termination;

  std::string to_jsonl() const {
    std::string out;
    for (const auto& e : entries) {
      out += json{{"iteration", e.iteration}, {"coeffs", e.coeffs}, {"objective", e.objective}, {"slack", e.slack},
                  {"step", e.step}}
                 .dump() +
             "\n";
    }
    out += json{{"termination", termination}}.dump() + "\n";
    return out;
  }
};

struct OptimizeResult {
  FourierCoeffs coeffs;  // scaled to the constraint
  double value = 0.0;    // objective at the final body
  double best_value = 0.0;
  int iterations = 0;
  OptimizationTrace trace;
};

namespace detail {

struct PlanarQuantities {
  double area = 0.0;
  double perimeter = 0.0;
  double min_momentum = 0.0;  // boundary momentum about the boundary barycentre
};

inline PlanarQuantities planar_quantities(const FourierCoeffs& a, const DirectionGrid<2>& g) {
  const auto jets = evaluate_on_grid(a, g);
  PlanarQuantities q;
  Vec2 first = Vec2::Zero();
  double m0 = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    const auto& s = jets[static_cast<std::size_t>(j)];
    const Vec2 w = g.direction(j), t(-w.y(), w.x());
    const Vec2 x = s.f * w + s.d1 * t;
    const double r = s.f + s.d2, wt = g.weight(j);
    q.area += 0.5 * s.f * r * wt;
    q.perimeter += r * wt;
    m0 += x.squaredNorm() * r * wt;
    first += x * r * wt;
  }
  q.min_momentum = m0 - first.squaredNorm() / q.perimeter;
  return q;
}

inline FourierCoeffs from_vector(const VecX& x, int K) {
  FourierCoeffs a;
  a.a0 = 1.0;
  a.resize(K);
  for (int k = 2; k <= K; ++k) {
    a.cos[static_cast<std::size_t>(k - 1)] = x[2 * (k - 2)];
    a.sin[static_cast<std::size_t>(k - 1)] = x[2 * (k - 2) + 1];
  }
  return a;
}

inline int degree_of(Eigen::Index i) { return 2 + static_cast<int>(i / 2); }

/// sum_{k>=2} w(k) (c_k^2 + s_k^2)
template <class W>
double weighted_energy(const VecX& x, W w) {
  double t = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) t += w(degree_of(i)) * x[i] * x[i];
  return t;
}

/// Objective at a0 = 1. script_H and G_beta use the closed spectral forms
/// (Gauss momentum 2 pi + pi sum (1+k^2) a^2, area pi + (pi/2) sum (1-k^2) a^2).
inline double objective_value(Objective o, double beta, const VecX& x, int K, const DirectionGrid<2>& g) {
  if (o == Objective::F) {
    const auto q = planar_quantities(from_vector(x, K), g);
    return q.min_momentum / std::pow(q.perimeter, 3);
  }
  const double H = pi + 0.5 * pi * weighted_energy(x, [](int k) { return 1.0 + k * k; });
  const double area = pi + 0.5 * pi * weighted_energy(x, [](int k) { return 1.0 - k * k; });
  switch (o) {
    case Objective::G_beta: return H + beta * area;
    case Objective::neg_G_beta: return -(H + beta * area);
    default: return H;
  }
}

/// Heat-flow filter a_k -> exp(-tau k^2) a_k. The kernel is positive, so the
/// radius of curvature evolves by the heat equation and its minimum never
/// decreases; no coefficient grows.
inline VecX smooth(const VecX& x, double tau) {
  VecX y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double k = degree_of(i);
    y[i] *= std::exp(-tau * k * k);
  }
  return y;
}

}  // namespace detail

/// Radii of curvature 1 + (A x)_j at the grid nodes for a0 = 1; linear in x.
struct CurvatureRadii {
  MatX A;

  CurvatureRadii(int K, const DirectionGrid<2>& g) : A(g.size(), 2 * (K - 1)) {
    for (int j = 0; j < g.size(); ++j) {
      const double th = g.angle(j);
      for (int k = 2; k <= K; ++k) {
        A(j, 2 * (k - 2)) = (1.0 - k * k) * std::cos(k * th);
        A(j, 2 * (k - 2) + 1) = (1.0 - k * k) * std::sin(k * th);
      }
    }
  }
  VecX radii(const VecX& x) const { return (A * x).array() + 1.0; }
  double slack(const VecX& x) const { return radii(x).minCoeff(); }
};

/// Restores slack >= min_slack by bisection on the smoothing time. Returns
/// the projected point and whether the projection was active.
inline std::pair<VecX, bool> convexity_projection(const VecX& x, const CurvatureRadii& R, double min_slack) {
  if (R.slack(x) >= min_slack) return {x, false};
  double lo = 0.0, hi = 1e-3;
  while (R.slack(detail::smooth(x, hi)) < min_slack) hi *= 2.0;
  for (int it = 0; it < 60 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (R.slack(detail::smooth(x, mid)) >= min_slack ? hi : lo) = mid;
  }
  return {detail::smooth(x, hi), true};
}

/// Projection of the gradient onto the cone of directions that do not lower
/// the local minima of the radii r lying within `band` of the slack floor.
/// R supplies the constraint rows in the coordinates of `grad`.
inline VecX tangent_direction(const VecX& grad, const VecX& r, const CurvatureRadii& R, double floor, double band,
                              std::vector<bool>* warm = nullptr) {
  const Eigen::Index N = r.size();
  std::vector<Eigen::Index> act;
  for (Eigen::Index j = 0; j < N; ++j)
    if (r[j] < floor + band) act.push_back(j);
  if (act.empty()) return grad;
  MatX E(grad.size(), static_cast<Eigen::Index>(act.size()));
  for (std::size_t i = 0; i < act.size(); ++i) E.col(static_cast<Eigen::Index>(i)) = -R.A.row(act[i]).transpose();
  std::vector<bool> passive(act.size(), false);
  if (warm) {
    warm->resize(static_cast<std::size_t>(N), false);
    for (std::size_t i = 0; i < act.size(); ++i) passive[i] = (*warm)[static_cast<std::size_t>(act[i])];
  }
  const VecX lambda = nnls(E, grad, &passive);
  if (warm) {
    std::fill(warm->begin(), warm->end(), false);
    for (std::size_t i = 0; i < act.size(); ++i) (*warm)[static_cast<std::size_t>(act[i])] = passive[i];
  }
  return grad - E * lambda;
}

inline OptimizeResult extremize(const OptimizeConfig& cfg) {
  if (cfg.n != 2) throw ValidationError("shape optimization is implemented for n = 2");
  if (cfg.K < 2) throw ValidationError("optimization needs K >= 2");
  if (cfg.objective == Objective::F && cfg.mode != ConstraintMode::ScaleInvariant)
    throw ValidationError("F is scale invariant; use the scale-invariant mode");
  if (cfg.objective != Objective::F && cfg.mode == ConstraintMode::ScaleInvariant)
    throw ValidationError("this objective needs a fixed perimeter or fixed W_1");
  int grid = cfg.grid > 0 ? cfg.grid : 64;
  if (cfg.grid <= 0)
    while (grid < 16 * cfg.K) grid *= 2;
  if (4 * cfg.K > grid) throw ValidationError("K exceeds grid / 4");
  const DirectionGrid<2> g(grid);
  const CurvatureRadii R(cfg.K, g);
  const int K = cfg.K, d = 2 * (K - 1);
  VecX sc(d);
  for (int i = 0; i < d; ++i) sc[i] = 1.0 / (1.0 - detail::degree_of(i) * detail::degree_of(i));
  CurvatureRadii Ry = R;
  Ry.A = R.A * sc.asDiagonal();

  GeneratorSpec gen;
  gen.max_degree = K;
  gen.decay = cfg.init_decay;
  gen.grid = grid;
  const auto start = std::get<SupportBody<2>>(random_convex_body(gen, cfg.seed)).coeffs();
  VecX x(d);
  for (int k = 2; k <= K; ++k) {
    x[2 * (k - 2)] = start.c(k) / start.a0;
    x[2 * (k - 2) + 1] = start.s(k) / start.a0;
  }
  x = convexity_projection(x, R, cfg.min_slack).first;

  auto eval = [&](const VecX& y) { return detail::objective_value(cfg.objective, cfg.beta, y, K, g); };
  const double h = 1e-6;  // a0 = 1
  auto gradient = [&](const VecX& y) {
    VecX gr(d);
    for (int i = 0; i < d; ++i) {
      VecX p = y, m = y;
      p[i] += h;
      m[i] -= h;
      gr[i] = (eval(p) - eval(m)) / (2 * h);
    }
    return gr;
  };

  OptimizeResult res;
  double f = eval(x), alpha = 1.0, band = cfg.min_slack;
  std::vector<bool> warm;
  res.best_value = f;
  int cancelled = 0, it = 0;
  auto record = [&](int iter, double step) {
    if (cfg.trace_every <= 0 || iter % cfg.trace_every != 0) return;
    TraceEntry e;
    e.iteration = iter;
    e.coeffs.assign(x.data(), x.data() + x.size());
    e.objective = f;
    e.slack = R.slack(x);
    e.step = step;
    res.trace.entries.push_back(std::move(e));
  };
  record(0, 0.0);
  res.trace.termination = "max-iterations";
  for (it = 1; it <= cfg.max_iter; ++it) {
    // Ascent in radius-of-curvature coordinates y_k = (1 - k^2) x_k, where the
    // convexity constraints have unit weights in every degree.
    const VecX gy = sc.cwiseProduct(gradient(x)), r = R.radii(x);
    VecX dir_y = tangent_direction(gy, r, Ry, cfg.min_slack, band, &warm);
    // Near-active radii are held fixed; the band narrows once that set is stationary.
    while (dir_y.norm() < cfg.grad_tol && band > 1e-9) {
      band *= 0.5;
      dir_y = tangent_direction(gy, r, Ry, cfg.min_slack, band, &warm);
    }
    if (dir_y.norm() < cfg.grad_tol) {
      res.trace.termination = "gradient";
      break;
    }
    const VecX dir = sc.cwiseProduct(dir_y);
    bool accepted = false, projected = false;
    VecX y;
    double fy = f;
    for (int ls = 0; ls < 40; ++ls) {
      auto [p, active] = convexity_projection(VecX(x + alpha * dir), R, cfg.min_slack);
      projected = active;
      fy = eval(p);
      if (fy > f && fy >= f + 1e-4 * alpha * dir_y.squaredNorm()) {
        y = std::move(p);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (projected) {
        if (++cancelled >= cfg.stall_limit) {
          res.trace.termination = "stalled";
          if (cfg.throw_on_stall) throw Stalled(R.slack(x));
          break;
        }
        alpha = 1.0;
        continue;
      }
      res.trace.termination = "line-search";
      break;
    }
    cancelled = 0;
    const double step = (y - x).norm();
    x = std::move(y);
    f = fy;
    res.best_value = std::max(res.best_value, f);
    alpha *= 2.0;
    record(it, step);
    const double area = pi + 0.5 * pi * detail::weighted_energy(x, [](int k) { return 1.0 - k * k; });
    if (area / (pi * pi) < cfg.degeneracy) {
      res.trace.termination = "degenerate";
      break;
    }
  }
  res.iterations = std::min(it, cfg.max_iter);
  FourierCoeffs a = detail::from_vector(x, K);
  const double scale = cfg.mode == ConstraintMode::ScaleInvariant ? 1.0 : cfg.perimeter / two_pi;
  res.coeffs = transform(a, Vec2::Zero(), scale);
  const double s2 = cfg.objective == Objective::F ? 1.0 : scale * scale;
  res.value = f * s2;
  res.best_value *= s2;
  return res;
}

/// Independent restarts with seeds seed, seed+1, ...; results in seed order.
inline std::vector<OptimizeResult> extremize_restarts(OptimizeConfig cfg, int restarts) {
  std::vector<std::future<OptimizeResult>> jobs;
  for (int r = 0; r < restarts; ++r) {
    OptimizeConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(r);
    jobs.push_back(std::async(std::launch::async, [c] { return extremize(c); }));
  }
  std::vector<OptimizeResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// ---------------------------------------------------------------------------
// Second-order behaviour at the ball

struct CurvatureRow {
  int k = 0;
  double fitted = 0.0;      // second-order coefficient per unit ||u||^2
  double prediction = 0.0;
  bool sign_match = false;
};

namespace detail {

/// Perturbed ball 1 + t u_k as a support body: u = cos k theta (n = 2), the
/// orthonormal Y_{k,0} (n = 3). Returns (objective, ||u||^2).
inline double ball_objective(Objective o, int n, int k, double t, double beta) {
  if (n == 2) {
    FourierCoeffs a;
    a.a0 = 1.0;
    a.resize(k);
    a.cos[static_cast<std::size_t>(k - 1)] = t;
    int g = 64;
    while (g < 8 * k) g *= 2;
    const SupportBody<2> b(a, DirectionGrid<2>(g));
    return o == Objective::F ? F_functional(b) : G_beta(b, beta);
  }
  SphericalCoeffs a(k);
  a.at(0, 0) = 1.0;
  a.at(k, 0) = t / std::sqrt(4.0 * pi);
  const SupportBody<3> b(a, DirectionGrid<3>(std::max(16, 2 * k + 2)));
  return o == Objective::F ? F_functional(b) : G_beta(b, beta);
}

}  // namespace detail

/// Fitted second-order coefficients at the ball along each degree k. For F the
/// coefficient is that of (F - F(B)) n omega / F(B) per unit amplitude of
/// u = cos k theta or Y_{k,0}, comparable to the momentum-deficit prediction; for G_beta it is n (G_beta - G_beta(B)) / ||u||^2,
/// predicted by (1 + beta) + (1 - beta/(n-1)) k (n+k-2).
inline std::vector<CurvatureRow> certify_local_max_ball(Objective o, int n, int K, double beta = 0.0, double t0 = 1e-3) {
  if (o != Objective::F && o != Objective::G_beta) throw ValidationError("certification supports F and G_beta");
  if (n != 2 && n != 3) throw ValidationError("certification supports n = 2 and 3");
  std::vector<CurvatureRow> rows;
  const double norm2 = n == 2 ? pi : 1.0;
  const double f0 = detail::ball_objective(o, n, std::max(K, 2), 0.0, beta);
  for (int k = 2; k <= K; ++k) {
    // Least-squares quadratic through t in {-2, -1, 0, 1, 2} t0.
    double s_t2 = 0, s_t4 = 0, s_ft2 = 0, s_f = 0;
    for (int j = -2; j <= 2; ++j) {
      const double t = j * t0, v = detail::ball_objective(o, n, k, t, beta) - f0, t2 = t * t;
      s_t2 += t2;
      s_t4 += t2 * t2;
      s_ft2 += v * t2;
      s_f += v;
    }
    const double c = (5 * s_ft2 - s_t2 * s_f) / (5 * s_t4 - s_t2 * s_t2);
    CurvatureRow r;
    r.k = k;
    if (o == Objective::F) {
      r.fitted = c * sphere_area(n) / F_ball(n);
      r.prediction = momentum_deficit_prediction(n, k);
    } else {
      r.fitted = n * c / norm2;
      r.prediction = (1 + beta) + (1 - beta / (n - 1)) * laplace_eigenvalue(k, n);
    }
    const double tol = 1e-6 * (1 + std::abs(r.prediction));
    r.sign_match = (std::abs(r.prediction) < tol) ? std::abs(r.fitted) < 1e-3 * (1 + std::abs(r.prediction))
                                                  : (r.fitted > 0) == (r.prediction > 0);
    rows.push_back(r);
  }
  return rows;
}

inline json to_json(const CurvatureRow& r) {
  return json{{"k", r.k}, {"fitted", r.fitted}, {"prediction", r.prediction}, {"sign_match", r.sign_match}};
}

}  // namespace isocurv
