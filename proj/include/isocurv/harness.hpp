#pragma once

// Random convex bodies, inequality campaigns, power-law sweeps and the
// beta threshold scan.

#include "isocurv/functionals.hpp"

#include <cstdio>
#include <future>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace isocurv {

// ---------------------------------------------------------------------------
// Random bodies

enum class BodyKind { Polygon, Spectral };

struct GeneratorSpec {
  BodyKind kind = BodyKind::Spectral;
  int n = 2;
  double decay = 0.5;     // spectral: a_k ~ uniform(-1, 1) decay^k
  int max_degree = 8;     // spectral truncation K
  int min_vertices = 3;   // polygon: point count range
  int max_vertices = 12;
  int grid = 0;           // 0 picks a grid matched to K
  double min_slack = 0.05;
};

using RandomBody = std::variant<Polygon2D, SupportBody<2>, SupportBody<3>>;

inline int default_grid(const GeneratorSpec& s) {
  if (s.grid > 0) return s.grid;
  if (s.n == 2) {
    int g = 64;
    while (g < 8 * s.max_degree) g *= 2;
    return g;
  }
  int lat = 16;
  while (2 * lat - 1 < 3 * s.max_degree || lat <= s.max_degree) lat *= 2;
  return lat;
}

namespace detail {

inline double min_radius(const std::vector<CircleJet>& jets) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& j : jets) m = std::min(m, radii_of(j)[0]);
  return m;
}

inline double min_radius(const std::vector<SphereJet>& jets) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& j : jets) {
    const auto r = radii_of(j);
    m = std::min(m, std::min(r[0], r[1]));
  }
  return m;
}

/// Largest s in [0, 1] with a0 + s * lambda_min(higher part) >= min_slack; the
/// principal radii of a0 + s h_hi are a0 + s times those of h_hi.
inline double admissible_scale(double lambda_min, double a0, double min_slack) {
  if (lambda_min >= 0.0) return 1.0;
  return std::min(1.0, (a0 - min_slack) / -lambda_min);
}

}  // namespace detail

/// Seed of body `index` in a campaign seeded with `seed`.
inline std::uint64_t body_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline RandomBody random_convex_body(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  if (spec.kind == BodyKind::Polygon) {
    if (spec.n != 2) throw ValidationError("polygon generator is planar");
    if (spec.min_vertices < 3 || spec.max_vertices < spec.min_vertices)
      throw ValidationError("invalid vertex count range");
    for (int attempt = 0; attempt < 100; ++attempt) {
      const int m = rng.uniform_int(spec.min_vertices, spec.max_vertices);
      std::vector<Vec2> pts;
      for (int i = 0; i < m; ++i) {
        const double r = std::sqrt(rng.uniform()), t = rng.uniform(0.0, two_pi);
        pts.push_back(Vec2(r * std::cos(t), r * std::sin(t)));
      }
      auto hull = convex_hull(pts);
      if (hull.size() < 3) continue;
      try {
        return Polygon2D(std::move(hull));
      } catch (const InputError&) {
        continue;
      }
    }
    throw GenerationFailed("no valid polygon after 100 attempts");
  }
  if (spec.max_degree < 0) throw ValidationError("max_degree must be >= 0");
  const int K = spec.max_degree;
  const int grid = default_grid(spec);
  const double d = spec.decay;
  if (spec.n == 2) {
    FourierCoeffs hi;
    hi.resize(K);
    Vec2 shift;
    shift.x() = K >= 1 ? rng.uniform(-1.0, 1.0) * d : 0.0;
    shift.y() = K >= 1 ? rng.uniform(-1.0, 1.0) * d : 0.0;
    for (int k = 2; k <= K; ++k) {
      hi.cos[static_cast<std::size_t>(k - 1)] = rng.uniform(-1.0, 1.0) * std::pow(d, k);
      hi.sin[static_cast<std::size_t>(k - 1)] = rng.uniform(-1.0, 1.0) * std::pow(d, k);
    }
    const DirectionGrid<2> g(grid);
    double s = detail::admissible_scale(detail::min_radius(evaluate_on_grid(hi, g)), 1.0, spec.min_slack);
    for (int attempt = 0; attempt < 100; ++attempt, s *= 0.9) {
      FourierCoeffs a = hi;
      a.a0 = 1.0;
      for (auto& c : a.cos) c *= s;
      for (auto& c : a.sin) c *= s;
      if (K >= 1) {
        a.cos[0] = shift.x();
        a.sin[0] = shift.y();
      }
      try {
        SupportBody<2> b(a, g, {false, convexity_tolerance});
        if (b.min_slack() >= spec.min_slack * (1 - 1e-12)) return b;
      } catch (const InputError&) {
      }
    }
    throw GenerationFailed("spectral body not admissible after 100 rescale attempts");
  }
  if (spec.n != 3) throw ValidationError("random bodies exist for n = 2 and 3");
  SphericalCoeffs hi(K);
  Vec3 shift = Vec3::Zero();
  if (K >= 1)
    for (int m = -1; m <= 1; ++m) shift[m == 1 ? 0 : (m == -1 ? 1 : 2)] = rng.uniform(-1.0, 1.0) * d;
  for (int k = 2; k <= K; ++k)
    for (int m = -k; m <= k; ++m) hi.at(k, m) = rng.uniform(-1.0, 1.0) * std::pow(d, k);
  const DirectionGrid<3> g(grid);
  double s = detail::admissible_scale(detail::min_radius(evaluate_on_grid(hi, g)), 1.0, spec.min_slack);
  for (int attempt = 0; attempt < 100; ++attempt, s *= 0.9) {
    SphericalCoeffs a = hi;
    for (auto& c : a.c) c *= s;
    a.at(0, 0) = 1.0;
    if (K >= 1) {
      const double f = 1.0 / std::sqrt(3.0);
      a.at(1, 1) = shift.x() * f;
      a.at(1, -1) = shift.y() * f;
      a.at(1, 0) = shift.z() * f;
    }
    try {
      SupportBody<3> b(a, g, {false, convexity_tolerance});
      if (b.min_slack() >= spec.min_slack * (1 - 1e-12)) return b;
    } catch (const InputError&) {
    }
  }
  throw GenerationFailed("spectral body not admissible after 100 rescale attempts");
}

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignConfig {
  std::string inequality = "curvature";  // curvature | curvature-lower | curvature-upper |
                                         // momentum-bound | quantitative
  GeneratorSpec generator;
  int samples = 100;
  std::uint64_t seed = 0;
  std::vector<double> betas;  // empty: the inequality's default list
  double tolerance = 0.0;     // extra absolute slack on top of err_bound
  int threads = 0;            // 0: hardware concurrency
  std::vector<std::vector<ClosedCurve>> curves;  // explicit momentum-bound inputs
};

struct CampaignResult {
  std::vector<DeficitRecord> records;
  json summary;
  std::vector<std::pair<double, double>> scatter;  // (asymmetry, deficit) when available

  std::size_t violations(double tol = 0.0) const {
    std::size_t v = 0;
    for (const auto& r : records)
      if (r.violated(tol) && !r.expected_negative) ++v;
    return v;
  }
};

inline std::vector<double> default_betas(const std::string& inequality, int n) {
  const double lower_top = n - 1.0, bn = beta_threshold(n);
  if (inequality == "curvature-lower") return {0.0, 0.5 * lower_top, lower_top};
  if (inequality == "curvature-upper") return {bn, bn + 1.0};
  if (inequality == "quantitative") return {bn + 1.0};
  return {0.0, 0.5 * lower_top, lower_top, bn, bn + 1.0};
}

namespace detail {

struct BodyOutcome {
  std::vector<DeficitRecord> records;
  double asymmetry = nan;
  double ratio_curvature = nan;
  double ratio_momentum = nan;
};

template <class B>
double F_error(const B& b) {
  constexpr int N = body_dim<B>::value;
  const auto rep = measure_report(b);
  const Estimate m = boundary_momentum(b, centroid(b));
  return F_functional(b) * ((N - 2) * (N + 1) * rep.volume.error / rep.volume.value + m.error / m.value +
                            (N * N - 1) * rep.perimeter.error / rep.perimeter.value) +
         1e-14 * F_ball(N);
}

template <class B>
BodyOutcome quantitative_records(const B& b, const std::vector<double>& betas, std::uint64_t seed) {
  constexpr int N = body_dim<B>::value;
  BodyOutcome out;
  const std::string fp = fingerprint(b);
  const double At = asymmetry(b, AsymmetryMode::MeanWidth).value;
  const double A = asymmetry(b, AsymmetryMode::Perimeter).value;
  out.asymmetry = A;
  for (double beta : betas) {
    DeficitRecord r;
    r.id = "quantitative-curvature";
    r.n = N;
    r.beta = beta;
    r.lhs = I_beta(b, beta);
    r.rhs = std::pow(g_function(At, N), 2.5);
    r.deficit = beta > N - 1 ? r.lhs : -r.lhs;
    const auto c = check_curvature_bound(b, beta);
    r.err_bound = c.err_bound / std::pow(quermass(b, N - 1).value, 2);
    r.regime_mismatch = c.regime_mismatch;
    r.fingerprint = fp;
    r.seed = seed;
    if (r.rhs > 0) {
      const double q = r.deficit / r.rhs;
      out.ratio_curvature = std::isnan(out.ratio_curvature) ? q : std::min(out.ratio_curvature, q);
    }
    out.records.push_back(r);
  }
  DeficitRecord r;
  r.id = "quantitative-momentum";
  r.n = N;
  r.lhs = F_ball(N) - F_functional(b);
  r.rhs = g_function(A, N);
  r.deficit = r.lhs;
  r.err_bound = F_error(b);
  r.fingerprint = fp;
  r.seed = seed;
  if (r.rhs > 0) out.ratio_momentum = r.deficit / r.rhs;
  out.records.push_back(r);
  return out;
}

inline BodyOutcome evaluate_body(const CampaignConfig& cfg, const std::vector<double>& betas, std::uint64_t seed) {
  const RandomBody body = random_convex_body(cfg.generator, seed);
  return std::visit(
      [&](const auto& b) {
        BodyOutcome out;
        using T = std::decay_t<decltype(b)>;
        if (cfg.inequality == "momentum-bound") {
          if constexpr (std::is_same_v<T, Polygon2D>) {
            out.records.push_back(check_momentum_bound({curve_of(b)}));
          } else if constexpr (std::is_same_v<T, SupportBody<2>>) {
            ClosedCurve c{{}, false};
            for (const auto& nd : b.nodes()) c.points.push_back(nd.point);
            c.points.push_back(c.points.front());
            out.records.push_back(check_momentum_bound({c}));
          } else {
            throw ValidationError("the momentum bound is planar");
          }
        } else if (cfg.inequality == "quantitative") {
          if constexpr (std::is_same_v<T, Polygon2D>) {
            throw ValidationError("quantitative campaigns use spectral near-ball bodies");
          } else {
            out = quantitative_records(b, betas, seed);
          }
        } else {
          out.records = check_curvature_bound(b, betas);
        }
        for (auto& r : out.records) r.seed = seed;
        return out;
      },
      body);
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline constexpr const char* csv_header = "inequality_id,beta,n,lhs,rhs,deficit,err_bound,fingerprint,seed";

inline std::string to_csv(const std::vector<DeficitRecord>& records) {
  std::string out = std::string(csv_header) + "\n";
  for (const auto& r : records) {
    out += r.id + "," + detail::format_double(r.beta) + "," + std::to_string(r.n) + "," + detail::format_double(r.lhs) +
           "," + detail::format_double(r.rhs) + "," + detail::format_double(r.deficit) + "," +
           detail::format_double(r.err_bound) + "," + r.fingerprint + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

inline json summarize(const std::string& inequality, int n, const std::vector<DeficitRecord>& records, double tol) {
  json s;
  s["inequality"] = inequality;
  s["n"] = n;
  s["records"] = records.size();
  std::size_t violations = 0, expected = 0, informational = 0;
  double min_def = std::numeric_limits<double>::infinity(), cert_err = 0.0;
  const DeficitRecord* argmin = nullptr;
  for (const auto& r : records) {
    if (r.regime_mismatch) {
      ++informational;
      continue;
    }
    if (r.expected_negative) {
      ++expected;
      continue;
    }
    if (r.violated(tol)) ++violations;
    if (r.deficit < min_def) {
      min_def = r.deficit;
      argmin = &r;
    }
    if (r.certificate) cert_err = std::max(cert_err, std::abs(*r.certificate - n * (r.lhs - r.rhs)));
  }
  s["violations"] = violations;
  s["expected_negative"] = expected;
  s["informational"] = informational;
  s["min_deficit"] = argmin ? json(min_def) : json(nullptr);
  s["argmin_fingerprint"] = argmin ? json(argmin->fingerprint) : json(nullptr);
  s["argmin_seed"] = argmin ? json(argmin->seed) : json(nullptr);
  s["max_certificate_error"] = cert_err;
  return s;
}

inline CampaignResult run_inequality_campaign(const CampaignConfig& cfg) {
  if (cfg.samples < 1 && cfg.curves.empty()) throw ValidationError("sample count must be >= 1");
  const int n = cfg.generator.n;
  const std::vector<double> betas = cfg.betas.empty() ? default_betas(cfg.inequality, n) : cfg.betas;
  const std::vector<std::string> known{"curvature", "curvature-lower", "curvature-upper", "momentum-bound",
                                       "quantitative"};
  if (std::find(known.begin(), known.end(), cfg.inequality) == known.end())
    throw ValidationError("unknown inequality '" + cfg.inequality + "'");

  CampaignResult res;
  std::vector<detail::BodyOutcome> outcomes(static_cast<std::size_t>(std::max(cfg.samples, 0)));
  const int threads = cfg.threads > 0 ? cfg.threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (int t = 0; t < threads; ++t) {
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (int i = t; i < cfg.samples; i += threads)
        outcomes[static_cast<std::size_t>(i)] =
            detail::evaluate_body(cfg, betas, body_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    }));
  }
  for (auto& j : jobs) j.get();

  double inf_curv = nan, inf_mom = nan;
  for (const auto& o : outcomes) {
    for (const auto& r : o.records) {
      res.records.push_back(r);
      if (!std::isnan(o.asymmetry)) res.scatter.push_back({o.asymmetry, r.deficit});
    }
    if (!std::isnan(o.ratio_curvature)) inf_curv = std::isnan(inf_curv) ? o.ratio_curvature : std::min(inf_curv, o.ratio_curvature);
    if (!std::isnan(o.ratio_momentum)) inf_mom = std::isnan(inf_mom) ? o.ratio_momentum : std::min(inf_mom, o.ratio_momentum);
  }
  for (std::size_t c = 0; c < cfg.curves.size(); ++c) {
    DeficitRecord r = check_momentum_bound(cfg.curves[c]);
    r.seed = c;
    res.records.push_back(r);
  }
  res.summary = summarize(cfg.inequality, n, res.records, cfg.tolerance);
  res.summary["samples"] = cfg.samples;
  res.summary["seed"] = cfg.seed;
  res.summary["betas"] = betas;
  if (cfg.inequality == "quantitative") {
    res.summary["inf_ratio_curvature"] = std::isnan(inf_curv) ? json(nullptr) : json(inf_curv);
    res.summary["inf_ratio_momentum"] = std::isnan(inf_mom) ? json(nullptr) : json(inf_mom);
    if (n == 2) res.summary["inf_ratio_planar"] = res.summary["inf_ratio_momentum"];
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sweeps and power-law fits

struct FitResult {
  std::string model = "c * x^p";
  double c = 0.0;
  double p = 0.0;
  double r2 = 0.0;
  double c_fixed = 0.0;  // least-squares c with p pinned to the target exponent
  double target_c = nan;
  double target_p = nan;
  double rel_error = nan;  // |c - target_c| / |target_c|
  std::vector<double> x, y;
};

inline constexpr double min_fit_r2 = 0.999;

/// Least squares of log|y| against log x on the 4 smallest x. Throws PoorFit
/// when R^2 < 0.999.
inline FitResult fit_power_law(std::vector<double> x, std::vector<double> y, double target_c = nan,
                               double target_p = nan) {
  if (x.size() != y.size() || x.size() < 4) throw ValidationError("a fit needs at least 4 points");
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  idx.resize(4);
  FitResult f;
  for (std::size_t i : idx) {
    if (!(x[i] > 0.0) || y[i] == 0.0) throw ValidationError("power-law fits need x > 0 and y != 0");
    f.x.push_back(x[i]);
    f.y.push_back(y[i]);
  }
  const double sign = f.y.front() > 0 ? 1.0 : -1.0;
  double mx = 0, my = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    lx.push_back(std::log(f.x[i]));
    ly.push_back(std::log(std::abs(f.y[i])));
    mx += lx.back() / 4;
    my += ly.back() / 4;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  f.p = sxy / sxx;
  f.c = sign * std::exp(my - f.p * mx);
  double sse = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double e = ly[i] - (my + f.p * (lx[i] - mx));
    sse += e * e;
  }
  f.r2 = syy > 0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  f.target_c = target_c;
  f.target_p = target_p;
  const double pp = std::isnan(target_p) ? f.p : target_p;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    num += f.y[i] * std::pow(f.x[i], pp);
    den += std::pow(f.x[i], 2 * pp);
  }
  f.c_fixed = num / den;
  if (!std::isnan(target_c)) f.rel_error = std::abs(f.c - target_c) / std::abs(target_c);
  if (f.r2 < min_fit_r2) throw PoorFit(f.r2);
  return f;
}

struct SweepOptions {
  double beta = 0.0;   // ellipse
  int n = 2;           // perturbed-ball, fuglede
  int k = 2;           // harmonic degree of the perturbation
  double l = 1.0;      // rhombus perimeter
  int grid = 0;
  bool printed = true;  // cylinder: compare against the printed growth constant
};

/// Degree-k perturbation: cos k theta in the plane, the orthonormal Y_{k,0}
/// on the sphere.
inline HarmonicSpectrum unit_harmonic(int n, int k) {
  HarmonicSpectrum u(n, k);
  if (n == 2) {
    u[static_cast<std::size_t>(2 * k - 1)] = std::sqrt(pi);
  } else {
    u[static_cast<std::size_t>(sh_index(k, 0))] = 1.0;
  }
  return u;
}

/// Second-order coefficient of M - P^{n^2-1} / (n omega)^{n^2-2} for u = unit_harmonic(n, k).
inline double momentum_deficit_prediction(int n, int k) {
  return fuglede_prediction(n, sobolev_norms(unit_harmonic(n, k)));
}

template <int N>
double momentum_deficit(const NearlySphericalBody<N>& b) {
  return b.min_momentum() - std::pow(b.perimeter(), N * N - 1) / std::pow(sphere_area(N), N * N - 2);
}

template <int N>
NearlySphericalBody<N> harmonic_ball(int k, double t, int grid) {
  const HarmonicSpectrum u = unit_harmonic(N, k);
  if constexpr (N == 2) {
    return perturbed_ball<2>(u, t, DirectionGrid<2>(grid > 0 ? grid : 512));
  } else {
    return perturbed_ball<3>(u, t, DirectionGrid<3>(grid > 0 ? grid : 32));
  }
}

/// Evaluates a family over `params` and fits c x^p. Families: ellipse
/// (corollary gap), perturbed-ball (momentum deficit), fuglede (F(B) - F),
/// cylinder (boundary momentum), rhombus (pi l^2/8 - Gauss momentum).
inline FitResult sweep_and_fit(const std::string& family, const std::vector<double>& params, const SweepOptions& o = {}) {
  std::vector<double> y;
  double tc = nan, tp = nan;
  if (family == "ellipse") {
    for (double e : params) y.push_back(corollary_gap(ellipse(e, o.grid > 0 ? o.grid : default_circle_nodes), o.beta));
    tc = pi * (5.0 - 3.0 * o.beta);
    tp = 2.0;
  } else if (family == "perturbed-ball" || family == "fuglede") {
    const double pred = momentum_deficit_prediction(o.n, o.k);
    const double w = unit_ball_volume(o.n);
    for (double t : params) {
      if (o.n == 2) {
        const auto b = harmonic_ball<2>(o.k, t, o.grid);
        y.push_back(family == "fuglede" ? F_ball(2) - F_functional(b) : momentum_deficit(b));
      } else if (o.n == 3) {
        const auto b = harmonic_ball<3>(o.k, t, o.grid);
        y.push_back(family == "fuglede" ? F_ball(3) - F_functional(b) : momentum_deficit(b));
      } else {
        throw ValidationError("nearly spherical sweeps exist for n = 2 and 3");
      }
    }
    tc = family == "fuglede" ? -F_ball(o.n) * pred / (o.n * w) : pred;
    tp = 2.0;
  } else if (family == "cylinder") {
    for (double e : params) y.push_back(boundary_momentum(cylinder_family(e), Vec3::Zero()).value);
    tc = o.printed ? 2.0 * pi / 3.0 : pi / 6.0;
    tp = -2.0;
  } else if (family == "rhombus") {
    for (double a : params) y.push_back(pi * o.l * o.l / 8.0 - gauss_weighted_momentum(rhombus(o.l, a), Vec2::Zero()).value());
    tc = o.l * o.l / 8.0;
    tp = 1.0;
  } else {
    throw ValidationError("unknown sweep family '" + family + "'");
  }
  return fit_power_law(params, y, tc, tp);
}

// ---------------------------------------------------------------------------
// Threshold scan of the sign of I_beta

struct ThresholdRow {
  double beta = 0.0;
  int samples = 0;
  int negative = 0;
  int positive = 0;
  double min_I = nan;
  double max_I = nan;
  double ellipse_gap = nan;       // corollary gap of the eps = 0.05 ellipse
  int k0 = 0;                     // mode of the high-frequency construction (0 if none)
  double kmode_certificate = nan;  // sum [(1+beta) + (1-beta) k^2] a_k^2
  double kmode_I = nan;
};

/// Smallest integer k with k^2 > (1 + beta)/(beta - 1), for beta > 1.
inline int threshold_mode(double beta) {
  if (!(beta > 1.0)) return 0;
  return static_cast<int>(std::floor(std::sqrt((1.0 + beta) / (beta - 1.0)))) + 1;
}

inline std::vector<ThresholdRow> threshold_scan(const std::vector<double>& betas, const GeneratorSpec& gen, int samples,
                                                std::uint64_t seed, double eps = 0.05) {
  std::vector<ThresholdRow> rows;
  std::vector<RandomBody> bodies;
  for (int i = 0; i < samples; ++i) bodies.push_back(random_convex_body(gen, body_seed(seed, static_cast<std::uint64_t>(i))));
  for (double beta : betas) {
    ThresholdRow r;
    r.beta = beta;
    r.samples = samples;
    for (const auto& b : bodies) {
      const double I = std::visit([&](const auto& x) { return I_beta(x, beta); }, b);
      if (I < 0) ++r.negative;
      if (I > 0) ++r.positive;
      r.min_I = std::isnan(r.min_I) ? I : std::min(r.min_I, I);
      r.max_I = std::isnan(r.max_I) ? I : std::max(r.max_I, I);
    }
    if (gen.n == 2) {
      r.ellipse_gap = corollary_gap(ellipse(eps), beta);
      r.k0 = threshold_mode(beta);
      if (r.k0 > 0) {
        FourierCoeffs a;
        a.a0 = 1.0;
        a.resize(r.k0);
        a.sin[static_cast<std::size_t>(r.k0 - 1)] = eps / (r.k0 * r.k0);
        int g = 64;
        while (g < 8 * r.k0) g *= 2;
        const SupportBody<2> b(a, DirectionGrid<2>(g));
        const double a2 = pi * a.s(r.k0) * a.s(r.k0);
        r.kmode_certificate = ((1 + beta) + (1 - beta) * r.k0 * r.k0) * a2;
        r.kmode_I = I_beta(b, beta);
      }
    }
    rows.push_back(r);
  }
  return rows;
}

inline json to_json(const ThresholdRow& r) {
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  return json{{"beta", r.beta},        {"samples", r.samples},       {"negative", r.negative},
              {"positive", r.positive}, {"min_I", num(r.min_I)},      {"max_I", num(r.max_I)},
              {"ellipse_gap", num(r.ellipse_gap)}, {"k0", r.k0},     {"kmode_certificate", num(r.kmode_certificate)},
              {"kmode_I", num(r.kmode_I)}};
}

inline json to_json(const FitResult& f) {
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  return json{{"model", f.model},   {"c", f.c},         {"p", f.p},
              {"r2", f.r2},         {"c_fixed", f.c_fixed}, {"target_c", num(f.target_c)},
              {"target_p", num(f.target_p)}, {"rel_error", num(f.rel_error)}, {"x", f.x},
              {"y", f.y}};
}

inline json to_json(const RandomBody& b) {
  return std::visit([](const auto& x) { return to_json(x); }, b);
}

}  // namespace isocurv
