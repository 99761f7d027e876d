#pragma once

// JSON reports and configuration parsing shared by the command-line tool.

#include "isocurv/optimizer.hpp"

#include <map>

namespace isocurv {

inline json to_json(const Estimate& e) { return json{{"value", e.value}, {"error", e.error}}; }

template <int N>
json to_json(const Vec<N>& v) {
  json a = json::array();
  for (int i = 0; i < N; ++i) a.push_back(v[i]);
  return a;
}

inline json to_json(const MeasureReport& r) {
  json W = json::array();
  for (const auto& w : r.W) W.push_back(to_json(w));
  return json{{"dim", r.dim},
              {"volume", to_json(r.volume)},
              {"perimeter", to_json(r.perimeter)},
              {"W", W},
              {"mean_width", to_json(r.mean_width)}};
}

inline json to_json(const DeficitRecord& r) {
  json j{{"inequality_id", r.id}, {"n", r.n},       {"lhs", r.lhs},
         {"rhs", r.rhs},          {"deficit", r.deficit}, {"err_bound", r.err_bound},
         {"fingerprint", r.fingerprint}, {"seed", r.seed}};
  j["beta"] = std::isnan(r.beta) ? json(nullptr) : json(r.beta);
  if (r.certificate) j["certificate"] = *r.certificate;
  if (r.regime_mismatch) j["regime_mismatch"] = true;
  if (r.expected_negative) j["expected_negative"] = true;
  return j;
}

inline json to_json(const AsymmetryResult& a) {
  json c = json::array();
  for (double v : a.center) c.push_back(v);
  return json{{"value", a.value}, {"center", c}, {"radius", a.radius}, {"gap", a.gap}};
}

/// Everything the library computes for one body.
inline json compute_report(const AnyBody& body, std::vector<double> betas) {
  return std::visit(
      [&](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        constexpr int N = body_dim<T>::value;
        if (betas.empty()) betas = default_betas("curvature", N);
        json j;
        j["body"] = to_json(b);
        j["fingerprint"] = fingerprint(b);
        j["dim"] = N;
        const MeasureReport rep = measure_report(b);
        j["measures"] = to_json(rep);
        const Vec<N> c = centroid(b);
        j["centroid"] = to_json<N>(c);
        j["boundary_momentum"] = to_json(boundary_momentum(b, c));
        if constexpr (std::is_same_v<T, StarBody2D>) {
          j["note"] = "star bodies report measures and boundary momentum only";
        } else {
          j["curvature_centroid"] = to_json<N>(curvature_centroid(b));
          j["script_H"] = to_json(script_H(b));
          json g = json::array(), I = json::array(), recs = json::array();
          for (double beta : betas) {
            g.push_back(json{{"beta", beta}, {"value", G_beta(b, beta)}});
            I.push_back(json{{"beta", beta}, {"value", I_beta(b, beta)}});
          }
          for (const auto& r : check_curvature_bound(b, betas)) recs.push_back(to_json(r));
          j["G_beta"] = g;
          j["I_beta"] = I;
          j["curvature_bound"] = recs;
          j["F"] = F_functional(b);
          j["F_ball"] = F_ball(N);
          j["asymmetry"] = json{{"perimeter", to_json(asymmetry(b, AsymmetryMode::Perimeter))},
                                {"mean_width", to_json(asymmetry(b, AsymmetryMode::MeanWidth))}};
        }
        return j;
      },
      body);
}

// ---------------------------------------------------------------------------
// Campaign configuration

namespace detail {

template <class T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

inline ClosedCurve curve_from_json(const json& j) {
  ClosedCurve c{{}, false};
  const json* pts = &j;
  if (j.is_object()) {
    if (!j.contains("points")) throw ValidationError("curve object needs 'points'");
    pts = &j.at("points");
    c.polygon = field(j, "polygon", false);
  }
  if (!pts->is_array()) throw ValidationError("curve points must be an array");
  for (const auto& p : *pts) c.points.push_back(point<2>(p));
  return c;
}

}  // namespace detail

/// {"inequality":..., "samples":..., "seed":..., "betas":[...], "tolerance":...,
///  "threads":..., "generator":{"kind":"polygon"|"spectral", "n", "decay",
///  "max_degree", "min_vertices", "max_vertices", "grid", "min_slack"},
///  "curves":[[component, ...], ...]} where a component is a point list or
///  {"points":[...], "polygon":bool}.
inline CampaignConfig campaign_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("campaign config must be a JSON object");
  CampaignConfig c;
  c.inequality = detail::field<std::string>(j, "inequality", c.inequality);
  c.samples = detail::field(j, "samples", c.samples);
  c.seed = detail::field<std::uint64_t>(j, "seed", c.seed);
  c.betas = detail::field(j, "betas", c.betas);
  c.tolerance = detail::field(j, "tolerance", c.tolerance);
  c.threads = detail::field(j, "threads", c.threads);
  c.generator.n = detail::field(j, "n", c.generator.n);
  if (j.contains("generator")) {
    const json& g = j.at("generator");
    if (!g.is_object()) throw ValidationError("'generator' must be an object");
    const std::string kind = detail::field<std::string>(g, "kind", "spectral");
    if (kind == "polygon") {
      c.generator.kind = BodyKind::Polygon;
    } else if (kind == "spectral") {
      c.generator.kind = BodyKind::Spectral;
    } else {
      throw ValidationError("generator kind must be 'polygon' or 'spectral'");
    }
    c.generator.n = detail::field(g, "n", c.generator.n);
    c.generator.decay = detail::field(g, "decay", c.generator.decay);
    c.generator.max_degree = detail::field(g, "max_degree", c.generator.max_degree);
    c.generator.min_vertices = detail::field(g, "min_vertices", c.generator.min_vertices);
    c.generator.max_vertices = detail::field(g, "max_vertices", c.generator.max_vertices);
    c.generator.grid = detail::field(g, "grid", c.generator.grid);
    c.generator.min_slack = detail::field(g, "min_slack", c.generator.min_slack);
  }
  if (c.generator.n != 2 && c.generator.n != 3) throw ValidationError("campaigns run in dimension 2 or 3");
  if (c.generator.kind == BodyKind::Polygon && c.generator.n != 2) throw ValidationError("polygons are planar");
  if (j.contains("curves")) {
    if (!j.at("curves").is_array()) throw ValidationError("'curves' must be an array");
    for (const auto& set : j.at("curves")) {
      if (!set.is_array()) throw ValidationError("each curve set is an array of components");
      std::vector<ClosedCurve> comps;
      for (const auto& comp : set) comps.push_back(detail::curve_from_json(comp));
      c.curves.push_back(std::move(comps));
    }
  }
  if (c.samples < 0) throw ValidationError("sample count must be >= 0");
  return c;
}

// ---------------------------------------------------------------------------
// Worked examples

using ExampleOptions = std::map<std::string, double>;

namespace detail {

inline double option(const ExampleOptions& o, const std::string& key, double fallback) {
  const auto it = o.find(key);
  return it == o.end() ? fallback : it->second;
}

inline json compare(double reference, double computed) {
  return json{{"reference", reference},
              {"computed", computed},
              {"rel_error", reference != 0.0 ? std::abs(computed - reference) / std::abs(reference)
                                             : std::abs(computed)}};
}

}  // namespace detail

/// Family body plus reference values next to the computed ones. Names:
/// ellipse (eps, beta), rhombus (l, alpha), cylinder (eps), perturbed-ball
/// (n, k, t), ball (n, r).
inline json example_report(const std::string& name, const ExampleOptions& o) {
  using detail::compare;
  using detail::option;
  json j;
  j["example"] = name;
  if (name == "ellipse") {
    const double eps = option(o, "eps", 0.05), beta = option(o, "beta", 0.0);
    const auto b = ellipse(eps);
    const auto ref = ellipse_reference(eps);
    const auto rep = measure_report(b);
    j["body"] = to_json(b);
    j["note"] = "perimeter and curvature momentum references are second-order expansions";
    j["perimeter"] = compare(ref.perimeter, rep.perimeter.value);
    j["area"] = compare(ref.area, rep.volume.value);
    j["curvature_momentum"] = compare(ref.curvature_momentum, gauss_weighted_momentum(b, Vec2::Zero()).value());
    j["beta"] = beta;
    j["corollary_gap"] = compare(ref.corollary_gap(beta), corollary_gap(b, beta));
  } else if (name == "rhombus") {
    const double l = option(o, "l", 1.0), alpha = option(o, "alpha", pi / 2);
    const auto P = rhombus(l, alpha);
    j["body"] = to_json(P);
    j["gauss_momentum"] = compare(rhombus_H_exact(l, alpha), gauss_weighted_momentum(P, Vec2::Zero()).value());
    j["script_H"] = compare(rhombus_H_exact(l, alpha) / 2.0, script_H(P).value);
    j["supremum"] = pi * l * l / 8.0;
  } else if (name == "cylinder") {
    const double eps = option(o, "eps", 0.1);
    const auto c = cylinder_family(eps);
    const auto ref = cylinder_reference(eps);
    const double M = boundary_momentum(c, c.center).value;
    j["body"] = to_json(c);
    j["perimeter"] = compare(two_pi, measure_report(c).perimeter.value);
    j["momentum"] = compare(ref.total(), M);
    j["momentum_printed_formula"] = compare(ref.printed_total(), M);
    j["lateral"] = ref.lateral;
    j["caps"] = ref.caps;
    j["growth"] = json{{"direct", ref.growth()}, {"printed", ref.printed_growth()}};
  } else if (name == "perturbed-ball") {
    const int n = static_cast<int>(option(o, "n", 2)), k = static_cast<int>(option(o, "k", 2));
    const double t = option(o, "t", 0.01);
    const double pred = t * t * momentum_deficit_prediction(n, k);
    if (n == 2) {
      const auto b = harmonic_ball<2>(k, t, 0);
      j["body"] = to_json(b);
      j["momentum_deficit"] = compare(pred, momentum_deficit(b));
      j["F_deficit"] = compare(-F_ball(2) * pred / sphere_area(2), F_ball(2) - F_functional(b));
    } else if (n == 3) {
      const auto b = harmonic_ball<3>(k, t, 0);
      j["body"] = to_json(b);
      j["momentum_deficit"] = compare(pred, momentum_deficit(b));
      j["F_deficit"] = compare(-F_ball(3) * pred / sphere_area(3), F_ball(3) - F_functional(b));
    } else {
      throw ValidationError("perturbed-ball exists for n = 2 and 3");
    }
    j["note"] = "references are the second-order expansion t^2 * prediction";
  } else if (name == "ball") {
    const int n = static_cast<int>(option(o, "n", 2));
    const double r = option(o, "r", 1.0);
    json in{{"type", "ball"}, {"dim", n}, {"r", r}};
    const AnyBody b = body_from_json(in);
    j["body"] = in;
    const double w = unit_ball_volume(n);
    json W = json::array();
    const MeasureReport rep = std::visit([](const auto& x) { return measure_report(x); }, b);
    for (int i = 0; i <= n; ++i) W.push_back(compare(w * std::pow(r, n - i), rep.W[static_cast<std::size_t>(i)].value));
    j["W"] = W;
    j["report"] = compute_report(b, {});
  } else {
    throw UnknownExample("unknown example '" + name + "' (ellipse, rhombus, cylinder, perturbed-ball, ball)");
  }
  return j;
}

// ---------------------------------------------------------------------------
// Optimizer output

inline json to_json(const OptimizeResult& r, const OptimizeConfig& c) {
  json j{{"objective", to_string(c.objective)},
         {"n", c.n},
         {"K", c.K},
         {"seed", c.seed},
         {"value", r.value},
         {"best_value", r.best_value},
         {"iterations", r.iterations},
         {"termination", r.trace.termination},
         {"body", to_json(r.coeffs)},
         {"conclusive", false},
         {"note", "numerical evidence from a local ascent; not a proof of optimality"}};
  if (c.objective != Objective::F) j["beta"] = c.beta;
  if (c.mode != ConstraintMode::ScaleInvariant) j["perimeter"] = c.perimeter;
  return j;
}

}  // namespace isocurv
