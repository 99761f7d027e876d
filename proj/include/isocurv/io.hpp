#pragma once

// JSON body schema, canonical serialization and fingerprints.
//
//   {"type":"support","dim":2,"a0":1.0,"cos":[...],"sin":[...]}
//   {"type":"support","dim":3,"a0":1.0,"coeffs":[[k,m,c],...]}
//   {"type":"polygon","vertices":[[x,y],...]}
//   {"type":"star","rho":[...]}
//   {"type":"cylinder","eps":e,"L":l}
//   {"type":"ball","dim":n,"r":r,"center":[...]}
//   {"type":"ellipse","a":a,"b":b}
//   {"type":"transformed","base":{...},"translation":[...],"scale":s}
//
// Support bodies accept an optional "grid" (nodes for n=2, latitudes for n=3).

#include "isocurv/families.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace isocurv {

namespace detail {

inline double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ValidationError(std::string("missing numeric field '") + key + "'");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ValidationError(std::string("field '") + key + "' is not finite");
  return v;
}

inline std::vector<double> numbers(const json& j, const char* key, bool required = true) {
  std::vector<double> out;
  if (!j.contains(key)) {
    if (required) throw ValidationError(std::string("missing array field '") + key + "'");
    return out;
  }
  if (!j.at(key).is_array()) throw ValidationError(std::string("field '") + key + "' must be an array");
  for (const auto& v : j.at(key)) {
    if (!v.is_number() || !std::isfinite(v.get<double>()))
      throw ValidationError(std::string("field '") + key + "' must hold finite numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

template <int N>
Vec<N> point(const json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != N) throw ValidationError("expected a point with " + std::to_string(N) + " coordinates");
  Vec<N> p;
  for (int i = 0; i < N; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) throw ValidationError("point coordinate must be a number");
    p[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return p;
}

inline int grid_param(const json& j, int fallback) {
  if (j.contains("grid")) {
    if (!j.at("grid").is_number_integer()) throw ValidationError("'grid' must be an integer");
    return j.at("grid").get<int>();
  }
  return grid_resolution_from_env(fallback);
}

}  // namespace detail

inline AnyBody body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ValidationError("body must be an object with a string 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "support") {
    const int dim = j.value("dim", 2);
    if (dim == 2) {
      FourierCoeffs a;
      a.a0 = detail::number(j, "a0");
      a.cos = detail::numbers(j, "cos", false);
      a.sin = detail::numbers(j, "sin", false);
      a.resize(a.degree());
      return SupportBody<2>(a, DirectionGrid<2>(detail::grid_param(j, default_circle_nodes)));
    }
    if (dim == 3) {
      int K = 0;
      const json terms = j.value("coeffs", json::array());
      for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3) throw ValidationError("3-D coefficients are [k, m, value] triples");
        K = std::max(K, t[0].get<int>());
      }
      SphericalCoeffs a(K);
      a.at(0, 0) = detail::number(j, "a0");
      for (const auto& t : terms) {
        const int k = t[0].get<int>(), m = t[1].get<int>();
        if (k < 0 || std::abs(m) > k) throw ValidationError("invalid harmonic index");
        if (k == 0) throw ValidationError("the constant term is given by 'a0'");
        a.at(k, m) = t[2].get<double>();
      }
      return SupportBody<3>(a, DirectionGrid<3>(detail::grid_param(j, default_sphere_latitudes)));
    }
    throw ValidationError("support bodies exist for dim 2 and 3");
  }
  if (type == "polygon") {
    if (!j.contains("vertices") || !j.at("vertices").is_array()) throw ValidationError("polygon needs 'vertices'");
    std::vector<Vec2> v;
    for (const auto& p : j.at("vertices")) v.push_back(detail::point<2>(p));
    return Polygon2D(std::move(v));
  }
  if (type == "star") return StarBody2D(detail::numbers(j, "rho"));
  if (type == "cylinder") {
    const Vec3 c = j.contains("center") ? detail::point<3>(j.at("center")) : Vec3::Zero();
    return Cylinder3D(detail::number(j, "eps"), detail::number(j, "L"), c);
  }
  if (type == "ball") {
    const int dim = j.value("dim", 2);
    const double r = detail::number(j, "r");
    if (!(r > 0.0)) throw ValidationError("ball radius must be positive");
    if (dim == 2) {
      const Vec2 c = j.contains("center") ? detail::point<2>(j.at("center")) : Vec2::Zero();
      return SupportBody<2>(ball_coeffs(r, c), DirectionGrid<2>(detail::grid_param(j, default_circle_nodes)),
                            {false, convexity_tolerance});
    }
    if (dim == 3) {
      const Vec3 c = j.contains("center") ? detail::point<3>(j.at("center")) : Vec3::Zero();
      return SupportBody<3>(ball_coeffs(r, c), DirectionGrid<3>(detail::grid_param(j, default_sphere_latitudes)),
                            {false, convexity_tolerance});
    }
    throw ValidationError("balls exist for dim 2 and 3");
  }
  if (type == "ellipse") {
    return ellipse_body(detail::number(j, "a"), detail::number(j, "b"), detail::grid_param(j, default_circle_nodes));
  }
  if (type == "transformed") {
    if (!j.contains("base")) throw ValidationError("transformed body needs 'base'");
    const AnyBody base = body_from_json(j.at("base"));
    const double s = j.value("scale", 1.0);
    const json x0 = j.value("translation", json::array());
    return std::visit(
        [&](const auto& b) -> AnyBody {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, StarBody2D>) {
            throw ValidationError("star bodies cannot be transformed");
          } else {
            constexpr int n = std::is_same_v<T, SupportBody<3>> || std::is_same_v<T, Cylinder3D> ? 3 : 2;
            return transform(b, detail::point<n>(x0), s);
          }
        },
        base);
  }
  throw ValidationError("unknown body type '" + type + "'");
}

inline AnyBody body_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open body file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return body_from_json(j);
}

inline json to_json(const FourierCoeffs& a) {
  return json{{"type", "support"}, {"dim", 2}, {"a0", a.a0}, {"cos", a.cos}, {"sin", a.sin}};
}

inline json to_json(const SphericalCoeffs& a) {
  json terms = json::array();
  for (int k = 1; k <= a.degree; ++k)
    for (int m = -k; m <= k; ++m)
      if (a.at(k, m) != 0.0) terms.push_back({k, m, a.at(k, m)});
  return json{{"type", "support"}, {"dim", 3}, {"a0", a.at(0, 0)}, {"coeffs", terms}};
}

template <int N>
json to_json(const SupportBody<N>& b) {
  json j = b.spectral() ? to_json(b.coeffs()) : b.descriptor();
  if constexpr (N == 2) {
    j["grid"] = b.grid().size();
  } else {
    j["grid"] = b.grid().latitudes();
  }
  return j;
}

inline json to_json(const Polygon2D& P) {
  json v = json::array();
  for (const auto& p : P.vertices()) v.push_back({p.x(), p.y()});
  return json{{"type", "polygon"}, {"vertices", v}};
}

inline json to_json(const StarBody2D& s) { return json{{"type", "star"}, {"rho", s.rho()}}; }

inline json to_json(const Cylinder3D& c) {
  json j{{"type", "cylinder"}, {"eps", c.eps}, {"L", c.L}};
  if (c.center != Vec3::Zero()) j["center"] = {c.center.x(), c.center.y(), c.center.z()};
  return j;
}

inline json to_json(const AnyBody& b) {
  return std::visit([](const auto& x) { return to_json(x); }, b);
}

template <int N>
json to_json(const NearlySphericalBody<N>& b) {
  return json{{"type", "nearly-spherical"}, {"dim", N}, {"r", b.radius()}, {"v", b.perturbation().coeffs}};
}

/// FNV-1a of the canonical (sorted-key) JSON text, as 16 hex digits.
template <class B>
std::string fingerprint(const B& body) {
  return hex64(fnv1a(to_json(body).dump()));
}

}  // namespace isocurv
