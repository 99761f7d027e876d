// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--out DIR] [--threads T]
//
// Exit status is 0 when every selected criterion passes.

#include "isocurv/isocurv.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace isocurv;

namespace {

// Pinned tolerances.
constexpr double equality_rel_tol = 1e-9;
constexpr double ellipse_coeff_tol = 0.03;
constexpr double fit_r2_min = 0.999;
constexpr double rhombus_match_tol = 1e-12;
constexpr double rhombus_margin = 1e-6;  // times l^2
constexpr double rhombus_approach = 0.01;
constexpr double cylinder_rel_tol = 1e-10;
constexpr double cylinder_growth_tol = 0.02;
constexpr double certificate_tol = 1e-9;
constexpr double fuglede_tol = 0.02;
constexpr double stability_min = 0.25 - 0.01;
constexpr double restart_tol = 1e-5;
constexpr double restart_asymmetry = 1e-3;
constexpr double script_H_fraction = 0.95;

using Artifacts = std::map<std::string, std::string>;

struct Context {
  int threads = 0;
  Artifacts* artifacts = nullptr;
  void save(const std::string& name, const std::string& text) const {
    if (artifacts) (*artifacts)[name] = text;
  }
};

struct Outcome {
  Outcome(bool p = false, std::string d = {}, std::vector<std::string> a = {})
      : pass(p), detail(std::move(d)), analysis(std::move(a)) {}
  bool pass;
  std::string detail;
  std::vector<std::string> analysis;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string campaign_artifact(const CampaignResult& r) { return to_csv(r.records) + r.summary.dump() + "\n"; }

// ---------------------------------------------------------------------------

Outcome equality_cases(const Context&) {
  double worst = 0.0;
  std::string where;
  auto note = [&](double d, const std::string& what) {
    if (d > worst || where.empty()) worst = std::max(worst, d), where = what;
  };
  for (int n : {2, 3}) {
    for (const auto& [r, c] : {std::pair{1.0, 0.0}, std::pair{1.7, 0.3}}) {
      json spec{{"type", "ball"}, {"dim", n}, {"r", r}};
      spec["center"] = n == 2 ? json::array({c, -c}) : json::array({c, -c, 0.5 * c});
      const AnyBody body = body_from_json(spec);
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SupportBody<2>> || std::is_same_v<T, SupportBody<3>>) {
              constexpr int N = body_dim<T>::value;
              for (const auto& rec : check_curvature_bound(b, default_betas("curvature", N)))
                note(std::abs(rec.deficit) / std::abs(rec.rhs), rec.id + " n=" + std::to_string(N));
              note(rel(F_functional(b), F_ball(N)), "F n=" + std::to_string(N));
              if constexpr (N == 2) {
                const auto rep = measure_report(b);
                const double P = rep.perimeter.value;
                const double M = boundary_momentum(b, centroid(b)).value;
                note(std::abs(P * P * P / (4 * pi * pi) - M) / M, "momentum-bound n=2");
              }
            }
          },
          body);
    }
  }
  return {worst <= equality_rel_tol, "max relative deficit " + g(worst) + " (" + where + "), tol " + g(equality_rel_tol)};
}

Outcome ellipse_sharpness(const Context& ctx) {
  bool ok = true;
  std::string d;
  json all = json::array();
  for (double beta : {0.0, 1.0, 1.5}) {
    SweepOptions o;
    o.beta = beta;
    const FitResult f = sweep_and_fit("ellipse", {0.01, 0.02, 0.03, 0.04}, o);
    const bool pass = f.rel_error <= ellipse_coeff_tol && f.r2 >= fit_r2_min;
    ok = ok && pass;
    d += " beta=" + g(beta) + ": c=" + g(f.c) + " vs " + g(f.target_c) + " (" + fmt("%.2f%%", 100 * f.rel_error) +
         ", R2=" + fmt("%.6f", f.r2) + ")";
    json j = to_json(f);
    j["beta"] = beta;
    all.push_back(j);
  }
  ctx.save("ellipse_fits.json", all.dump(2));
  return {ok, "gap ~ c eps^2," + d};
}

Outcome rhombus_family(const Context& ctx) {
  const double l = 1.0, sup = pi * l * l / 8.0;
  double worst = 0.0, best = 0.0;
  std::string csv = "alpha,exact,atomic\n";
  for (int i = 0; i < 50; ++i) {
    const double alpha = 0.01 + (pi - 0.02) * i / 49.0;
    const Polygon2D P = rhombus(l, alpha);
    const double atomic = gauss_weighted_momentum(P, curvature_centroid(P)).value();
    const double exact = rhombus_H_exact(l, alpha);
    worst = std::max(worst, rel(atomic, exact));
    best = std::max(best, atomic);
    csv += detail::format_double(alpha) + "," + detail::format_double(exact) + "," + detail::format_double(atomic) + "\n";
  }
  const double at_small = rhombus_H_exact(l, 0.01);
  ctx.save("rhombus.csv", csv);
  const bool ok = worst <= rhombus_match_tol && best <= sup - rhombus_margin * l * l &&
                  at_small >= (1.0 - rhombus_approach) * sup;
  return {ok, "exact vs atomic max rel " + g(worst) + "; sup " + g(best) + " <= pi l^2/8 - 1e-6 l^2 = " +
                  g(sup - rhombus_margin * l * l) + "; alpha=0.01 reaches " + fmt("%.4f", at_small / sup) +
                  " of pi l^2/8"};
}

Outcome cylinder_divergence(const Context& ctx) {
  double worst_printed = 0.0, worst_direct = 0.0;
  json rows = json::array();
  for (double eps : {0.1, 0.05, 0.01}) {
    const auto ref = cylinder_reference(eps);
    const double M = boundary_momentum(cylinder_family(eps), Vec3::Zero()).value;
    worst_printed = std::max(worst_printed, rel(M, ref.printed_total()));
    worst_direct = std::max(worst_direct, rel(M, ref.total()));
    rows.push_back({{"eps", eps}, {"computed", M}, {"printed_total", ref.printed_total()}, {"direct_total", ref.total()}});
  }
  const double eps = 0.01;
  const double M = boundary_momentum(cylinder_family(eps), Vec3::Zero()).value;
  const auto ref = cylinder_reference(eps);
  const double growth_printed = rel(M, ref.printed_growth()), growth_direct = rel(M, ref.growth());
  ctx.save("cylinder.json", rows.dump(2));
  const bool ok = worst_printed <= cylinder_rel_tol && growth_printed <= cylinder_growth_tol;
  Outcome o{ok,
            "printed closed forms: max rel " + g(worst_printed) + " (tol " + g(cylinder_rel_tol) +
                "); M(0.01) / (2 pi/(3 eps^2)) - 1 = " + g(M / ref.printed_growth() - 1.0),
            {}};
  if (!ok) {
    o.analysis = {
        "the cylinder B_eps x [-L/2, L/2] has lateral integral 2 pi eps (eps^2 L + L^3/12), not 2 pi [eps^3 L + eps L^3/3];",
        "the printed L^3/3 integrates z^2 over [0, L] instead of [-L/2, L/2]",
        "each cap gives (pi/2) eps^4 + (pi/4) eps^2 L^2, not (pi/2)[eps^4 + L^2 eps^2]",
        "against the corrected forms the computed totals agree to " + g(worst_direct) +
            " and the growth is pi/(6 eps^2), matched to " + g(growth_direct) + " at eps = 0.01",
        "the divergence at fixed perimeter 2 pi still holds; only the constant is 4x smaller than printed",
    };
  }
  return o;
}

Outcome theorem_suite(const Context& ctx) {
  std::size_t violations = 0, records = 0;
  double cert = 0.0, min_def = std::numeric_limits<double>::infinity();
  struct Run {
    int n;
    BodyKind kind;
    const char* name;
  };
  for (const Run& run : {Run{2, BodyKind::Polygon, "n2_polygon"}, Run{2, BodyKind::Spectral, "n2_spectral"},
                         Run{3, BodyKind::Spectral, "n3_spectral"}}) {
    CampaignConfig c;
    c.inequality = "curvature";
    c.samples = 5000;
    c.seed = 2024 + static_cast<std::uint64_t>(run.n);
    c.generator.n = run.n;
    c.generator.kind = run.kind;
    c.threads = ctx.threads;
    const auto r = run_inequality_campaign(c);
    violations += r.violations();
    records += r.records.size();
    cert = std::max(cert, r.summary["max_certificate_error"].get<double>());
    if (!r.summary["min_deficit"].is_null()) min_def = std::min(min_def, r.summary["min_deficit"].get<double>());
    ctx.save(std::string("theorem_") + run.name + ".csv", campaign_artifact(r));
  }
  return {violations == 0 && cert <= certificate_tol,
          std::to_string(records) + " records, " + std::to_string(violations) + " violations, min deficit " + g(min_def) +
              ", max |certificate - n (lhs - rhs)| " + g(cert)};
}

Outcome momentum_bound(const Context& ctx) {
  std::size_t violations = 0, records = 0;
  for (const auto& [kind, samples, name] :
       {std::tuple{BodyKind::Polygon, 1000, "polygons"}, std::tuple{BodyKind::Spectral, 200, "smooth"}}) {
    CampaignConfig c;
    c.inequality = "momentum-bound";
    c.samples = samples;
    c.seed = 99;
    c.generator.kind = kind;
    c.threads = ctx.threads;
    const auto r = run_inequality_campaign(c);
    violations += r.violations();
    records += r.records.size();
    ctx.save(std::string("momentum_") + name + ".csv", campaign_artifact(r));
  }
  auto square = [](double x0) {
    return ClosedCurve{{Vec2(x0, 0), Vec2(x0 + 1, 0), Vec2(x0 + 1, 1), Vec2(x0, 1), Vec2(x0, 0)}, true};
  };
  const DeficitRecord split = check_momentum_bound({square(0.0), square(3.0)});
  ctx.save("momentum_decomposable.csv", to_csv({split}));
  const bool flagged = split.expected_negative && split.violated();
  return {violations == 0 && flagged,
          std::to_string(records) + " records, " + std::to_string(violations) +
              " violations; two squares: deficit " + g(split.deficit) +
              (flagged ? " flagged expected-negative" : " NOT flagged")};
}

Outcome fuglede_expansion(const Context& ctx) {
  bool ok = true;
  double worst = 0.0;
  json all = json::array();
  const std::vector<double> ts{0.0025, 0.005, 0.0075, 0.01};
  for (int n : {2, 3}) {
    for (int k : {2, 3, 4}) {
      SweepOptions o;
      o.n = n;
      o.k = k;
      const FitResult f = sweep_and_fit("fuglede", ts, o);
      const double e = rel(f.c_fixed, f.target_c);
      worst = std::max(worst, e);
      ok = ok && e <= fuglede_tol;
      json j = to_json(f);
      j["n"] = n;
      j["k"] = k;
      all.push_back(j);
    }
  }
  double stability = std::numeric_limits<double>::infinity(), slope = 0.0;
  for (int k : {2, 3, 4}) {
    SweepOptions o;
    o.n = 2;
    o.k = k;
    const FitResult f = sweep_and_fit("perturbed-ball", ts, o);
    if (k == 2) slope = f.c_fixed;
    stability = std::min(stability, -f.c_fixed / sobolev_norms(unit_harmonic(2, k)).grad_squared);
    json j = to_json(f);
    j["n"] = 2;
    j["k"] = k;
    j["momentum"] = true;
    all.push_back(j);
  }
  ctx.save("fuglede_fits.json", all.dump(2));
  const bool slope_ok = rel(slope, -pi) <= fuglede_tol;
  return {ok && slope_ok && stability >= stability_min,
          "F-deficit t^2 coefficients max rel error " + fmt("%.3f%%", 100 * worst) + "; n=2 k=2 momentum slope " +
              g(slope) + " vs -pi; implied stability constant " + g(stability) + " (>= " + g(stability_min) + ")"};
}

Outcome quantitative(const Context& ctx) {
  bool ok = true;
  std::string d;
  for (int n : {2, 3}) {
    CampaignConfig c;
    c.inequality = "quantitative";
    c.samples = 500;
    c.seed = 7 + static_cast<std::uint64_t>(n);
    c.generator.n = n;
    c.generator.decay = 0.15;
    c.threads = ctx.threads;
    const auto r = run_inequality_campaign(c);
    ctx.save("quantitative_n" + std::to_string(n) + ".csv", campaign_artifact(r));
    const auto& s = r.summary;
    auto positive = [](const json& v) { return !v.is_null() && v.get<double>() > 0.0; };
    const bool pass = r.violations() == 0 && positive(s["inf_ratio_curvature"]) && positive(s["inf_ratio_momentum"]) &&
                      (n != 2 || positive(s["inf_ratio_planar"]));
    ok = ok && pass;
    d += " n=" + std::to_string(n) + ": inf I/g^{5/2} " + g(s["inf_ratio_curvature"].get<double>()) +
         ", inf (F(B)-F)/g " + g(s["inf_ratio_momentum"].get<double>()) + ";";
  }
  return {ok, "empirical infima (positivity only)" + d};
}

Outcome optimizer(const Context& ctx) {
  OptimizeConfig c;
  c.trace_every = 0;
  const auto runs = extremize_restarts(c, 10);
  double worst = 0.0, worst_asym = 0.0;
  json out = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    worst = std::max(worst, std::abs(runs[i].value - F_ball(2)));
    const SupportBody<2> b(runs[i].coeffs, DirectionGrid<2>(256));
    worst_asym = std::max(worst_asym, asymmetry(b).value);
    OptimizeConfig ci = c;
    ci.seed = c.seed + i;
    out.push_back(to_json(runs[i], ci));
  }
  OptimizeConfig h;
  h.objective = Objective::script_H;
  h.mode = ConstraintMode::FixedPerimeter;
  h.perimeter = 1.0;
  h.K = 64;
  h.grid = 1024;
  h.max_iter = 600;
  h.trace_every = 0;
  h.throw_on_stall = false;
  const auto r = extremize(h);
  const double l = h.perimeter, ratio = 2.0 * r.best_value / (pi * l * l / 8.0);
  out.push_back(to_json(r, h));
  ctx.save("optimizer.json", out.dump(2));
  return {worst <= restart_tol && worst_asym < restart_asymmetry && ratio > script_H_fraction,
          "F restarts: max |F - 1/(4 pi^2)| " + g(worst) + ", max asymmetry " + g(worst_asym) +
              "; script_H K=64: Gauss momentum / (pi l^2/8) = " + fmt("%.4f", ratio) + " after " +
              std::to_string(r.iterations) + " iterations (" + r.trace.termination + ")"};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

const std::vector<std::pair<const char*, Outcome (*)(const Context&)>> producers{
    {"ellipse sharpness", ellipse_sharpness}, {"rhombus family", rhombus_family},
    {"cylinder divergence", cylinder_divergence}, {"curvature theorem suite", theorem_suite},
    {"boundary-momentum bound", momentum_bound}, {"Fuglede expansion", fuglede_expansion},
    {"quantitative theorems", quantitative}, {"optimizer", optimizer}};

Outcome determinism(const Context&) {
  Artifacts a, b;
  for (const auto& [name, f] : producers) f(Context{1, &a});
  for (const auto& [name, f] : producers) f(Context{0, &b});
  std::size_t same = 0, bytes = 0;
  std::string diff;
  for (const auto& [k, v] : a) {
    bytes += v.size();
    if (b.count(k) && b.at(k) == v) {
      ++same;
    } else {
      diff += " " + k;
    }
  }
  std::uint64_t h = 0;
  for (const auto& [k, v] : a) h ^= fnv1a(k + v);
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return {same == a.size() && a.size() == b.size(),
          std::to_string(same) + "/" + std::to_string(a.size()) + " artifacts byte-identical across runs with 1 and " +
              "all threads (" + std::to_string(bytes) + " bytes, digest " + hex + ")" +
              (diff.empty() ? "" : "; differ:" + diff)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0, threads = 0;
  std::string out_dir;
  app.add_option("--only", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--out", out_dir, "Write the CSV/JSON artifacts here");
  app.add_option("--threads", threads, "Campaign threads (0: hardware)");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
      {"equality cases", equality_cases}};
  for (const auto& [name, f] : producers) criteria.push_back({name, f});
  criteria.push_back({"determinism", determinism});

  Artifacts artifacts;
  const Context ctx{threads, &artifacts};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only && only != id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": " << o.detail
              << " [" << fmt("%.1f", secs) << " s]\n";
    for (const auto& line : o.analysis) std::cout << "  analysis: " << line << "\n";
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [k, v] : artifacts) std::ofstream(std::filesystem::path(out_dir) / k) << v;
  }
  return all ? 0 : 1;
}
