// isocurv: compute functionals, run campaigns, sweeps, optimizations and
// worked examples.
//
// Exit codes: 0 ok, 1 usage, 2 invalid input, 3 inequality violations,
// 4 numerical failure.

#include "isocurv/isocurv.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace isocurv;

namespace {

constexpr int exit_usage = 1, exit_input = 2, exit_violation = 3, exit_numeric = 4;

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const NotConvex*>(&e)) return "NotConvex";
  if (dynamic_cast<const NonPositiveSupport*>(&e)) return "NonPositiveSupport";
  if (dynamic_cast<const ZeroMeanViolated*>(&e)) return "ZeroMeanViolated";
  if (dynamic_cast<const OutOfDomain*>(&e)) return "OutOfDomain";
  if (dynamic_cast<const OpenCurve*>(&e)) return "OpenCurve";
  if (dynamic_cast<const SelfIntersection*>(&e)) return "SelfIntersection";
  if (dynamic_cast<const PerturbationTooLarge*>(&e)) return "PerturbationTooLarge";
  if (dynamic_cast<const UnknownExample*>(&e)) return "UnknownExample";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const AliasingSuspected*>(&e)) return "AliasingSuspected";
  if (dynamic_cast<const MethodMismatch*>(&e)) return "MethodMismatch";
  if (dynamic_cast<const NonConverged*>(&e)) return "NonConverged";
  if (dynamic_cast<const GenerationFailed*>(&e)) return "GenerationFailed";
  if (dynamic_cast<const Stalled*>(&e)) return "Stalled";
  if (dynamic_cast<const PoorFit*>(&e)) return "PoorFit";
  if (dynamic_cast<const InputError*>(&e)) return "InputError";
  return "NumericError";
}

int fail(const std::exception& e, int code) {
  std::cerr << json{{"error", error_kind(e)}, {"message", e.what()}}.dump() << "\n";
  return code;
}

/// A file path, or inline JSON when the argument starts with '{'.
json load_json(const std::string& arg) {
  try {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw ValidationError("cannot open '" + arg + "'");
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-weighted isoperimetric functionals of convex bodies"};
  app.require_subcommand(1, 1);

  // compute
  auto* compute = app.add_subcommand("compute", "Report measures and functionals of one body");
  std::string body_arg;
  std::vector<double> betas;
  compute->add_option("--body", body_arg, "Body JSON file or inline JSON")->required();
  compute->add_option("--beta", betas, "Weights for G_beta and I_beta");

  // verify
  auto* verify = app.add_subcommand("verify", "Run an inequality campaign; exit 3 on violations");
  std::string config_arg, plot_path, csv_path, format = "csv";
  std::optional<int> samples_override, threads_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> tol_override;
  verify->add_option("--config", config_arg, "Campaign JSON file or inline JSON")->required();
  verify->add_option("--plot", plot_path, "Write an SVG scatter of deficit against asymmetry");
  verify->add_option("--format", format, "csv (records on stdout) or json (summary and records)")
      ->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--out", csv_path, "Also write the CSV records to this file");
  verify->add_option("--samples", samples_override, "Override the sample count");
  verify->add_option("--seed", seed_override, "Override the seed");
  verify->add_option("--tolerance", tol_override, "Override the absolute violation tolerance");
  verify->add_option("--threads", threads_override, "Worker threads");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate a family over parameters and fit c x^p");
  std::string family;
  std::vector<double> params;
  SweepOptions so;
  bool direct = false;
  sweep->add_option("--family", family, "ellipse, perturbed-ball, fuglede, cylinder or rhombus")->required();
  sweep->add_option("--param-list", params, "Comma-separated parameters")->required()->delimiter(',');
  sweep->add_option("--beta", so.beta, "Weight for the ellipse gap");
  sweep->add_option("--n", so.n, "Dimension for perturbed-ball and fuglede");
  sweep->add_option("--k", so.k, "Harmonic degree");
  sweep->add_option("--l", so.l, "Rhombus perimeter");
  sweep->add_option("--grid", so.grid, "Grid resolution");
  sweep->add_flag("--direct", direct, "Cylinder: compare with the directly integrated growth constant");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Projected gradient ascent over Fourier bodies");
  std::string objective, constraint;
  OptimizeConfig oc;
  std::string trace_path;
  int restarts = 1;
  bool certify = false;
  optimize->add_option("--objective", objective, "F, G_beta, neg_G_beta or script_H")->required();
  optimize->add_option("--n", oc.n, "Dimension");
  optimize->add_option("--K", oc.K, "Maximum harmonic degree");
  optimize->add_option("--seed", oc.seed, "Seed of the random start");
  optimize->add_option("--beta", oc.beta, "Weight for G_beta");
  optimize->add_option("--constraint", constraint, "perimeter, W or none")
      ->check(CLI::IsMember({"perimeter", "W", "none"}));
  optimize->add_option("--perimeter", oc.perimeter, "Perimeter (2 W_1) held fixed");
  optimize->add_option("--max-iter", oc.max_iter, "Iteration cap");
  optimize->add_option("--grid", oc.grid, "Grid resolution");
  optimize->add_option("--trace", trace_path, "Write the trace as JSON lines");
  optimize->add_option("--restarts", restarts, "Independent restarts with consecutive seeds");
  optimize->add_flag("--certify", certify, "Fit second-order coefficients at the ball for degrees 2..K");

  // examples
  auto* examples = app.add_subcommand("examples", "Family bodies with reference values");
  std::string example;
  ExampleOptions eo;
  examples->add_option("name", example, "ellipse, rhombus, cylinder, perturbed-ball or ball")->required();
  for (const char* key : {"eps", "beta", "l", "alpha", "n", "k", "t", "r"}) {
    examples->add_option_function<double>(std::string("--") + key, [&eo, key](double v) { eo[key] = v; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (compute->parsed()) {
      print(compute_report(body_from_json(load_json(body_arg)), betas));
      return 0;
    }
    if (verify->parsed()) {
      CampaignConfig cfg = campaign_from_json(load_json(config_arg));
      if (samples_override) cfg.samples = *samples_override;
      if (seed_override) cfg.seed = *seed_override;
      if (tol_override) cfg.tolerance = *tol_override;
      if (threads_override) cfg.threads = *threads_override;
      if (cfg.generator.grid == 0) cfg.generator.grid = grid_resolution_from_env(0);
      const CampaignResult res = run_inequality_campaign(cfg);
      const std::string csv = to_csv(res.records);
      if (format == "csv") {
        std::cout << csv;
        std::cerr << res.summary.dump() << "\n";
      } else {
        json recs = json::array();
        for (const auto& r : res.records) recs.push_back(to_json(r));
        print(json{{"summary", res.summary}, {"records", recs}});
      }
      if (!csv_path.empty()) write_file(csv_path, csv);
      if (!plot_path.empty()) {
        auto pts = res.scatter;
        if (pts.empty())
          for (std::size_t i = 0; i < res.records.size(); ++i) pts.push_back({double(i), res.records[i].deficit});
        write_file(plot_path, svg_scatter(pts, {cfg.inequality + " deficits", res.scatter.empty() ? "record" : "asymmetry",
                                                "deficit"}));
      }
      // Expected-negative records still count: the input broke the inequality.
      const bool any = std::any_of(res.records.begin(), res.records.end(),
                                   [&](const DeficitRecord& r) { return r.violated(cfg.tolerance); });
      return any ? exit_violation : 0;
    }
    if (sweep->parsed()) {
      so.printed = !direct;
      json j = to_json(sweep_and_fit(family, params, so));
      j["family"] = family;
      print(j);
      return 0;
    }
    if (optimize->parsed()) {
      oc.objective = parse_objective(objective);
      if (certify) {
        json rows = json::array();
        for (const auto& r : certify_local_max_ball(oc.objective, oc.n, oc.K, oc.beta)) rows.push_back(to_json(r));
        print(json{{"objective", objective}, {"n", oc.n}, {"beta", oc.beta}, {"rows", rows}});
        return 0;
      }
      if (constraint.empty()) constraint = oc.objective == Objective::F ? "none" : "perimeter";
      oc.mode = constraint == "none" ? ConstraintMode::ScaleInvariant
                : constraint == "W"  ? ConstraintMode::FixedW
                                     : ConstraintMode::FixedPerimeter;
      if (oc.grid == 0) oc.grid = grid_resolution_from_env(0);
      if (trace_path.empty()) oc.trace_every = 0;
      if (restarts < 1) throw ValidationError("restarts must be >= 1");
      const auto runs = extremize_restarts(oc, restarts);
      json out = json::array();
      for (std::size_t i = 0; i < runs.size(); ++i) {
        OptimizeConfig c = oc;
        c.seed = oc.seed + i;
        out.push_back(to_json(runs[i], c));
      }
      if (!trace_path.empty()) write_file(trace_path, runs.front().trace.to_jsonl());
      print(restarts == 1 ? out.front() : json{{"runs", out}});
      return 0;
    }
    if (examples->parsed()) {
      print(example_report(example, eo));
      return 0;
    }
  } catch (const InputError& e) {
    return fail(e, exit_input);
  } catch (const NumericError& e) {
    return fail(e, exit_numeric);
  }
  return exit_usage;
}
