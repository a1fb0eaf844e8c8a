// Copyright 2026 The paamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paamp/analysis.hpp"
#include "paamp/benchmark.hpp"
#include "paamp/error.hpp"
#include "paamp/milp/lp_writer.hpp"
#include "paamp/pairs.hpp"
#include "paamp/planner.hpp"
#include "paamp/report.hpp"
#include "paamp/scenario.hpp"

namespace {

using namespace paamp;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string scenario_path;
  std::string builtin;
  std::optional<int> T;
  std::optional<double> v_max;
  std::optional<double> d_min;
  std::optional<int> L;
  std::optional<double> d_sep;
  std::optional<double> big_m;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<double> gap;
  std::optional<int> k_max;
  std::optional<int> k_candidates;
  std::optional<double> timeout;
  std::optional<double> adjacency_tol;
  bool all_pairs = false;
  std::string mode = "paamp";
  std::uint64_t seed = 0;
  std::string out_dir;
  int verbosity = 0;
  bool timing = false;
  std::string plan_path;
  std::vector<int> horizons{12, 20};
  bool no_naive = false;
  double naive_limit = 300.0;
  std::string format = "csv";
  double probe_d_min = 6.0;
  bool no_probe = false;
  bool svg = false;
};

void add_scenario_options(CLI::App* app, Options& o) {
  auto* file = app->add_option("--scenario", o.scenario_path,
                               "Scenario JSON file")
                   ->check(CLI::ExistingFile);
  auto* builtin = app->add_option("--builtin", o.builtin, "Built-in scenario")
                      ->check(CLI::IsMember({"crossing"}));
  file->excludes(builtin);
  builtin->excludes(file);
  app->add_option("--T", o.T, "Horizon (segments)")->check(CLI::PositiveNumber);
  app->add_option("--v-max", o.v_max, "Per-step infinity-norm speed bound");
  app->add_option("--d-min", o.d_min,
                  "Minimum separation; d_sep follows unless given");
  app->add_option("--L", o.L, "Separation directions")->check(CLI::Range(3, 64));
  app->add_option("--d-sep", o.d_sep, "Separation enforced along directions");
  app->add_option("--big-m", o.big_m, "Big-M constant");
  app->add_option("--alpha", o.alpha, "Acceleration weight");
  app->add_option("--epsilon", o.epsilon, "Obstacle clearance");
  app->add_option("--gap", o.gap, "Absolute optimality gap");
  app->add_option("--k-max", o.k_max, "Maximum planning iterations");
  app->add_option("--k-candidates", o.k_candidates,
                  "Region sequences per agent and iteration");
  app->add_option("--timeout", o.timeout, "Wall-clock limit in seconds");
  app->add_option("--adjacency-tol", o.adjacency_tol,
                  "Region adjacency tolerance");
  app->add_flag("--all-pairs", o.all_pairs,
                "Enforce separation for every pair at every step");
  app->add_option("-o,--out", o.out_dir,
                  "Output directory (stdout when omitted)");
  app->add_flag("-v,--verbose", o.verbosity, "Log progress to stderr");
}

void add_mode_option(CLI::App* app, Options& o) {
  app->add_option("--mode", o.mode, "Transcription")
      ->check(CLI::IsMember({"paamp", "naive"}))
      ->capture_default_str();
}

Scenario load(const Options& o) {
  if (o.scenario_path.empty() && o.builtin.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                "one of --scenario or --builtin is required");
  }
  Scenario s = o.scenario_path.empty() ? builtin_crossing_scenario()
                                       : load_scenario(o.scenario_path);
  PlanningParams& p = s.params;
  if (o.T) p.T = *o.T;
  if (o.v_max) p.v_max = *o.v_max;
  if (o.d_min) p.d_min = *o.d_min;
  if (o.L) p.L = *o.L;
  p.d_sep = o.d_sep ? *o.d_sep : (o.d_min ? *o.d_min : p.d_sep);
  if (o.big_m) p.big_m = *o.big_m;
  if (o.alpha) p.alpha = *o.alpha;
  if (o.epsilon) p.epsilon = *o.epsilon;
  if (o.gap) p.gap = *o.gap;
  if (o.k_max) p.k_max = *o.k_max;
  if (o.k_candidates) p.k_candidates = *o.k_candidates;
  if (o.timeout) p.timeout_seconds = *o.timeout;
  if (o.adjacency_tol) p.adjacency_tol = *o.adjacency_tol;
  if (o.all_pairs) p.all_pairs = true;
  for (const std::string& w : s.validate()) {
    if (o.verbosity > 0) std::cerr << "warning: " << w << '\n';
  }
  return s;
}

void emit(const Options& o, const std::string& file, const std::string& text) {
  if (o.out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(o.out_dir);
  const std::filesystem::path path = std::filesystem::path(o.out_dir) / file;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  if (o.verbosity > 0) std::cerr << "wrote " << path.string() << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

PlanResult solve(const Options& o, const Scenario& s) {
  PlanResult r = o.mode == "naive" ? plan_naive(s) : plan(s);
  if (o.verbosity > 0) {
    std::cerr << "status " << to_string(r.status) << ", "
              << r.iterations() << " iteration(s), objective " << r.objective
              << ", " << r.collision_binaries << " collision binaries\n";
  }
  if (o.verbosity > 1) {
    for (const IterationRecord& h : r.history) {
      std::cerr << "  solve " << milp::to_string(h.solver_status) << " obj "
                << h.objective << " nodes " << h.nodes << " binaries "
                << h.binaries << '\n';
      if (h.refined) {
        std::cerr << "    ban agent " << h.banned.agent << " t " << h.banned.t
                  << ' ' << h.banned.from << "->" << h.banned.to << '\n';
      }
    }
  }
  if (!r.message.empty() && o.verbosity > 0) std::cerr << r.message << '\n';
  return r;
}

int run_plan(const Options& o) {
  const Scenario s = load(o);
  const PlanResult r = solve(o, s);
  ReportOptions report;
  report.mode = o.mode;
  report.seed = o.seed;
  report.timing = o.timing;
  emit(o, "plan.json", plan_to_json(s, r, report));
  if (o.svg) emit(o, "plan.svg", render_svg(s, r.trajectories));
  return r.status == PlanStatus::kSuccess ? kExitOk : kExitFailed;
}

int run_benchmark_cmd(const Options& o) {
  const Scenario s = load(o);
  BenchmarkOptions b;
  b.horizons = o.horizons;
  b.naive = !o.no_naive;
  b.naive_limit_seconds = o.naive_limit;
  const std::vector<BenchmarkRow> rows = run_benchmark(s, b);
  std::string text = to_text(rows);
  if (!o.no_probe) {
    const InfeasibilityProbe p = probe_infeasibility(s, o.probe_d_min);
    std::ostringstream line;
    line << "\ninfeasibility probe at T=" << s.params.T
         << ": d_min=" << p.d_min << " proven=" << (p.proven ? "yes" : "no")
         << " feasible_s=" << p.feasible_seconds
         << " infeasible_s=" << p.infeasible_seconds << '\n';
    text += line.str();
  }
  if (o.out_dir.empty()) {
    std::cout << (o.format == "csv" ? to_csv(rows) : text);
  } else {
    emit(o, "benchmark.csv", to_csv(rows));
    emit(o, "benchmark.txt", text);
  }
  return kExitOk;
}

int run_validate(const Options& o) {
  const Scenario s = load(o);
  const PlanFile file = parse_plan_json(read_file(o.plan_path));
  const ValidationReport report = validate(s, file.plans, file.trajectories);
  for (const Violation& v : report.violations) {
    std::cout << to_string(v.kind) << " step " << v.step << " agents";
    for (int a : v.agents) std::cout << ' ' << a;
    std::cout << " margin " << v.margin << ": " << v.detail << '\n';
  }
  std::cout << (report.passed() ? "valid" : "invalid") << " min_separation "
            << report.min_separation << " min_clearance "
            << report.min_clearance << '\n';
  return report.passed() ? kExitOk : kExitUsage;
}

int run_export(const Options& o) {
  const Scenario s = load(o);
  const Transcription tr = [&] {
    if (o.mode == "naive") return build_naive_model(s);
    const std::vector<SequencePlan> plans = initial_plans(s);
    return build_paamp_model(s, plans,
                             relevant_pairs(plans, build_graph(s)));
  }();
  std::ostringstream text;
  milp::write_lp(tr.model, text);
  emit(o, "model.lp", text.str());
  return kExitOk;
}

int run_render(const Options& o) {
  const Scenario s = load(o);
  std::vector<Trajectory> trajs;
  int code = kExitOk;
  if (!o.plan_path.empty()) {
    trajs = parse_plan_json(read_file(o.plan_path)).trajectories;
  } else {
    const PlanResult r = solve(o, s);
    trajs = r.trajectories;
    if (r.status != PlanStatus::kSuccess) code = kExitFailed;
  }
  emit(o, "plan.svg", render_svg(s, trajs));
  return code;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kInfeasibleGeometry:
    case ErrorCode::kParse:
    case ErrorCode::kValidation:
    case ErrorCode::kSequenceTooLong:
    case ErrorCode::kIo:
      return kExitUsage;
    default:
      return kExitFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Multi-agent trajectory planning over convex region sequences",
               "paamp"};
  app.require_subcommand(1);

  auto* plan_cmd = app.add_subcommand("plan", "Plan trajectories, emit JSON");
  add_scenario_options(plan_cmd, o);
  add_mode_option(plan_cmd, o);
  plan_cmd->add_option("--seed", o.seed,
                       "Recorded in diagnostics; planning is deterministic");
  plan_cmd->add_flag("--timing", o.timing,
                     "Include wall-clock figures in diagnostics");
  plan_cmd->add_flag("--svg", o.svg, "Also write plan.svg");

  auto* bench_cmd =
      app.add_subcommand("benchmark", "Compare sequence and naive models");
  add_scenario_options(bench_cmd, o);
  bench_cmd->add_option("--horizons", o.horizons, "Horizons to run")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_flag("--no-naive", o.no_naive, "Skip the naive model");
  bench_cmd->add_option("--naive-limit", o.naive_limit,
                        "Seconds per naive solve")
      ->capture_default_str();
  bench_cmd->add_option("--format", o.format,
                        "Table format on stdout; --out writes both")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();
  bench_cmd->add_option("--probe-d-min", o.probe_d_min,
                        "Separation used by the infeasibility probe")
      ->capture_default_str();
  bench_cmd->add_flag("--no-probe", o.no_probe,
                      "Skip the infeasibility probe");

  auto* validate_cmd =
      app.add_subcommand("validate", "Audit a plan file against a scenario");
  add_scenario_options(validate_cmd, o);
  validate_cmd->add_option("--plan", o.plan_path, "Plan JSON")
      ->required()
      ->check(CLI::ExistingFile);

  auto* export_cmd =
      app.add_subcommand("export-lp", "Write the first MILP in LP format");
  add_scenario_options(export_cmd, o);
  add_mode_option(export_cmd, o);

  auto* render_cmd = app.add_subcommand("render", "Draw a plan as SVG");
  add_scenario_options(render_cmd, o);
  add_mode_option(render_cmd, o);
  render_cmd->add_option("--plan", o.plan_path,
                         "Plan JSON; plans the scenario when omitted")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan_cmd) return run_plan(o);
    if (*bench_cmd) return run_benchmark_cmd(o);
    if (*validate_cmd) return run_validate(o);
    if (*export_cmd) return run_export(o);
    return run_render(o);
  } catch (const Error& e) {
    std::cerr << "paamp: " << e.what() << '\n';
    return exit_code(e);
  }
}
