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

#include "paamp/report.hpp"

#include <cmath>

#include "json.hpp"
#include "paamp/error.hpp"
#include "paamp/pairs.hpp"

namespace paamp {
namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinity; unbounded figures become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json transition_json(const Transition& t) {
  return Json{{"agent", t.agent}, {"t", t.t}, {"from", t.from}, {"to", t.to}};
}

}  // namespace

std::string plan_to_json(const Scenario& scenario, const PlanResult& result,
                         const ReportOptions& options) {
  Json doc;
  Json agents = Json::array();
  for (const Trajectory& traj : result.trajectories) {
    Json a{{"id", traj.agent}, {"states", traj.states}};
    for (const SequencePlan& p : result.plans) {
      if (p.agent == traj.agent) a["segments"] = p.segments;
    }
    agents.push_back(std::move(a));
  }
  doc["agents"] = std::move(agents);

  Json m = Json::object();
  if (!result.trajectories.empty()) {
    const TrajectoryMetrics tm =
        metrics(result.trajectories, scenario.params.alpha);
    const ValidationReport audit =
        validate(scenario, result.plans, result.trajectories);
    m["total_objective"] = tm.total_objective;
    Json per = Json::array();
    for (const AgentMetrics& a : tm.agents) {
      per.push_back({{"id", a.agent},
                     {"manhattan", a.manhattan},
                     {"max_acceleration", a.max_acceleration},
                     {"objective", a.objective}});
    }
    m["agents"] = std::move(per);
    m["min_separation"] = audit.min_separation;
    m["min_clearance"] = audit.min_clearance;
    m["valid"] = audit.passed();
  }
  doc["metrics"] = std::move(m);

  Json d;
  d["status"] = to_string(result.status);
  d["mode"] = options.mode;
  d["seed"] = options.seed;
  d["solver_status"] = milp::to_string(result.solver_status);
  d["objective"] = number(result.objective);
  d["best_bound"] = number(result.best_bound);
  d["iterations"] = result.iterations();
  d["binaries"] = result.binaries;
  d["collision_binaries"] = result.collision_binaries;
  d["obstacle_binaries"] = result.obstacle_binaries;
  d["rho"] = result.rho;
  std::int64_t nodes = 0;
  for (const IterationRecord& h : result.history) nodes += h.nodes;
  d["nodes"] = nodes;
  if (!result.pairs.steps.empty()) {
    std::vector<int> ids;
    for (const AgentSpec& a : scenario.agents) ids.push_back(a.id);
    const ContactStats c = contact_stats(result.pairs, ids);
    d["contacts"] = {{"per_agent", c.per_agent},
                     {"mean_per_agent", c.mean_per_agent},
                     {"per_agent_per_step", c.per_agent_per_step},
                     {"total_pairs", c.total_pairs},
                     {"pairs_per_step", c.pairs_per_step}};
  }
  Json banned = Json::array();
  for (const Transition& t : result.blacklist) {
    banned.push_back(transition_json(t));
  }
  d["blacklist"] = std::move(banned);
  Json history = Json::array();
  for (const IterationRecord& h : result.history) {
    Json rec{{"choice", h.choice},
             {"solver_status", milp::to_string(h.solver_status)},
             {"objective", number(h.objective)},
             {"nodes", h.nodes},
             {"binaries", h.binaries},
             {"rho", h.rho}};
    if (h.refined) rec["banned"] = transition_json(h.banned);
    if (options.timing) rec["solve_seconds"] = h.solve_seconds;
    history.push_back(std::move(rec));
  }
  d["history"] = std::move(history);
  if (options.timing) {
    d["solve_seconds"] = result.solve_seconds;
    d["wall_seconds"] = result.wall_seconds;
  }
  d["message"] = result.message;
  doc["diagnostics"] = std::move(d);
  return doc.dump(2) + "\n";
}

PlanFile parse_plan_json(const std::string& text) {
  PlanFile file;
  try {
    const Json doc = Json::parse(text);
    for (const Json& a : doc.at("agents")) {
      Trajectory traj;
      traj.agent = a.at("id").get<int>();
      traj.states = a.at("states").get<std::vector<Point>>();
      file.trajectories.push_back(traj);
      if (a.contains("segments")) {
        SequencePlan p;
        p.agent = traj.agent;
        p.segments = a.at("segments").get<std::vector<int>>();
        file.plans.push_back(std::move(p));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("plan document: ") + e.what());
  }
  if (!file.plans.empty() && file.plans.size() != file.trajectories.size()) {
    throw Error(ErrorCode::kParse, "segments given for only some agents");
  }
  return file;
}

}  // namespace paamp
