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

#include "paamp/planner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "paamp/error.hpp"
#include "paamp/pairs.hpp"

namespace paamp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const SequencePlan& plan_of(std::span<const SequencePlan> plans, int agent) {
  for (const SequencePlan& p : plans) {
    if (p.agent == agent) return p;
  }
  throw Error(ErrorCode::kInternalConsistency,
              "no plan for agent " + std::to_string(agent));
}

Transition transition_at(const SequencePlan& p, int t) {
  const int T = static_cast<int>(p.segments.size());
  t = std::clamp(t, 1, std::max(1, T - 1));
  if (T < 2) return {p.agent, t, p.segments[0], p.segments[0]};
  return {p.agent, t, p.segments[t - 1], p.segments[t]};
}

// Midpoint transition of the agent with the longest region path.
Transition fallback_transition(std::span<const SequencePlan> plans) {
  const SequencePlan* longest = &plans.front();
  for (const SequencePlan& p : plans) {
    const auto a = p.path().size();
    const auto b = longest->path().size();
    if (a > b || (a == b && p.agent < longest->agent)) longest = &p;
  }
  return transition_at(*longest,
                       static_cast<int>(longest->segments.size()) / 2);
}

struct Candidate {
  SequencePlan plan;
  double cost = 0.0;
};

// Cheapest untried joint choice. Lists are sorted by cost; combinations are
// explored best-first by total cost, ties by index tuple.
std::optional<std::vector<int>> next_joint(
    const std::vector<std::vector<Candidate>>& lists,
    const std::set<std::vector<std::vector<int>>>& tried) {
  using Entry = std::pair<double, std::vector<int>>;
  auto total = [&](const std::vector<int>& c) {
    double s = 0.0;
    for (std::size_t a = 0; a < c.size(); ++a) s += lists[a][c[a]].cost;
    return s;
  };
  auto worse = [](const Entry& x, const Entry& y) {
    if (std::abs(x.first - y.first) > 1e-9) return x.first > y.first;
    return x.second > y.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
  std::set<std::vector<int>> seen;
  std::vector<int> first(lists.size(), 0);
  queue.push({total(first), first});
  seen.insert(first);
  while (!queue.empty()) {
    const std::vector<int> choice = queue.top().second;
    queue.pop();
    std::vector<std::vector<int>> key;
    for (std::size_t a = 0; a < choice.size(); ++a) {
      key.push_back(lists[a][choice[a]].plan.segments);
    }
    if (!tried.contains(key)) return choice;
    for (std::size_t a = 0; a < choice.size(); ++a) {
      if (choice[a] + 1 >= static_cast<int>(lists[a].size())) continue;
      std::vector<int> next = choice;
      ++next[a];
      if (seen.insert(next).second) queue.push({total(next), next});
    }
  }
  return std::nullopt;
}

using SoloCache = std::map<std::pair<int, std::vector<int>>, double>;

// Per-agent candidates with finite solo cost, cheapest first. Returns the id
// of an agent without candidates through `stuck`.
std::vector<std::vector<Candidate>> candidate_lists(const RegionGraph& graph,
                                                    const Scenario& scenario,
                                                    const Blacklist& blacklist,
                                                    SoloCache& cache,
                                                    std::optional<int>& stuck) {
  std::vector<std::vector<Candidate>> lists;
  for (const AgentSpec& agent : scenario.agents) {
    std::vector<Candidate> list;
    for (SequencePlan& sp : generate_sequences(graph, scenario, agent,
                                               blacklist,
                                               scenario.params.k_candidates)) {
      const auto key = std::pair(sp.agent, sp.segments);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, solo_cost(scenario, sp)).first;
      }
      if (it->second < milp::kInf) list.push_back({std::move(sp), it->second});
    }
    std::stable_sort(list.begin(), list.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.cost < b.cost - 1e-9;
                     });
    if (list.empty()) {
      stuck = agent.id;
      return {};
    }
    lists.push_back(std::move(list));
  }
  return lists;
}

void fill_from(PlanResult& r, const Transcription& tr,
               const milp::SolveOutcome& out) {
  r.solver_status = out.status;
  r.objective = out.objective;
  r.best_bound = out.best_bound;
  r.binaries = tr.model.num_binaries();
  r.collision_binaries = tr.index.collision_binaries();
  r.obstacle_binaries = tr.index.obstacle_binaries();
  r.nodes = out.nodes;
  r.solve_seconds = out.wall_seconds;
}

milp::BnbOptions solver_options(const Scenario& s, double time_left) {
  milp::BnbOptions o;
  o.gap = s.params.gap;
  o.time_limit_seconds = std::max(0.0, time_left);
  return o;
}

}  // namespace

const char* to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::kSuccess:
      return "success";
    case PlanStatus::kExhausted:
      return "exhausted";
    case PlanStatus::kTimeout:
      return "timeout";
  }
  return "unknown";
}

double solo_cost(const Scenario& scenario, const SequencePlan& plan) {
  Scenario solo = scenario;
  solo.agents = {scenario.agent(plan.agent)};
  const std::vector<SequencePlan> plans{plan};
  const RegionGraph graph = build_graph(solo);
  const Transcription tr =
      build_paamp_model(solo, plans, relevant_pairs(plans, graph));
  const milp::SolveOutcome out = milp::branch_and_bound(tr.model);
  return out.has_solution() ? out.objective : milp::kInf;
}

Transition localize_conflict(const milp::MilpModel& model,
                             const VariableIndex& index,
                             std::span<const SequencePlan> plans) {
  if (plans.empty()) {
    throw Error(ErrorCode::kInvalidInput, "no plans to localize against");
  }
  if (!milp::root_proves_infeasible(model)) {
    milp::BnbOptions o;
    o.first_incumbent = true;
    if (milp::branch_and_bound(model, o).has_solution()) {
      throw Error(ErrorCode::kContract,
                  "conflict localization called on a feasible model");
    }
    return fallback_transition(plans);
  }
  for (int t = 0; t <= index.T; ++t) {
    std::vector<int> rows;
    const CollisionBlock* first = nullptr;
    for (const CollisionBlock& b : index.collisions) {
      if (b.t != t) continue;
      rows.push_back(b.cover_row);
      if (first == nullptr || std::pair(b.i, b.j) < std::pair(first->i, first->j)) {
        first = &b;
      }
    }
    if (rows.empty()) continue;
    milp::MilpModel relaxed = model;
    relaxed.remove_constraints(rows);
    if (!milp::root_proves_infeasible(relaxed)) {
      return transition_at(plan_of(plans, first->i), t);
    }
  }
  return fallback_transition(plans);
}

PlanResult plan(const Scenario& scenario) {
  const auto t0 = Clock::now();
  scenario.validate();
  const PlanningParams& p = scenario.params;
  const RegionGraph graph = build_graph(scenario);
  PlanResult result;
  std::set<std::vector<std::vector<int>>> tried;
  SoloCache solo_cache;

  for (int iter = 0; iter < p.k_max; ++iter) {
    const double time_left = p.timeout_seconds - seconds_since(t0);
    if (time_left <= 0.0) {
      result.status = PlanStatus::kTimeout;
      result.message = "wall-clock limit reached";
      break;
    }
    std::optional<int> stuck;
    const auto lists =
        candidate_lists(graph, scenario, result.blacklist, solo_cache, stuck);
    if (stuck) {
      result.message =
          "agent " + std::to_string(*stuck) + " has no admissible sequence";
      result.status = PlanStatus::kExhausted;
      result.wall_seconds = seconds_since(t0);
      return result;
    }
    const auto choice = next_joint(lists, tried);
    if (!choice) {
      result.message = "every joint candidate has been tried";
      break;
    }
    std::vector<SequencePlan> plans;
    std::vector<std::vector<int>> key;
    for (std::size_t a = 0; a < lists.size(); ++a) {
      plans.push_back(lists[a][(*choice)[a]].plan);
      key.push_back(plans.back().segments);
    }
    tried.insert(key);

    const RelevantPairs pairs = relevant_pairs(plans, graph);
    const Transcription tr = build_paamp_model(scenario, plans, pairs);
    const milp::SolveOutcome out = milp::branch_and_bound(
        tr.model, solver_options(scenario, p.timeout_seconds - seconds_since(t0)));

    IterationRecord rec;
    rec.choice = *choice;
    rec.solver_status = out.status;
    rec.objective = out.objective;
    rec.nodes = out.nodes;
    rec.solve_seconds = out.wall_seconds;
    rec.binaries = tr.model.num_binaries();
    rec.rho = scenario.agents.size() >= 2
                  ? pair_ratio(pairs, static_cast<int>(scenario.agents.size()))
                  : 0.0;
    fill_from(result, tr, out);
    result.rho = rec.rho;
    result.plans = plans;
    result.pairs = pairs;

    if (out.has_solution()) {
      std::vector<Trajectory> trajs = decode(out, tr.index, scenario);
      const ValidationReport report = validate(scenario, plans, trajs);
      if (report.passed()) {
        result.history.push_back(rec);
        result.trajectories = std::move(trajs);
        result.status = PlanStatus::kSuccess;
        result.wall_seconds = seconds_since(t0);
        return result;
      }
      const Violation& v = report.violations.front();
      rec.banned = transition_at(plan_of(plans, v.agents.front()), v.step);
    } else if (out.status == milp::SolveStatus::kTimeLimit) {
      result.history.push_back(rec);
      result.status = PlanStatus::kTimeout;
      result.message = "wall-clock limit reached during a solve";
      result.wall_seconds = seconds_since(t0);
      return result;
    } else if (out.status == milp::SolveStatus::kInfeasible) {
      rec.banned = localize_conflict(tr.model, tr.index, plans);
    } else {
      rec.banned = fallback_transition(plans);
    }
    rec.refined = true;
    result.blacklist.insert(rec.banned);
    result.history.push_back(rec);
  }
  if (result.status != PlanStatus::kTimeout) {
    result.status = PlanStatus::kExhausted;
    if (result.message.empty()) result.message = "refinement budget exhausted";
  }
  result.trajectories.clear();
  result.wall_seconds = seconds_since(t0);
  return result;
}

std::vector<SequencePlan> initial_plans(const Scenario& scenario) {
  scenario.validate();
  const RegionGraph graph = build_graph(scenario);
  SoloCache cache;
  std::optional<int> stuck;
  const auto lists = candidate_lists(graph, scenario, {}, cache, stuck);
  if (stuck) {
    throw Error(ErrorCode::kInvalidInput,
                "agent " + std::to_string(*stuck) +
                    " has no admissible sequence");
  }
  std::vector<SequencePlan> plans;
  for (const auto& list : lists) plans.push_back(list.front().plan);
  return plans;
}

PlanResult plan_naive(const Scenario& scenario) {
  const auto t0 = Clock::now();
  scenario.validate();
  PlanResult result;
  const Transcription tr = build_naive_model(scenario);
  const milp::SolveOutcome out = milp::branch_and_bound(
      tr.model, solver_options(scenario, scenario.params.timeout_seconds));
  IterationRecord rec;
  rec.solver_status = out.status;
  rec.objective = out.objective;
  rec.nodes = out.nodes;
  rec.solve_seconds = out.wall_seconds;
  rec.binaries = tr.model.num_binaries();
  rec.rho = 1.0;
  result.history.push_back(rec);
  fill_from(result, tr, out);
  result.rho = 1.0;
  if (out.has_solution()) {
    std::vector<Trajectory> trajs = decode(out, tr.index, scenario);
    const ValidationReport report = validate(scenario, {}, trajs);
    if (report.passed()) {
      result.trajectories = std::move(trajs);
      result.status = PlanStatus::kSuccess;
    } else {
      result.status = PlanStatus::kExhausted;
      result.message = "solution failed validation";
    }
  } else if (out.status == milp::SolveStatus::kTimeLimit) {
    result.status = PlanStatus::kTimeout;
    result.message = "wall-clock limit reached during a solve";
  } else {
    result.status = PlanStatus::kExhausted;
    result.message = std::string("solver finished: ") + milp::to_string(out.status);
  }
  result.wall_seconds = seconds_since(t0);
  return result;
}

}  // namespace paamp
