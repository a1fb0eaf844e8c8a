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

#ifndef PAAMP_PLANNER_HPP_
#define PAAMP_PLANNER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paamp/analysis.hpp"
#include "paamp/milp/branch_and_bound.hpp"
#include "paamp/region_graph.hpp"
#include "paamp/scenario.hpp"
#include "paamp/transcription.hpp"

namespace paamp {

enum class PlanStatus { kSuccess, kExhausted, kTimeout };

const char* to_string(PlanStatus status);

// One MILP solve of the planning loop.
struct IterationRecord {
  // Candidate index chosen for each agent.
  std::vector<int> choice;
  milp::SolveStatus solver_status = milp::SolveStatus::kInfeasible;
  double objective = milp::kInf;
  std::int64_t nodes = 0;
  double solve_seconds = 0.0;
  int binaries = 0;
  double rho = 0.0;
  // Blacklisted after this iteration, when it failed.
  bool refined = false;
  Transition banned;
};

struct PlanResult {
  PlanStatus status = PlanStatus::kExhausted;
  std::vector<Trajectory> trajectories;
  std::vector<SequencePlan> plans;
  Blacklist blacklist;
  std::vector<IterationRecord> history;
  RelevantPairs pairs;

  // Figures of the final model.
  milp::SolveStatus solver_status = milp::SolveStatus::kInfeasible;
  double objective = milp::kInf;
  double best_bound = -milp::kInf;
  int binaries = 0;
  int collision_binaries = 0;
  int obstacle_binaries = 0;
  double rho = 0.0;
  std::int64_t nodes = 0;
  double solve_seconds = 0.0;
  double wall_seconds = 0.0;
  std::string message;

  int iterations() const { return static_cast<int>(history.size()); }
};

// Sequence-then-solve loop with refine-on-conflict, at most k_max solves.
PlanResult plan(const Scenario& scenario);

// Cheapest joint candidate of the first planning iteration. Throws
// Error(kInvalidInput) when some agent has no admissible sequence.
std::vector<SequencePlan> initial_plans(const Scenario& scenario);

// Single MILP over the whole workspace without region sequences.
PlanResult plan_naive(const Scenario& scenario);

// Picks the time-indexed transition to ban after `model` (built from
// `plans`) was found infeasible. Throws Error(kContract) if the model has a
// feasible point.
Transition localize_conflict(const milp::MilpModel& model,
                             const VariableIndex& index,
                             std::span<const SequencePlan> plans);

// Optimal length-plus-acceleration cost of one agent flying `plan` alone, or
// +inf when the plan is infeasible even without other agents.
double solo_cost(const Scenario& scenario, const SequencePlan& plan);

}  // namespace paamp

#endif  // PAAMP_PLANNER_HPP_
