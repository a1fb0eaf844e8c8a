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

#ifndef PAAMP_TRANSCRIPTION_HPP_
#define PAAMP_TRANSCRIPTION_HPP_

#include <array>
#include <span>
#include <vector>

#include "paamp/geometry.hpp"
#include "paamp/milp/branch_and_bound.hpp"
#include "paamp/milp/model.hpp"
#include "paamp/pairs.hpp"
#include "paamp/region_graph.hpp"
#include "paamp/scenario.hpp"

namespace paamp {

struct CollisionBlock {
  int i = 0;
  int j = 0;
  int t = 0;
  std::vector<int> delta;      // one binary per direction
  std::vector<int> rows;       // one big-M row per direction
  int cover_row = -1;          // sum of delta >= 1
};

struct ObstacleBlock {
  int agent = 0;
  int obstacle = 0;
  int t = 0;
  std::vector<int> gamma;      // one binary per obstacle facet
  std::vector<int> rows;
  int cover_row = -1;
};

struct VariableIndex {
  int T = 0;
  std::vector<int> agent_ids;
  // state[a][k] = {x column, y column} for agent position a, step k.
  std::vector<std::vector<std::array<int, 2>>> state;
  std::vector<CollisionBlock> collisions;
  std::vector<ObstacleBlock> obstacles;

  int collision_binaries() const;
  int obstacle_binaries() const;
};

struct Transcription {
  milp::MilpModel model;
  VariableIndex index;
};

// Sequence-constrained model: region membership per segment, collision rows
// only for relevant pairs (or every pair when params.all_pairs), obstacle
// disjunctions only where a region can come within epsilon of an obstacle.
// `plans` must list one plan per scenario agent, in scenario order.
Transcription build_paamp_model(const Scenario& scenario,
                                std::span<const SequencePlan> plans,
                                const RelevantPairs& pairs);

// Baseline: no regions, every pair at every step, every obstacle at every
// step.
Transcription build_naive_model(const Scenario& scenario);

struct Trajectory {
  int agent = 0;
  std::vector<Point> states;

  bool operator==(const Trajectory&) const = default;
};

// Throws Error(kInternalConsistency) if the assignment is missing columns or
// breaks the boundary or velocity limits by more than 1e-6.
std::vector<Trajectory> decode(const milp::SolveOutcome& outcome,
                               const VariableIndex& index,
                               const Scenario& scenario);

}  // namespace paamp

#endif  // PAAMP_TRANSCRIPTION_HPP_
