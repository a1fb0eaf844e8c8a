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

#ifndef PAAMP_SCENARIO_HPP_
#define PAAMP_SCENARIO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "paamp/geometry.hpp"

namespace paamp {

struct AgentSpec {
  int id = 0;
  Point start;
  Point goal;

  bool operator==(const AgentSpec&) const = default;
};

struct PlanningParams {
  int T = 12;
  double v_max = 1.0;
  double d_min = 1.0;
  int L = 8;
  // Threshold used by every separating direction. Guaranteed separation.
  double d_sep = 1.0;
  double big_m = 100.0;
  double alpha = 0.5;
  double epsilon = 0.02;
  double gap = 5.0;
  int k_max = 20;
  int k_candidates = 5;
  double timeout_seconds = 300.0;
  double adjacency_tol = kAdjacencyTol;
  // Emit collision rows for every pair at every step, not only relevant ones.
  bool all_pairs = false;

  // Throws Error(kValidation) naming the first violated invariant.
  void validate() const;

  bool operator==(const PlanningParams&) const = default;
};

struct Scenario {
  Polytope workspace;
  std::vector<Polytope> regions;
  std::vector<Polytope> obstacles;
  std::vector<AgentSpec> agents;
  PlanningParams params;

  // Throws Error(kValidation) on the first violated invariant. Returns
  // non-fatal warnings (for instance a big-M that looks too small).
  std::vector<std::string> validate() const;

  const AgentSpec& agent(int id) const;

  bool operator==(const Scenario&) const = default;
};

// Region `region` with every facet that comes within epsilon of an obstacle
// pulled in by epsilon. States kept inside it clear those obstacles.
Polytope clearance_region(const Scenario& scenario, int region);

// JSON text with keys workspace, regions, obstacles, agents, params. Parse
// failures raise Error(kParse) with line and column; invariant violations
// raise Error(kValidation).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);

// Four agents crossing diagonally through three vertical and three
// horizontal bands, with 1x1 obstacles at the band gaps.
Scenario builtin_crossing_scenario();

}  // namespace paamp

#endif  // PAAMP_SCENARIO_HPP_
