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

#ifndef PAAMP_REGION_GRAPH_HPP_
#define PAAMP_REGION_GRAPH_HPP_

#include <compare>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "paamp/geometry.hpp"
#include "paamp/scenario.hpp"

namespace paamp {

// Smallest edge cost; keeps costs positive when two regions share a center.
inline constexpr double kMinEdgeCost = 1e-6;

struct RegionGraph {
  int num_vertices = 0;
  // Sorted (j, k) with j < k, parallel to `edge_costs`.
  std::vector<std::pair<int, int>> edges;
  std::vector<double> edge_costs;
  std::vector<Point> centers;
  std::vector<std::vector<int>> neighbors;

  bool adjacent(int j, int k) const;
  // Throws Error(kInvalidInput) if (j, k) is not an edge.
  double cost(int j, int k) const;
};

RegionGraph build_graph(std::span<const Polytope> regions,
                        double tol = kAdjacencyTol);
RegionGraph build_graph(const Scenario& scenario);

struct SequencePlan {
  int agent = 0;
  // Region index per trajectory segment, length T.
  std::vector<int> segments;
  double cost = 0.0;

  // Segments with consecutive repeats collapsed.
  std::vector<int> path() const;

  bool operator==(const SequencePlan&) const = default;
};

// Banned move of `agent` from region `from` (segment t-1) to region `to`
// (segment t).
struct Transition {
  int agent = 0;
  int t = 0;
  int from = 0;
  int to = 0;

  auto operator<=>(const Transition&) const = default;
};

using Blacklist = std::set<Transition>;

// Splits T segments over the regions of `path` in proportion to
// `leg_lengths`, after first granting each region `min_steps` (default 1).
// Rounding is largest remainder with ties to the earlier region.
std::vector<int> time_expand(std::span<const int> path, int T,
                             std::span<const double> leg_lengths,
                             std::span<const int> min_steps = {});
std::vector<int> time_expand(std::span<const int> path, int T);

// Lengths of the straight legs start -> crossing centers -> goal, one per
// region of `path`.
std::vector<double> leg_lengths(const RegionGraph& graph,
                                const Scenario& scenario,
                                const AgentSpec& agent,
                                std::span<const int> path);

// Fewest segments each region of `path` needs under the velocity bound
// while keeping obstacle clearance, or an empty vector if the path cannot be
// traversed at all.
std::vector<int> min_steps(const Scenario& scenario, const AgentSpec& agent,
                           std::span<const int> path);

// Loopless region paths from the agent's start to its goal, by increasing
// cost (ties lexicographic). Stops after `limit` paths.
std::vector<std::pair<std::vector<int>, double>> shortest_region_paths(
    const RegionGraph& graph, const Scenario& scenario, const AgentSpec& agent,
    int limit);

// Up to k admissible plans that respect `blacklist` and the velocity bound,
// ordered by path cost.
std::vector<SequencePlan> generate_sequences(const RegionGraph& graph,
                                             const Scenario& scenario,
                                             const AgentSpec& agent,
                                             const Blacklist& blacklist,
                                             int k);

bool is_admissible(const SequencePlan& plan, const RegionGraph& graph,
                   const Scenario& scenario);

}  // namespace paamp

#endif  // PAAMP_REGION_GRAPH_HPP_
