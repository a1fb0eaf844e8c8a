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

#ifndef PAAMP_PAIRS_HPP_
#define PAAMP_PAIRS_HPP_

#include <span>
#include <utility>
#include <vector>

#include "paamp/region_graph.hpp"

namespace paamp {

struct RelevantPairs {
  int T = 0;
  // One entry per state index t = 0..T; agent-id pairs (i, j) with i < j,
  // sorted.
  std::vector<std::vector<std::pair<int, int>>> steps;

  int total() const;
  bool contains(int t, int i, int j) const;
};

// Pair (i, j) is relevant at state t when some segment of i touching t and
// some segment of j touching t lie in equal or adjacent regions.
RelevantPairs relevant_pairs(std::span<const SequencePlan> plans,
                             const RegionGraph& graph);

// Mean over state indices of |P(t)| / C(n_agents, 2).
double pair_ratio(const RelevantPairs& pairs, int n_agents);

struct ContactStats {
  // Contacts (t, partner) per agent id, in the order of `agent_ids`.
  std::vector<int> agent_ids;
  std::vector<int> per_agent;
  double mean_per_agent = 0.0;
  // mean_per_agent / (T + 1).
  double per_agent_per_step = 0.0;
  int total_pairs = 0;
  // total_pairs / (T + 1).
  double pairs_per_step = 0.0;
};

ContactStats contact_stats(const RelevantPairs& pairs,
                           std::span<const int> agent_ids);

}  // namespace paamp

#endif  // PAAMP_PAIRS_HPP_
