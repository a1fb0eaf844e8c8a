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

#include "paamp/pairs.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "paamp/error.hpp"

namespace paamp {

int RelevantPairs::total() const {
  int n = 0;
  for (const auto& s : steps) n += static_cast<int>(s.size());
  return n;
}

bool RelevantPairs::contains(int t, int i, int j) const {
  if (t < 0 || t >= static_cast<int>(steps.size())) return false;
  const auto key = std::minmax(i, j);
  return std::binary_search(steps[t].begin(), steps[t].end(),
                            std::pair<int, int>(key));
}

RelevantPairs relevant_pairs(std::span<const SequencePlan> plans,
                             const RegionGraph& graph) {
  RelevantPairs out;
  if (plans.empty()) return out;
  out.T = static_cast<int>(plans.front().segments.size());
  std::set<int> ids;
  for (const SequencePlan& p : plans) {
    if (static_cast<int>(p.segments.size()) != out.T) {
      throw Error(ErrorCode::kInvalidInput, "plans disagree on T");
    }
    if (!ids.insert(p.agent).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "agent " + std::to_string(p.agent) + " has two plans");
    }
  }
  const int T = out.T;
  auto touching = [T](const SequencePlan& p, int t) {
    std::vector<int> r;
    if (t > 0) r.push_back(p.segments[t - 1]);
    if (t < T && (r.empty() || r.back() != p.segments[t])) {
      r.push_back(p.segments[t]);
    }
    return r;
  };
  out.steps.resize(T + 1);
  for (int t = 0; t <= T; ++t) {
    for (const SequencePlan& a : plans) {
      for (const SequencePlan& b : plans) {
        if (a.agent >= b.agent) continue;
        bool near = false;
        for (int ra : touching(a, t)) {
          for (int rb : touching(b, t)) {
            near |= ra == rb || graph.adjacent(ra, rb);
          }
        }
        if (near) out.steps[t].emplace_back(a.agent, b.agent);
      }
    }
    std::sort(out.steps[t].begin(), out.steps[t].end());
  }
  return out;
}

double pair_ratio(const RelevantPairs& pairs, int n_agents) {
  if (n_agents < 2) {
    throw Error(ErrorCode::kInvalidInput, "pair ratio needs at least 2 agents");
  }
  if (pairs.steps.empty()) return 0.0;
  const double all = n_agents * (n_agents - 1) / 2.0;
  double sum = 0.0;
  for (const auto& s : pairs.steps) sum += s.size() / all;
  return sum / static_cast<double>(pairs.steps.size());
}

ContactStats contact_stats(const RelevantPairs& pairs,
                           std::span<const int> agent_ids) {
  ContactStats st;
  st.agent_ids.assign(agent_ids.begin(), agent_ids.end());
  st.per_agent.assign(agent_ids.size(), 0);
  for (const auto& step : pairs.steps) {
    for (const auto& [i, j] : step) {
      for (std::size_t k = 0; k < agent_ids.size(); ++k) {
        if (agent_ids[k] == i || agent_ids[k] == j) ++st.per_agent[k];
      }
    }
  }
  st.total_pairs = pairs.total();
  const double states = pairs.T + 1.0;
  if (!agent_ids.empty()) {
    double sum = 0.0;
    for (int c : st.per_agent) sum += c;
    st.mean_per_agent = sum / static_cast<double>(agent_ids.size());
  }
  st.per_agent_per_step = st.mean_per_agent / states;
  st.pairs_per_step = st.total_pairs / states;
  return st;
}

}  // namespace paamp
