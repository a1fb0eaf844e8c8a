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

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles/boxes.hpp"
#include "paamp/error.hpp"
#include "paamp/pairs.hpp"
#include "paamp/planner.hpp"
#include "paamp/scenario.hpp"

namespace {

using paamp::Error;
using paamp::ErrorCode;
using paamp::RegionGraph;
using paamp::RelevantPairs;
using paamp::SequencePlan;

RegionGraph table_graph() {
  std::vector<paamp::Polytope> regions;
  for (const auto& b : oracle::crossing_bands()) regions.push_back(oracle::to_polytope(b));
  return paamp::build_graph(regions);
}

bool close(int a, int b) {
  const auto& boxes = oracle::crossing_bands();
  return a == b || boxes[a].overlaps(boxes[b]);
}

// Pair (i, j) relevant at state t when any region of a segment touching t
// for i is equal or overlapping to any such region for j.
std::set<std::pair<int, int>> oracle_step(const std::vector<SequencePlan>& plans,
                                          int t) {
  const int T = static_cast<int>(plans[0].segments.size());
  std::set<std::pair<int, int>> out;
  for (const auto& p : plans) {
    for (const auto& q : plans) {
      if (p.agent >= q.agent) continue;
      for (int a : {t - 1, t}) {
        for (int b : {t - 1, t}) {
          if (a < 0 || b < 0 || a >= T || b >= T) continue;
          if (close(p.segments[a], q.segments[b])) out.insert({p.agent, q.agent});
        }
      }
    }
  }
  return out;
}

std::vector<int> random_walk(std::mt19937_64& rng, int T) {
  std::vector<int> seg{static_cast<int>(rng() % 6)};
  while (static_cast<int>(seg.size()) < T) {
    int next = seg.back();
    if (rng() % 3 == 0) {
      std::vector<int> options;
      for (int k = 0; k < 6; ++k) {
        if (k != next && close(k, next)) options.push_back(k);
      }
      next = options[rng() % options.size()];
    }
    seg.push_back(next);
  }
  return seg;
}

}  // namespace

TEST_CASE("relevant pairs match the overlap oracle on random plans") {
  const RegionGraph g = table_graph();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int T = 1 + static_cast<int>(rng() % 15);
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<SequencePlan> plans;
    for (int a = 0; a < n; ++a) plans.push_back({a * 3 + 1, random_walk(rng, T), 0.0});
    const RelevantPairs pairs = paamp::relevant_pairs(plans, g);
    REQUIRE(pairs.T == T);
    REQUIRE(static_cast<int>(pairs.steps.size()) == T + 1);
    int total = 0;
    for (int t = 0; t <= T; ++t) {
      const auto expected = oracle_step(plans, t);
      const std::set<std::pair<int, int>> got(pairs.steps[t].begin(),
                                              pairs.steps[t].end());
      CHECK(got == expected);
      CHECK(std::is_sorted(pairs.steps[t].begin(), pairs.steps[t].end()));
      CHECK(pairs.steps[t].size() <= static_cast<std::size_t>(n * (n - 1) / 2));
      for (const auto& [i, j] : pairs.steps[t]) {
        CHECK(i < j);
        CHECK(pairs.contains(t, i, j));
        CHECK(pairs.contains(t, j, i));
      }
      total += static_cast<int>(expected.size());
    }
    CHECK(pairs.total() == total);
  }
}

TEST_CASE("shared region and separated regions") {
  const RegionGraph g = table_graph();
  const std::vector<SequencePlan> same{{0, std::vector<int>(6, 4), 0.0},
                                       {1, std::vector<int>(6, 4), 0.0}};
  const RelevantPairs all = paamp::relevant_pairs(same, g);
  for (const auto& step : all.steps) CHECK(step.size() == 1);
  CHECK(paamp::pair_ratio(all, 2) == 1.0);

  const std::vector<SequencePlan> apart{{0, std::vector<int>(6, 0), 0.0},
                                        {1, std::vector<int>(6, 2), 0.0}};
  const RelevantPairs none = paamp::relevant_pairs(apart, g);
  CHECK(none.total() == 0);
  CHECK(paamp::pair_ratio(none, 2) == 0.0);
}

TEST_CASE("input errors") {
  const RegionGraph g = table_graph();
  const std::vector<SequencePlan> ragged{{0, std::vector<int>(6, 0), 0.0},
                                         {1, std::vector<int>(5, 0), 0.0}};
  CHECK_THROWS_AS(paamp::relevant_pairs(ragged, g), Error);
  const std::vector<SequencePlan> twins{{0, std::vector<int>(6, 0), 0.0},
                                        {0, std::vector<int>(6, 0), 0.0}};
  CHECK_THROWS_AS(paamp::relevant_pairs(twins, g), Error);
  RelevantPairs p;
  p.T = 1;
  p.steps.resize(2);
  try {
    paamp::pair_ratio(p, 1);
    FAIL("expected invalid input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidInput);
  }
}

TEST_CASE("pair ratio") {
  RelevantPairs p;
  p.T = 4;
  p.steps.assign(5, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(paamp::pair_ratio(p, 4) == doctest::Approx(0.5));
  p.steps.assign(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(paamp::pair_ratio(p, 4) == doctest::Approx(1.0));
}

TEST_CASE("contact statistics") {
  RelevantPairs p;
  p.T = 3;
  p.steps = {{{0, 1}}, {{0, 1}, {1, 2}}, {}, {{0, 2}}};
  const std::vector<int> ids{0, 1, 2};
  const paamp::ContactStats c = paamp::contact_stats(p, ids);
  CHECK(c.per_agent == std::vector<int>{3, 3, 2});
  CHECK(c.total_pairs == 4);
  CHECK(c.mean_per_agent == doctest::Approx(8.0 / 3.0));
  CHECK(c.per_agent_per_step == doctest::Approx(8.0 / 12.0));
  CHECK(c.pairs_per_step == doctest::Approx(1.0));
}

TEST_CASE("adding an edge never removes a pair") {
  const RegionGraph g = table_graph();
  RegionGraph wider = g;
  wider.edges.push_back({0, 1});
  std::sort(wider.edges.begin(), wider.edges.end());
  wider.neighbors[0].push_back(1);
  wider.neighbors[1].push_back(0);
  for (auto& nb : wider.neighbors) std::sort(nb.begin(), nb.end());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SequencePlan> plans;
    for (int a = 0; a < 4; ++a) plans.push_back({a, random_walk(rng, 10), 0.0});
    const RelevantPairs base = paamp::relevant_pairs(plans, g);
    const RelevantPairs more = paamp::relevant_pairs(plans, wider);
    for (int t = 0; t <= 10; ++t) {
      for (const auto& [i, j] : base.steps[t]) CHECK(more.contains(t, i, j));
    }
  }
}

TEST_CASE("crossing scenario prunes pairs") {
  paamp::Scenario s = paamp::builtin_crossing_scenario();
  for (int T : {12, 20}) {
    s.params.T = T;
    const auto plans = paamp::initial_plans(s);
    const RelevantPairs pairs = paamp::relevant_pairs(plans, paamp::build_graph(s));
    CHECK(paamp::pair_ratio(pairs, 4) < 1.0);
    std::vector<int> ids{0, 1, 2, 3};
    CHECK(paamp::contact_stats(pairs, ids).per_agent_per_step <= 3.0);
  }
}
