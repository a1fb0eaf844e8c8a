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

#include "paamp/transcription.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "paamp/error.hpp"

namespace paamp {
namespace {

using milp::MilpModel;
using milp::Relation;
using milp::Term;

std::string tag(const char* prefix, std::initializer_list<int> parts) {
  std::string s = prefix;
  for (int p : parts) s += "_" + std::to_string(p);
  return s;
}

// States, boundary rows, velocity rows and the length/acceleration objective.
void add_dynamics(const Scenario& s, MilpModel& m, VariableIndex& index) {
  const PlanningParams& p = s.params;
  const auto [lo, hi] = bounding_box(s.workspace);
  index.T = p.T;
  for (std::size_t a = 0; a < s.agents.size(); ++a) {
    const AgentSpec& agent = s.agents[a];
    index.agent_ids.push_back(agent.id);
    auto& x = index.state.emplace_back(p.T + 1);
    for (int k = 0; k <= p.T; ++k) {
      for (int c = 0; c < 2; ++c) {
        x[k][c] = m.add_continuous(tag("x", {agent.id, k, c}), lo[c], hi[c]);
      }
    }
    for (int c = 0; c < 2; ++c) {
      m.add_constraint(tag("start", {agent.id, c}), {{x[0][c], 1.0}},
                       Relation::kEqual, agent.start[c]);
      m.add_constraint(tag("goal", {agent.id, c}), {{x[p.T][c], 1.0}},
                       Relation::kEqual, agent.goal[c]);
    }
    for (int k = 0; k < p.T; ++k) {
      for (int c = 0; c < 2; ++c) {
        const Term ahead{x[k + 1][c], 1.0};
        const Term here{x[k][c], -1.0};
        m.add_constraint(tag("vup", {agent.id, k, c}), {ahead, here},
                         Relation::kLessEqual, p.v_max);
        m.add_constraint(tag("vdn", {agent.id, k, c}), {ahead, here},
                         Relation::kGreaterEqual, -p.v_max);
        const int u = m.add_continuous(tag("len", {agent.id, k, c}));
        m.set_objective(u, 1.0);
        m.add_constraint(tag("lenp", {agent.id, k, c}), {{u, 1.0}, {ahead.var, -1.0}, {here.var, 1.0}},
                         Relation::kGreaterEqual, 0.0);
        m.add_constraint(tag("lenn", {agent.id, k, c}), {{u, 1.0}, {ahead.var, 1.0}, {here.var, -1.0}},
                         Relation::kGreaterEqual, 0.0);
      }
    }
    if (p.alpha <= 0.0) continue;
    for (int k = 1; k < p.T; ++k) {
      for (int c = 0; c < 2; ++c) {
        const int acc = m.add_continuous(tag("acc", {agent.id, k, c}));
        m.set_objective(acc, p.alpha);
        const std::vector<Term> second{
            {x[k + 1][c], 1.0}, {x[k][c], -2.0}, {x[k - 1][c], 1.0}};
        std::vector<Term> up{{acc, 1.0}};
        std::vector<Term> down{{acc, 1.0}};
        for (const Term& t : second) {
          up.push_back({t.var, -t.coef});
          down.push_back(t);
        }
        m.add_constraint(tag("accp", {agent.id, k, c}), std::move(up),
                         Relation::kGreaterEqual, 0.0);
        m.add_constraint(tag("accn", {agent.id, k, c}), std::move(down),
                         Relation::kGreaterEqual, 0.0);
      }
    }
  }
}

void add_collision(const Scenario& s, MilpModel& m, VariableIndex& index,
                   const DirectionSet& dirs, int ai, int aj, int t) {
  const double big_m = s.params.big_m;
  CollisionBlock block{s.agents[ai].id, s.agents[aj].id, t, {}, {}, -1};
  const auto& xi = index.state[ai][t];
  const auto& xj = index.state[aj][t];
  std::vector<Term> cover;
  for (int l = 0; l < dirs.size(); ++l) {
    const int d = m.add_binary(tag("d", {block.i, block.j, t, l}));
    const auto& c = dirs.directions[l];
    // <c, x_j - x_i> >= d_l - M (1 - delta)
    block.rows.push_back(m.add_constraint(
        tag("sep", {block.i, block.j, t, l}),
        {{xj[0], c[0]}, {xj[1], c[1]}, {xi[0], -c[0]}, {xi[1], -c[1]},
         {d, -big_m}},
        Relation::kGreaterEqual, dirs.thresholds[l] - big_m));
    block.delta.push_back(d);
    cover.push_back({d, 1.0});
  }
  block.cover_row = m.add_constraint(tag("cover", {block.i, block.j, t}),
                                     std::move(cover), Relation::kGreaterEqual,
                                     1.0);
  index.collisions.push_back(std::move(block));
}

void add_obstacle(const Scenario& s, MilpModel& m, VariableIndex& index, int a,
                  int o, int t) {
  const Polytope& obs = s.obstacles[o];
  const double big_m = s.params.big_m;
  ObstacleBlock block{s.agents[a].id, o, t, {}, {}, -1};
  const auto& x = index.state[a][t];
  std::vector<Term> cover;
  for (int q = 0; q < obs.num_facets(); ++q) {
    const int g = m.add_binary(tag("g", {block.agent, o, t, q}));
    const double scale = norm2(obs.a()[q]);
    // (A_p)_q x >= (b_p)_q + eps - M (1 - gamma), scaled by the row norm.
    block.rows.push_back(m.add_constraint(
        tag("obs", {block.agent, o, t, q}),
        {{x[0], obs.a()[q][0]}, {x[1], obs.a()[q][1]}, {g, -big_m * scale}},
        Relation::kGreaterEqual,
        obs.b()[q] + s.params.epsilon * scale - big_m * scale));
    block.gamma.push_back(g);
    cover.push_back({g, 1.0});
  }
  block.cover_row = m.add_constraint(tag("ocover", {block.agent, o, t}),
                                     std::move(cover), Relation::kGreaterEqual,
                                     1.0);
  index.obstacles.push_back(std::move(block));
}

void add_membership(MilpModel& m, const std::array<int, 2>& x,
                    const Polytope& r, const std::string& name) {
  for (int f = 0; f < r.num_facets(); ++f) {
    m.add_constraint(name + "_" + std::to_string(f),
                     {{x[0], r.a()[f][0]}, {x[1], r.a()[f][1]}},
                     Relation::kLessEqual, r.b()[f]);
  }
}

bool is_axis_box(const Polytope& p) {
  const std::vector<std::vector<double>> normals{
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  return p.a() == normals;
}

// Strictly overlapping: touching boundaries do not count.
bool overlaps(const Polytope& p, const Polytope& q) {
  return intersects(p, q, -1e-6);
}

}  // namespace

int VariableIndex::collision_binaries() const {
  int n = 0;
  for (const auto& b : collisions) n += static_cast<int>(b.delta.size());
  return n;
}

int VariableIndex::obstacle_binaries() const {
  int n = 0;
  for (const auto& b : obstacles) n += static_cast<int>(b.gamma.size());
  return n;
}

Transcription build_paamp_model(const Scenario& s,
                                std::span<const SequencePlan> plans,
                                const RelevantPairs& pairs) {
  const PlanningParams& p = s.params;
  const int n = static_cast<int>(s.agents.size());
  if (static_cast<int>(plans.size()) != n || pairs.T != p.T ||
      static_cast<int>(pairs.steps.size()) != p.T + 1) {
    throw Error(ErrorCode::kInvalidInput, "plans or pairs do not match the scenario");
  }
  for (int a = 0; a < n; ++a) {
    if (plans[a].agent != s.agents[a].id ||
        static_cast<int>(plans[a].segments.size()) != p.T) {
      throw Error(ErrorCode::kInvalidInput,
                  "plan " + std::to_string(a) + " does not match agent order or T");
    }
  }
  Transcription out;
  MilpModel& m = out.model;
  VariableIndex& index = out.index;
  add_dynamics(s, m, index);

  std::map<int, Polytope> tight;
  auto region = [&](int j) -> const Polytope& {
    auto it = tight.find(j);
    if (it == tight.end()) it = tight.emplace(j, clearance_region(s, j)).first;
    return it->second;
  };
  std::vector<Polytope> grown;
  for (const Polytope& o : s.obstacles) grown.push_back(inflate(o, p.epsilon));

  for (int a = 0; a < n; ++a) {
    const auto& seg = plans[a].segments;
    for (int k = 0; k <= p.T; ++k) {
      std::vector<int> touching;
      if (k > 0) touching.push_back(seg[k - 1]);
      if (k < p.T && (touching.empty() || touching.back() != seg[k])) {
        touching.push_back(seg[k]);
      }
      Polytope where = region(touching[0]);
      for (int r : touching) {
        add_membership(m, index.state[a][k], region(r),
                       tag("reg", {s.agents[a].id, k, r}));
        if (r != touching[0]) where = intersection(where, region(r));
      }
      for (int o = 0; o < static_cast<int>(s.obstacles.size()); ++o) {
        if (overlaps(where, grown[o])) add_obstacle(s, m, index, a, o, k);
      }
    }
  }

  const DirectionSet dirs = sample_directions(p.L, p.d_sep);
  for (int t = 0; t <= p.T; ++t) {
    for (int ai = 0; ai < n; ++ai) {
      for (int aj = ai + 1; aj < n; ++aj) {
        const int i = s.agents[ai].id;
        const int j = s.agents[aj].id;
        if (p.all_pairs || pairs.contains(t, i, j)) {
          add_collision(s, m, index, dirs, ai, aj, t);
        }
      }
    }
  }
  return out;
}

Transcription build_naive_model(const Scenario& s) {
  const PlanningParams& p = s.params;
  Transcription out;
  MilpModel& m = out.model;
  VariableIndex& index = out.index;
  add_dynamics(s, m, index);
  const int n = static_cast<int>(s.agents.size());
  if (!is_axis_box(s.workspace)) {
    for (int a = 0; a < n; ++a) {
      for (int k = 0; k <= p.T; ++k) {
        add_membership(m, index.state[a][k], s.workspace,
                       tag("ws", {s.agents[a].id, k}));
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k <= p.T; ++k) {
      for (int o = 0; o < static_cast<int>(s.obstacles.size()); ++o) {
        add_obstacle(s, m, index, a, o, k);
      }
    }
  }
  const DirectionSet dirs = sample_directions(p.L, p.d_sep);
  for (int t = 0; t <= p.T; ++t) {
    for (int ai = 0; ai < n; ++ai) {
      for (int aj = ai + 1; aj < n; ++aj) add_collision(s, m, index, dirs, ai, aj, t);
    }
  }
  return out;
}

std::vector<Trajectory> decode(const milp::SolveOutcome& outcome,
                               const VariableIndex& index,
                               const Scenario& scenario) {
  std::vector<Trajectory> out;
  const double v_max = scenario.params.v_max;
  for (std::size_t a = 0; a < index.state.size(); ++a) {
    Trajectory traj{index.agent_ids[a], {}};
    for (const auto& col : index.state[a]) {
      if (col[0] >= static_cast<int>(outcome.values.size()) ||
          col[1] >= static_cast<int>(outcome.values.size())) {
        throw Error(ErrorCode::kInternalConsistency,
                    "assignment is missing state columns");
      }
      traj.states.push_back({outcome.values[col[0]], outcome.values[col[1]]});
    }
    const AgentSpec& spec = scenario.agent(traj.agent);
    const auto& xs = traj.states;
    for (int c = 0; c < 2; ++c) {
      if (std::abs(xs.front()[c] - spec.start[c]) > 1e-6 ||
          std::abs(xs.back()[c] - spec.goal[c]) > 1e-6) {
        throw Error(ErrorCode::kInternalConsistency,
                    "decoded trajectory misses its boundary conditions");
      }
    }
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      for (int c = 0; c < 2; ++c) {
        if (std::abs(xs[k + 1][c] - xs[k][c]) > v_max + 1e-6) {
          throw Error(ErrorCode::kInternalConsistency,
                      "decoded trajectory exceeds the velocity bound");
        }
      }
    }
    out.push_back(std::move(traj));
  }
  return out;
}

}  // namespace paamp
