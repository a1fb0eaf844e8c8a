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

#include "paamp/region_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "paamp/error.hpp"
#include "paamp/milp/model.hpp"
#include "paamp/milp/simplex.hpp"

namespace paamp {
namespace {

constexpr double kCostTieTol = 1e-12;
constexpr double kInfCost = std::numeric_limits<double>::infinity();

double distance(std::span<const double> p, std::span<const double> q) {
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

bool in_region(const Scenario& s, int j, const Point& x) {
  return contains(s.regions[j], x, s.params.adjacency_tol);
}

// Region graph plus a virtual source (the agent's start) and sink (its goal).
class RouteGraph {
 public:
  RouteGraph(const RegionGraph& g, const Scenario& s, const AgentSpec& a)
      : graph_(g), source_(g.num_vertices), sink_(g.num_vertices + 1) {
    from_source_.assign(g.num_vertices, kInfCost);
    to_sink_.assign(g.num_vertices, kInfCost);
    for (int j = 0; j < g.num_vertices; ++j) {
      if (in_region(s, j, a.start)) from_source_[j] = distance(a.start, g.centers[j]);
      if (in_region(s, j, a.goal)) to_sink_[j] = distance(g.centers[j], a.goal);
    }
  }

  int source() const { return source_; }
  int sink() const { return sink_; }
  int size() const { return graph_.num_vertices + 2; }

  // Outgoing arcs of u in increasing target order.
  std::vector<std::pair<int, double>> arcs(int u) const {
    std::vector<std::pair<int, double>> out;
    if (u == source_) {
      for (int j = 0; j < graph_.num_vertices; ++j) {
        if (from_source_[j] < kInfCost) out.emplace_back(j, from_source_[j]);
      }
      return out;
    }
    if (u == sink_) return out;
    for (int k : graph_.neighbors[u]) out.emplace_back(k, graph_.cost(u, k));
    if (to_sink_[u] < kInfCost) out.emplace_back(sink_, to_sink_[u]);
    return out;
  }

  double arc_cost(int u, int v) const {
    for (const auto& [w, c] : arcs(u)) {
      if (w == v) return c;
    }
    return kInfCost;
  }

 private:
  const RegionGraph& graph_;
  int source_;
  int sink_;
  std::vector<double> from_source_;
  std::vector<double> to_sink_;
};

struct Route {
  std::vector<int> nodes;
  double cost = 0.0;
};

bool better(const Route& a, const Route& b) {
  if (std::abs(a.cost - b.cost) > kCostTieTol) return a.cost < b.cost;
  return a.nodes < b.nodes;
}

// Dijkstra over labels (cost, node list); equal costs prefer the
// lexicographically smaller node list.
std::optional<Route> cheapest(const RouteGraph& g, int from, int to,
                              const std::vector<bool>& node_banned,
                              const std::set<std::pair<int, int>>& arc_banned) {
  const int n = g.size();
  std::vector<std::optional<Route>> label(n);
  std::vector<bool> done(n, false);
  label[from] = Route{{from}, 0.0};
  for (;;) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v] || !label[v]) continue;
      if (u < 0 || better(*label[v], *label[u])) u = v;
    }
    if (u < 0) return std::nullopt;
    if (u == to) return label[u];
    done[u] = true;
    for (const auto& [v, c] : g.arcs(u)) {
      if (done[v] || node_banned[v] || arc_banned.contains({u, v})) continue;
      Route r = *label[u];
      r.nodes.push_back(v);
      r.cost += c;
      if (!label[v] || better(r, *label[v])) label[v] = std::move(r);
    }
  }
}

std::vector<int> expand(std::span<const int> path, std::span<const int> steps) {
  std::vector<int> segments;
  for (std::size_t m = 0; m < path.size(); ++m) {
    segments.insert(segments.end(), steps[m], path[m]);
  }
  return segments;
}

bool banned(const Blacklist& blacklist, int agent,
            const std::vector<int>& segments) {
  for (std::size_t t = 1; t < segments.size(); ++t) {
    if (blacklist.contains(
            {agent, static_cast<int>(t), segments[t - 1], segments[t]})) {
      return true;
    }
  }
  return false;
}

// Allocation with every region at or above its minimum that clears the
// blacklist and is closest (L1) to `preferred`; ties lexicographic.
std::optional<std::vector<int>> nearest_allowed(
    std::span<const int> path, int T, std::span<const int> mins,
    const std::vector<int>& preferred, const Blacklist& blacklist, int agent) {
  const int n = static_cast<int>(path.size());
  std::optional<std::vector<int>> best;
  int best_dist = std::numeric_limits<int>::max();
  std::vector<int> steps(n);
  long budget = 200000;
  auto recurse = [&](auto&& self, int m, int left) -> void {
    if (--budget < 0) return;
    if (m == n - 1) {
      if (left < mins[m]) return;
      steps[m] = left;
      int dist = 0;
      for (int i = 0; i < n; ++i) dist += std::abs(steps[i] - preferred[i]);
      if (dist < best_dist && !banned(blacklist, agent, expand(path, steps))) {
        best_dist = dist;
        best = steps;
      }
      return;
    }
    int reserve = 0;
    for (int i = m + 1; i < n; ++i) reserve += mins[i];
    for (int s = mins[m]; s <= left - reserve; ++s) {
      steps[m] = s;
      self(self, m + 1, left - s);
    }
  };
  recurse(recurse, 0, T);
  return best;
}

}  // namespace

bool RegionGraph::adjacent(int j, int k) const {
  if (j == k || j < 0 || k < 0 || j >= num_vertices || k >= num_vertices) {
    return false;
  }
  const auto& nb = neighbors[j];
  return std::binary_search(nb.begin(), nb.end(), k);
}

double RegionGraph::cost(int j, int k) const {
  const std::pair<int, int> key = std::minmax(j, k);
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) {
    throw Error(ErrorCode::kInvalidInput,
                "regions " + std::to_string(j) + " and " + std::to_string(k) +
                    " are not adjacent");
  }
  return edge_costs[it - edges.begin()];
}

RegionGraph build_graph(std::span<const Polytope> regions, double tol) {
  RegionGraph g;
  g.num_vertices = static_cast<int>(regions.size());
  g.neighbors.resize(regions.size());
  for (const Polytope& r : regions) g.centers.push_back(chebyshev_center(r));
  for (int j = 0; j < g.num_vertices; ++j) {
    for (int k = j + 1; k < g.num_vertices; ++k) {
      if (!intersects(regions[j], regions[k], tol)) continue;
      g.edges.emplace_back(j, k);
      g.edge_costs.push_back(
          std::max(kMinEdgeCost, distance(g.centers[j], g.centers[k])));
      g.neighbors[j].push_back(k);
      g.neighbors[k].push_back(j);
    }
  }
  for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
  return g;
}

RegionGraph build_graph(const Scenario& scenario) {
  return build_graph(scenario.regions, scenario.params.adjacency_tol);
}

std::vector<int> SequencePlan::path() const {
  std::vector<int> out;
  for (int r : segments) {
    if (out.empty() || out.back() != r) out.push_back(r);
  }
  return out;
}

std::vector<int> time_expand(std::span<const int> path, int T,
                             std::span<const double> leg_lengths,
                             std::span<const int> min_steps) {
  const int n = static_cast<int>(path.size());
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "empty region path");
  if (static_cast<int>(leg_lengths.size()) != n ||
      (!min_steps.empty() && static_cast<int>(min_steps.size()) != n)) {
    throw Error(ErrorCode::kInvalidInput, "one leg length per region expected");
  }
  std::vector<int> steps(n, 1);
  for (int m = 0; m < n && !min_steps.empty(); ++m) {
    steps[m] = std::max(1, min_steps[m]);
  }
  int used = 0;
  for (int s : steps) used += s;
  if (used > T) {
    throw Error(ErrorCode::kSequenceTooLong,
                "path needs " + std::to_string(used) + " segments, T is " +
                    std::to_string(T));
  }
  const int spare = T - used;
  double total = 0.0;
  for (double w : leg_lengths) total += std::max(0.0, w);
  std::vector<double> quota(n);
  for (int m = 0; m < n; ++m) {
    const double share =
        total > 0.0 ? std::max(0.0, leg_lengths[m]) / total : 1.0 / n;
    quota[m] = spare * share;
  }
  int given = 0;
  std::vector<double> remainder(n);
  for (int m = 0; m < n; ++m) {
    const int whole = static_cast<int>(std::floor(quota[m] + 1e-12));
    steps[m] += whole;
    given += whole;
    remainder[m] = quota[m] - whole;
  }
  std::vector<int> order(n);
  for (int m = 0; m < n; ++m) order[m] = m;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return remainder[a] > remainder[b] + 1e-12;
  });
  for (int i = 0; given < spare; ++i, ++given) ++steps[order[i % n]];
  return expand(path, steps);
}

std::vector<int> time_expand(std::span<const int> path, int T) {
  const std::vector<double> equal(path.size(), 1.0);
  return time_expand(path, T, equal);
}

std::vector<double> leg_lengths(const RegionGraph& graph,
                                const Scenario& scenario,
                                const AgentSpec& agent,
                                std::span<const int> path) {
  (void)graph;
  std::vector<Point> way{agent.start};
  for (std::size_t m = 1; m < path.size(); ++m) {
    way.push_back(chebyshev_center(intersection(
        scenario.regions[path[m - 1]], scenario.regions[path[m]])));
  }
  way.push_back(agent.goal);
  std::vector<double> legs;
  for (std::size_t m = 0; m + 1 < way.size(); ++m) {
    legs.push_back(distance(way[m], way[m + 1]));
  }
  return legs;
}

std::vector<int> min_steps(const Scenario& scenario, const AgentSpec& agent,
                           std::span<const int> path) {
  using milp::Relation;
  using milp::Term;
  const int n = static_cast<int>(path.size());
  const double v = scenario.params.v_max;
  milp::MilpModel m;
  // Crossing waypoints w_1..w_{n-1}; w_0 and w_n are the fixed endpoints.
  std::vector<std::array<int, 2>> w(n + 1, {-1, -1});
  for (int i = 1; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      w[i][c] = m.add_continuous(
          "w" + std::to_string(i) + "_" + std::to_string(c), -milp::kInf,
          milp::kInf);
    }
    for (int side : {path[i - 1], path[i]}) {
      const Polytope r = clearance_region(scenario, side);
      for (int f = 0; f < r.num_facets(); ++f) {
        m.add_constraint("in", {{w[i][0], r.a()[f][0]}, {w[i][1], r.a()[f][1]}},
                         Relation::kLessEqual,
                         r.b()[f] + scenario.params.adjacency_tol);
      }
    }
  }
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) {
    t[i] = m.add_continuous("t" + std::to_string(i));
    m.set_objective(t[i], 1.0);
    for (int c = 0; c < 2; ++c) {
      // +-(q - p) <= v t, with fixed endpoints folded into the right side.
      for (double sign : {1.0, -1.0}) {
        std::vector<Term> terms{{t[i], -v}};
        double rhs = 0.0;
        if (i + 1 < n) {
          terms.push_back({w[i + 1][c], sign});
        } else {
          rhs -= sign * agent.goal[c];
        }
        if (i > 0) {
          terms.push_back({w[i][c], -sign});
        } else {
          rhs += sign * agent.start[c];
        }
        m.add_constraint("leg", std::move(terms), Relation::kLessEqual, rhs);
      }
    }
  }
  const milp::LpResult r = milp::solve_lp(m);
  if (r.status != milp::LpStatus::kOptimal) return {};
  std::vector<int> steps(n);
  for (int i = 0; i < n; ++i) {
    steps[i] = std::max(1, static_cast<int>(std::ceil(r.values[t[i]] - 1e-7)));
  }
  return steps;
}

std::vector<std::pair<std::vector<int>, double>> shortest_region_paths(
    const RegionGraph& graph, const Scenario& scenario, const AgentSpec& agent,
    int limit) {
  const RouteGraph g(graph, scenario, agent);
  std::vector<Route> found;
  std::vector<Route> pending;
  const std::vector<bool> none(g.size(), false);
  if (auto first = cheapest(g, g.source(), g.sink(), none, {})) {
    found.push_back(*first);
  }
  while (!found.empty() && static_cast<int>(found.size()) < limit) {
    const Route& last = found.back();
    for (std::size_t i = 0; i + 1 < last.nodes.size(); ++i) {
      const std::vector<int> root(last.nodes.begin(), last.nodes.begin() + i + 1);
      std::set<std::pair<int, int>> arc_banned;
      for (const Route& r : found) {
        if (r.nodes.size() > i + 1 &&
            std::equal(root.begin(), root.end(), r.nodes.begin())) {
          arc_banned.insert({r.nodes[i], r.nodes[i + 1]});
        }
      }
      std::vector<bool> node_banned(g.size(), false);
      for (std::size_t k = 0; k < i; ++k) node_banned[root[k]] = true;
      const auto spur = cheapest(g, root.back(), g.sink(), node_banned, arc_banned);
      if (!spur) continue;
      Route total{root, 0.0};
      total.nodes.insert(total.nodes.end(), spur->nodes.begin() + 1,
                         spur->nodes.end());
      for (std::size_t k = 0; k + 1 < total.nodes.size(); ++k) {
        total.cost += g.arc_cost(total.nodes[k], total.nodes[k + 1]);
      }
      const auto same = [&](const Route& r) { return r.nodes == total.nodes; };
      if (std::none_of(found.begin(), found.end(), same) &&
          std::none_of(pending.begin(), pending.end(), same)) {
        pending.push_back(std::move(total));
      }
    }
    if (pending.empty()) break;
    const auto next = std::min_element(pending.begin(), pending.end(), better);
    found.push_back(*next);
    pending.erase(next);
  }
  std::vector<std::pair<std::vector<int>, double>> out;
  for (const Route& r : found) {
    out.emplace_back(std::vector<int>(r.nodes.begin() + 1, r.nodes.end() - 1),
                     r.cost);
  }
  return out;
}

std::vector<SequencePlan> generate_sequences(const RegionGraph& graph,
                                             const Scenario& scenario,
                                             const AgentSpec& agent,
                                             const Blacklist& blacklist,
                                             int k) {
  const int T = scenario.params.T;
  std::vector<SequencePlan> plans;
  for (const auto& [path, cost] :
       shortest_region_paths(graph, scenario, agent, 16 * k + 64)) {
    if (static_cast<int>(plans.size()) >= k) break;
    if (static_cast<int>(path.size()) > T) continue;
    if (!contains(clearance_region(scenario, path.front()), agent.start,
                  scenario.params.adjacency_tol) ||
        !contains(clearance_region(scenario, path.back()), agent.goal,
                  scenario.params.adjacency_tol)) {
      continue;
    }
    const std::vector<int> mins = min_steps(scenario, agent, path);
    int needed = 0;
    for (int s : mins) needed += s;
    if (mins.empty() || needed > T) continue;
    std::vector<int> segments =
        time_expand(path, T, leg_lengths(graph, scenario, agent, path), mins);
    if (banned(blacklist, agent.id, segments)) {
      std::vector<int> preferred;
      for (int r : path) {
        preferred.push_back(
            static_cast<int>(std::count(segments.begin(), segments.end(), r)));
      }
      // A region can repeat only through distinct paths, so counts are exact.
      const auto steps =
          nearest_allowed(path, T, mins, preferred, blacklist, agent.id);
      if (!steps) continue;
      segments = expand(path, *steps);
    }
    plans.push_back({agent.id, std::move(segments), cost});
  }
  return plans;
}

bool is_admissible(const SequencePlan& plan, const RegionGraph& graph,
                   const Scenario& scenario) {
  const auto& seg = plan.segments;
  if (static_cast<int>(seg.size()) != scenario.params.T || seg.empty()) {
    return false;
  }
  for (int r : seg) {
    if (r < 0 || r >= graph.num_vertices) return false;
  }
  const AgentSpec* agent = nullptr;
  for (const AgentSpec& a : scenario.agents) {
    if (a.id == plan.agent) agent = &a;
  }
  if (agent == nullptr) return false;
  if (!in_region(scenario, seg.front(), agent->start) ||
      !in_region(scenario, seg.back(), agent->goal)) {
    return false;
  }
  for (std::size_t t = 1; t < seg.size(); ++t) {
    if (seg[t] != seg[t - 1] && !graph.adjacent(seg[t - 1], seg[t])) return false;
  }
  return true;
}

}  // namespace paamp
