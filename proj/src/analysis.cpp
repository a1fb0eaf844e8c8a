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

#include "paamp/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "paamp/error.hpp"

namespace paamp {
namespace {

double dist2(const Point& p, const Point& q) {
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

// Signed distance-like margin of x outside p: largest normalized facet
// excess. Positive means outside.
double outside_margin(const Polytope& p, const Point& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (int q = 0; q < p.num_facets(); ++q) {
    const double excess = (dot(p.a()[q], x) - p.b()[q]) / norm2(p.a()[q]);
    best = std::max(best, excess);
  }
  return best;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 5e-7 ? 0.0 : v);
  return buf;
}

bool is_axis_box(const Polytope& p) {
  const std::vector<std::vector<double>> normals{
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  return p.a() == normals;
}

std::string polygon_points(const std::vector<Point>& pts) {
  std::string out;
  for (const Point& p : pts) {
    if (!out.empty()) out += ' ';
    out += num(p[0]) + "," + num(p[1]);
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kShape:
      return "shape";
    case ViolationKind::kBoundary:
      return "boundary";
    case ViolationKind::kVelocity:
      return "velocity";
    case ViolationKind::kSeparation:
      return "separation";
    case ViolationKind::kRegion:
      return "region";
    case ViolationKind::kObstacle:
      return "obstacle";
  }
  return "unknown";
}

ValidationReport validate(const Scenario& s, std::span<const SequencePlan> plans,
                          std::span<const Trajectory> trajs) {
  ValidationReport report;
  const PlanningParams& p = s.params;
  auto add = [&](ViolationKind kind, std::vector<int> agents, int step,
                 double margin, std::string detail) {
    report.violations.push_back(
        {kind, std::move(agents), step, margin, std::move(detail)});
  };
  report.min_separation = std::numeric_limits<double>::infinity();
  report.min_clearance = std::numeric_limits<double>::infinity();

  if (trajs.size() != s.agents.size()) {
    add(ViolationKind::kShape, {}, -1, 0.0, "one trajectory per agent expected");
    return report;
  }
  for (std::size_t a = 0; a < trajs.size(); ++a) {
    const Trajectory& tr = trajs[a];
    if (tr.agent != s.agents[a].id ||
        static_cast<int>(tr.states.size()) != p.T + 1) {
      add(ViolationKind::kShape, {tr.agent}, -1, 0.0,
          "trajectory needs T + 1 states in scenario agent order");
      return report;
    }
    for (const Point& x : tr.states) {
      if (x.size() != 2) {
        add(ViolationKind::kShape, {tr.agent}, -1, 0.0, "states must be 2-D");
        return report;
      }
    }
  }

  for (std::size_t a = 0; a < trajs.size(); ++a) {
    const AgentSpec& spec = s.agents[a];
    const auto& xs = trajs[a].states;
    const double miss_start = dist2(xs.front(), spec.start);
    const double miss_goal = dist2(xs.back(), spec.goal);
    if (miss_start > kAuditTol) {
      add(ViolationKind::kBoundary, {spec.id}, 0, miss_start, "start missed");
    }
    if (miss_goal > kAuditTol) {
      add(ViolationKind::kBoundary, {spec.id}, p.T, miss_goal, "goal missed");
    }
    for (int k = 0; k < p.T; ++k) {
      const double step = std::max(std::abs(xs[k + 1][0] - xs[k][0]),
                                   std::abs(xs[k + 1][1] - xs[k][1]));
      if (step > p.v_max + kAuditTol) {
        add(ViolationKind::kVelocity, {spec.id}, k, step - p.v_max,
            "step exceeds v_max");
      }
    }
    for (std::size_t o = 0; o < s.obstacles.size(); ++o) {
      for (int k = 0; k <= p.T; ++k) {
        const double clear = outside_margin(s.obstacles[o], xs[k]);
        report.min_clearance = std::min(report.min_clearance, clear);
        if (clear < p.epsilon - kAuditTol) {
          add(ViolationKind::kObstacle, {spec.id}, k, p.epsilon - clear,
              "within epsilon of obstacle " + std::to_string(o));
        }
      }
    }
  }

  for (int k = 0; k <= p.T; ++k) {
    for (std::size_t a = 0; a < trajs.size(); ++a) {
      for (std::size_t b = a + 1; b < trajs.size(); ++b) {
        const double d = dist2(trajs[a].states[k], trajs[b].states[k]);
        report.min_separation = std::min(report.min_separation, d);
        if (d < p.d_sep - kAuditTol) {
          add(ViolationKind::kSeparation, {trajs[a].agent, trajs[b].agent}, k,
              p.d_sep - d, "agents closer than d_sep");
        }
      }
    }
  }

  if (!plans.empty()) {
    if (plans.size() != trajs.size()) {
      add(ViolationKind::kShape, {}, -1, 0.0, "one plan per agent expected");
      return report;
    }
    for (std::size_t a = 0; a < plans.size(); ++a) {
      const auto& seg = plans[a].segments;
      if (static_cast<int>(seg.size()) != p.T) {
        add(ViolationKind::kShape, {plans[a].agent}, -1, 0.0,
            "plan length differs from T");
        continue;
      }
      for (int k = 0; k < p.T; ++k) {
        const Polytope& r = s.regions[seg[k]];
        for (int end : {k, k + 1}) {
          const Point& x = trajs[a].states[end];
          if (!contains(r, x, kAuditTol)) {
            add(ViolationKind::kRegion, {plans[a].agent}, end,
                outside_margin(r, x),
                "segment " + std::to_string(k) + " leaves region " +
                    std::to_string(seg[k]));
          }
        }
      }
    }
  }
  return report;
}

TrajectoryMetrics metrics(std::span<const Trajectory> trajs, double alpha) {
  TrajectoryMetrics m;
  for (const Trajectory& tr : trajs) {
    AgentMetrics am;
    am.agent = tr.agent;
    const auto& xs = tr.states;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      am.manhattan +=
          std::abs(xs[k + 1][0] - xs[k][0]) + std::abs(xs[k + 1][1] - xs[k][1]);
    }
    double acc_l1 = 0.0;
    for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
      const double ax = xs[k + 1][0] - 2 * xs[k][0] + xs[k - 1][0];
      const double ay = xs[k + 1][1] - 2 * xs[k][1] + xs[k - 1][1];
      am.max_acceleration = std::max(am.max_acceleration, std::hypot(ax, ay));
      acc_l1 += std::abs(ax) + std::abs(ay);
    }
    if (xs.size() < 3) m.acceleration_defined = false;
    am.objective = am.manhattan + alpha * acc_l1;
    m.total_objective += am.objective;
    m.agents.push_back(am);
  }
  return m;
}

std::string render_svg(const Scenario& s, std::span<const Trajectory> trajs) {
  const auto [lo, hi] = bounding_box(s.workspace);
  const double w = hi[0] - lo[0];
  const double h = hi[1] - lo[1];
  const double unit = std::max(w, h) / 100.0;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(lo[0]) +
         " " + num(lo[1]) + " " + num(w) + " " + num(h) + "\">\n";
  // Flip y so the workspace reads with x2 pointing up.
  out += "<g transform=\"matrix(1 0 0 -1 0 " + num(lo[1] + hi[1]) + ")\">\n";
  out += "<rect x=\"" + num(lo[0]) + "\" y=\"" + num(lo[1]) + "\" width=\"" +
         num(w) + "\" height=\"" + num(h) +
         "\" fill=\"white\" stroke=\"#666666\" stroke-width=\"" +
         num(unit * 0.3) + "\"/>\n";
  for (const Polytope& r : s.regions) {
    out += "<polygon class=\"region\" points=\"" +
           polygon_points(vertices_2d(r)) +
           "\" fill=\"#d3d3d3\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
  }
  for (const Polytope& o : s.obstacles) {
    if (is_axis_box(o)) {
      out += "<rect class=\"obstacle\" x=\"" + num(-o.b()[1]) + "\" y=\"" +
             num(-o.b()[3]) + "\" width=\"" + num(o.b()[0] + o.b()[1]) +
             "\" height=\"" + num(o.b()[2] + o.b()[3]) +
             "\" fill=\"black\"/>\n";
    } else {
      out += "<polygon class=\"obstacle\" points=\"" +
             polygon_points(vertices_2d(o)) + "\" fill=\"black\"/>\n";
    }
  }
  for (std::size_t a = 0; a < trajs.size(); ++a) {
    const char* color = kPalette[a % kPalette.size()];
    out += "<polyline class=\"trajectory\" points=\"" +
           polygon_points(trajs[a].states) + "\" fill=\"none\" stroke=\"" +
           color + "\" stroke-width=\"" + num(unit * 0.6) + "\"/>\n";
  }
  for (std::size_t a = 0; a < s.agents.size(); ++a) {
    const char* color = kPalette[a % kPalette.size()];
    const AgentSpec& spec = s.agents[a];
    const double half = unit * 1.5;
    out += "<rect class=\"start\" x=\"" + num(spec.start[0] - half) +
           "\" y=\"" + num(spec.start[1] - half) + "\" width=\"" +
           num(2 * half) + "\" height=\"" + num(2 * half) + "\" fill=\"" +
           color + "\"/>\n";
    std::vector<Point> star;
    for (int i = 0; i < 10; ++i) {
      const double radius = (i % 2 == 0) ? unit * 2.5 : unit * 1.0;
      const double angle = std::numbers::pi / 2 + i * std::numbers::pi / 5;
      star.push_back({spec.goal[0] + radius * std::cos(angle),
                      spec.goal[1] + radius * std::sin(angle)});
    }
    out += "<polygon class=\"goal\" points=\"" + polygon_points(star) +
           "\" fill=\"" + color + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

void write_svg(const Scenario& s, std::span<const Trajectory> trajs,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << render_svg(s, trajs);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace paamp
