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

#ifndef PAAMP_ANALYSIS_HPP_
#define PAAMP_ANALYSIS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "paamp/region_graph.hpp"
#include "paamp/scenario.hpp"
#include "paamp/transcription.hpp"

namespace paamp {

inline constexpr double kAuditTol = 1e-6;

enum class ViolationKind {
  kShape,
  kBoundary,
  kVelocity,
  kSeparation,
  kRegion,
  kObstacle,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::kShape;
  std::vector<int> agents;
  int step = -1;
  // How far the requirement is missed (positive).
  double margin = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Smallest pairwise distance and obstacle clearance seen.
  double min_separation = 0.0;
  double min_clearance = 0.0;

  bool passed() const { return violations.empty(); }
};

// Geometry-only audit of decoded trajectories: boundary states, the
// infinity-norm step bound, separation of every pair at every step against
// d_sep, segment region membership (skipped when `plans` is empty) and
// epsilon clearance from every obstacle. Never reads solver binaries.
ValidationReport validate(const Scenario& scenario,
                          std::span<const SequencePlan> plans,
                          std::span<const Trajectory> trajectories);

struct AgentMetrics {
  int agent = 0;
  double manhattan = 0.0;
  double max_acceleration = 0.0;
  // Manhattan plus alpha times the L1 norm of all second differences.
  double objective = 0.0;
};

struct TrajectoryMetrics {
  std::vector<AgentMetrics> agents;
  double total_objective = 0.0;
  // False when T < 2 and accelerations are reported as 0.
  bool acceleration_defined = true;
};

TrajectoryMetrics metrics(std::span<const Trajectory> trajectories,
                          double alpha);

// Regions light gray, obstacles black, one colored polyline per agent,
// squares at starts and stars at goals. The viewBox is the workspace box.
std::string render_svg(const Scenario& scenario,
                       std::span<const Trajectory> trajectories);
void write_svg(const Scenario& scenario,
               std::span<const Trajectory> trajectories,
               const std::filesystem::path& path);

}  // namespace paamp

#endif  // PAAMP_ANALYSIS_HPP_
