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

#ifndef PAAMP_REPORT_HPP_
#define PAAMP_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "paamp/planner.hpp"
#include "paamp/scenario.hpp"

namespace paamp {

struct ReportOptions {
  std::string mode = "paamp";
  std::uint64_t seed = 0;
  // Wall-clock figures make the output run-dependent; off by default.
  bool timing = false;
};

// {"agents": [{id, states, segments}], "metrics": {...}, "diagnostics": {...}}
// with a trailing newline. Deterministic for a deterministic `result`.
std::string plan_to_json(const Scenario& scenario, const PlanResult& result,
                         const ReportOptions& options = {});

struct PlanFile {
  std::vector<Trajectory> trajectories;
  // Empty when the file carries no segments.
  std::vector<SequencePlan> plans;
};

// Reads the "agents" array of a plan document. Throws Error(kParse).
PlanFile parse_plan_json(const std::string& text);

}  // namespace paamp

#endif  // PAAMP_REPORT_HPP_
