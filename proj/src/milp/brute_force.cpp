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

#include <chrono>
#include <cmath>
#include <string>

#include "paamp/error.hpp"
#include "paamp/milp/branch_and_bound.hpp"

namespace paamp::milp {

SolveOutcome brute_force_solve(const MilpModel& model,
                               const LpOptions& options) {
  model.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> binaries;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).kind == VarKind::kBinary) binaries.push_back(j);
  }
  if (binaries.size() > kBruteForceMaxBinaries) {
    throw Error(ErrorCode::kOracleScaleExceeded,
                std::to_string(binaries.size()) + " binaries exceed the " +
                    std::to_string(kBruteForceMaxBinaries) + " limit");
  }

  SolveOutcome out;
  const std::uint64_t count = std::uint64_t{1} << binaries.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    MilpModel fixed = model;
    bool in_bounds = true;
    for (std::size_t b = 0; b < binaries.size(); ++b) {
      const double v = static_cast<double>((mask >> b) & 1U);
      const Variable& var = model.variable(binaries[b]);
      if (v < var.lower || v > var.upper) {
        in_bounds = false;
        break;
      }
      fixed.set_bounds(binaries[b], v, v);
    }
    ++out.nodes;
    if (!in_bounds) continue;
    const LpResult lp = solve_lp(fixed, options);
    if (lp.status == LpStatus::kUnbounded) {
      throw Error(ErrorCode::kInvalidInput, "MILP is unbounded");
    }
    if (lp.status != LpStatus::kOptimal) continue;
    if (lp.objective < out.objective) {
      out.objective = lp.objective;
      out.values = lp.values;
      for (int j : binaries) out.values[j] = std::round(out.values[j]);
    }
  }
  out.status =
      out.values.empty() ? SolveStatus::kInfeasible : SolveStatus::kOptimal;
  out.best_bound = out.objective;
  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

}  // namespace paamp::milp
