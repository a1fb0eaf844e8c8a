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

#ifndef PAAMP_MILP_BRANCH_AND_BOUND_HPP_
#define PAAMP_MILP_BRANCH_AND_BOUND_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "paamp/milp/model.hpp"
#include "paamp/milp/simplex.hpp"

namespace paamp::milp {

enum class SolveStatus {
  kOptimal,
  kFeasibleWithinGap,
  kInfeasible,
  kNodeLimit,
  kTimeLimit,
};

const char* to_string(SolveStatus status);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = kInf;
  // Global lower bound when the search stopped (+inf once proven infeasible).
  double best_bound = -kInf;
  // Empty when no incumbent was found.
  std::vector<double> values;
  std::int64_t nodes = 0;
  double wall_seconds = 0.0;

  bool has_solution() const { return !values.empty(); }
};

struct BnbOptions {
  // Absolute: stop once incumbent - global bound <= gap.
  double gap = 0.0;
  std::int64_t node_limit = 1'000'000;
  double time_limit_seconds = kInf;
  double integrality_tol = 1e-6;
  // Return as soon as any integer-feasible point is known.
  bool first_incumbent = false;
  // Depth-first rounding dive from the root and then from every
  // `dive_every`-th processed node.
  bool diving = true;
  int dive_every = 64;
  // Memory cap for cached node bases; beyond it nodes restart from the root.
  std::size_t snapshot_bytes = std::size_t{256} << 20;
  LpOptions lp;
};

// Best-bound branch-and-bound over the binary columns of `model`.
//
// Nodes are ordered by their parent's LP bound (ties: oldest node first) and
// branch on the most fractional binary (ties: lowest index). Child LPs are
// reoptimized with the dual simplex from a cached parent basis. A node whose
// bound is no better than the incumbent is pruned. The model must have a
// bounded LP relaxation.
SolveOutcome branch_and_bound(const MilpModel& model,
                              const BnbOptions& options = {});

// Root check used by the search: bound propagation followed by the LP
// relaxation. True when either proves the model infeasible.
bool root_proves_infeasible(const MilpModel& model, const LpOptions& options = {});

inline constexpr int kBruteForceMaxBinaries = 20;

// Exhaustive reference: one LP per binary assignment. Refuses models with
// more than kBruteForceMaxBinaries binaries (Error kOracleScaleExceeded).
SolveOutcome brute_force_solve(const MilpModel& model,
                               const LpOptions& options = {});

}  // namespace paamp::milp

#endif  // PAAMP_MILP_BRANCH_AND_BOUND_HPP_
