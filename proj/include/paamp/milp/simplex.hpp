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

#ifndef PAAMP_MILP_SIMPLEX_HPP_
#define PAAMP_MILP_SIMPLEX_HPP_

#include <chrono>
#include <cstdint>
#include <vector>

#include "paamp/milp/model.hpp"

namespace paamp::milp {

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 50;
  // Pivots allowed per solve call; 0 selects a budget proportional to the
  // model size.
  std::int64_t max_pivots = 0;
  // Solves still running at this instant throw Error(kTimeLimit).
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::int64_t pivots = 0;
};

// Solves the LP relaxation of `model` (binaries relaxed to their bounds).
// Throws Error(kNumericFailure) when the pivot budget runs out or phase 1
// stops making progress, and Error(kTimeLimit) past the deadline.
LpResult solve_lp(const MilpModel& model, const LpOptions& options = {});

// Dense-tableau simplex over bounded variables.
//
// Every row i gets a logical variable s_i = a_i . x whose bounds encode the
// relation, so the tableau is homogeneous: x_B = T x_N. Nonbasic variables sit
// at a finite bound (or at 0 when free). Primal simplex runs a composite
// phase 1 (sum of infeasibilities) then phase 2 with Dantzig pricing, falling
// back to Bland's rule after a streak of degenerate pivots. Dual simplex is
// available when the basis is dual feasible, which is the case after bound
// changes on an optimal basis; branch-and-bound relies on it.
//
// The object is a plain value: copying it snapshots the whole basis.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const MilpModel& model, LpOptions options = {});

  // Dual simplex when the basis is dual feasible, primal otherwise.
  LpStatus solve();
  LpStatus solve_primal();
  LpStatus solve_dual();

  // Structural variables only.
  void set_bounds(int var, double lower, double upper);
  double lower(int var) const { return lo_[var]; }
  double upper(int var) const { return hi_[var]; }

  double objective() const;
  double value(int var) const { return val_[var]; }
  std::vector<double> values() const;

  std::int64_t pivots() const { return pivots_; }
  int num_rows() const { return m_; }
  int num_structurals() const { return n_; }

 private:
  double& tab(int row, int col) {
    return tab_[static_cast<std::size_t>(row) * n_ + col];
  }
  double tab(int row, int col) const {
    return tab_[static_cast<std::size_t>(row) * n_ + col];
  }

  bool is_fixed(int var) const { return lo_[var] == hi_[var]; }
  double infeasibility(int var) const;
  bool primal_feasible() const;
  bool dual_feasible() const;

  // One primal iteration. Returns false when no improving column exists.
  bool primal_step(bool phase_one, LpStatus* status);
  // One dual iteration. Returns false when the basis is primal feasible.
  bool dual_step(LpStatus* status);

  void pivot(int row, int col);
  void shift_nonbasic(int col, double delta);
  void refresh();
  void count_pivot(bool degenerate);
  void begin_solve();
  double phase_one_sum() const;

  LpOptions opt_;
  int m_ = 0;
  int n_ = 0;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> cost_;
  std::vector<double> val_;
  std::vector<int> basic_;     // row -> variable
  std::vector<int> nonbasic_;  // column -> variable
  std::vector<double> tab_;    // m_ x n_, row-major
  std::vector<double> d_;      // reduced costs per column
  std::vector<double> scratch_;
  std::vector<int> nz_;
  std::int64_t pivots_ = 0;
  std::int64_t budget_ = 0;
  std::int64_t solve_start_ = 0;
  int degenerate_streak_ = 0;
  bool bland_ = false;
};

}  // namespace paamp::milp

#endif  // PAAMP_MILP_SIMPLEX_HPP_
