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

#include "paamp/milp/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "paamp/error.hpp"

namespace paamp::milp {
namespace {

constexpr double kFlush = 1e-13;
constexpr double kTieEps = 1e-12;
constexpr int kRefreshEvery = 256;

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

BoundedSimplex::BoundedSimplex(const MilpModel& model, LpOptions options)
    : opt_(options), m_(model.num_constraints()), n_(model.num_variables()) {
  const int total = n_ + m_;
  lo_.resize(total);
  hi_.resize(total);
  cost_.assign(total, 0.0);
  val_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    const Variable& v = model.variable(j);
    lo_[j] = v.lower;
    hi_[j] = v.upper;
    cost_[j] = model.objective()[j];
    if (std::isfinite(lo_[j])) {
      val_[j] = lo_[j];
    } else if (std::isfinite(hi_[j])) {
      val_[j] = hi_[j];
    }
  }
  tab_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
  basic_.resize(m_);
  nonbasic_.resize(n_);
  for (int i = 0; i < m_; ++i) {
    const Constraint& c = model.constraint(i);
    const int logical = n_ + i;
    switch (c.relation) {
      case Relation::kLessEqual:
        lo_[logical] = -kInf;
        hi_[logical] = c.rhs;
        break;
      case Relation::kGreaterEqual:
        lo_[logical] = c.rhs;
        hi_[logical] = kInf;
        break;
      case Relation::kEqual:
        lo_[logical] = c.rhs;
        hi_[logical] = c.rhs;
        break;
    }
    double activity = 0.0;
    for (const Term& t : c.terms) {
      tab(i, t.var) += t.coef;
      activity += t.coef * val_[t.var];
    }
    val_[logical] = activity;
    basic_[i] = logical;
  }
  for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
  d_.assign(cost_.begin(), cost_.begin() + n_);
  scratch_.resize(n_);
  budget_ = opt_.max_pivots > 0 ? opt_.max_pivots
                                : 50LL * (m_ + n_) + 20000;
}

double BoundedSimplex::infeasibility(int var) const {
  const double x = val_[var];
  if (x < lo_[var] - opt_.feasibility_tol) return lo_[var] - x;
  if (x > hi_[var] + opt_.feasibility_tol) return x - hi_[var];
  return 0.0;
}

bool BoundedSimplex::primal_feasible() const {
  for (int i = 0; i < m_; ++i) {
    if (infeasibility(basic_[i]) > 0.0) return false;
  }
  return true;
}

bool BoundedSimplex::dual_feasible() const {
  for (int j = 0; j < n_; ++j) {
    const int k = nonbasic_[j];
    if (is_fixed(k)) continue;
    const bool at_lo = val_[k] == lo_[k];
    const bool at_hi = val_[k] == hi_[k];
    if (at_lo && d_[j] < -opt_.optimality_tol) return false;
    if (at_hi && d_[j] > opt_.optimality_tol) return false;
    if (!at_lo && !at_hi && std::abs(d_[j]) > opt_.optimality_tol) {
      return false;
    }
  }
  return true;
}

void BoundedSimplex::shift_nonbasic(int col, double delta) {
  if (delta == 0.0) return;
  val_[nonbasic_[col]] += delta;
  for (int i = 0; i < m_; ++i) {
    const double a = tab(i, col);
    if (a != 0.0) val_[basic_[i]] += a * delta;
  }
}

void BoundedSimplex::set_bounds(int var, double lower, double upper) {
  if (var < 0 || var >= n_ || lower > upper) {
    throw Error(ErrorCode::kInvalidInput, "bad bound change");
  }
  lo_[var] = lower;
  hi_[var] = upper;
  const auto it = std::find(nonbasic_.begin(), nonbasic_.end(), var);
  if (it == nonbasic_.end()) return;
  const int col = static_cast<int>(it - nonbasic_.begin());
  const double x = val_[var];
  double target = x;
  if (x < lower) {
    target = lower;
  } else if (x > upper) {
    target = upper;
  } else if (x != lower && x != upper) {
    if (d_[col] >= 0.0 && std::isfinite(lower)) {
      target = lower;
    } else if (std::isfinite(upper)) {
      target = upper;
    } else if (std::isfinite(lower)) {
      target = lower;
    }
  }
  shift_nonbasic(col, target - x);
  val_[var] = target;
}

void BoundedSimplex::pivot(int row, int col) {
  const double piv = tab(row, col);
  double* prow = &tab_[static_cast<std::size_t>(row) * n_];
  nz_.clear();
  for (int j = 0; j < n_; ++j) {
    if (j == col) continue;
    double v = prow[j];
    if (v == 0.0) continue;
    v = -v / piv;
    if (std::abs(v) < kFlush) v = 0.0;
    prow[j] = v;
    if (v != 0.0) nz_.push_back(j);
  }
  prow[col] = 1.0 / piv;
  nz_.push_back(col);

  for (int i = 0; i < m_; ++i) {
    if (i == row) continue;
    double* r = &tab_[static_cast<std::size_t>(i) * n_];
    const double f = r[col];
    if (f == 0.0) continue;
    r[col] = 0.0;
    for (int j : nz_) {
      double v = r[j] + f * prow[j];
      if (std::abs(v) < kFlush) v = 0.0;
      r[j] = v;
    }
  }
  const double fd = d_[col];
  if (fd != 0.0) {
    d_[col] = 0.0;
    for (int j : nz_) {
      double v = d_[j] + fd * prow[j];
      if (std::abs(v) < kFlush) v = 0.0;
      d_[j] = v;
    }
  }
  std::swap(basic_[row], nonbasic_[col]);
  if (++pivots_ % kRefreshEvery == 0) refresh();
}

void BoundedSimplex::refresh() {
  // Recompute basic values and reduced costs from the current tableau so that
  // incremental drift does not accumulate across many pivots.
  for (int i = 0; i < m_; ++i) {
    const double* r = &tab_[static_cast<std::size_t>(i) * n_];
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) {
      if (r[j] != 0.0) sum += r[j] * val_[nonbasic_[j]];
    }
    val_[basic_[i]] = sum;
  }
  for (int j = 0; j < n_; ++j) d_[j] = cost_[nonbasic_[j]];
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[basic_[i]];
    if (cb == 0.0) continue;
    const double* r = &tab_[static_cast<std::size_t>(i) * n_];
    for (int j = 0; j < n_; ++j) d_[j] += cb * r[j];
  }
}

void BoundedSimplex::begin_solve() {
  solve_start_ = pivots_;
  degenerate_streak_ = 0;
  bland_ = false;
}

double BoundedSimplex::phase_one_sum() const {
  double sum = 0.0;
  for (int i = 0; i < m_; ++i) sum += infeasibility(basic_[i]);
  return sum;
}

void BoundedSimplex::count_pivot(bool degenerate) {
  const std::int64_t used = pivots_ - solve_start_;
  if (used > budget_) {
    throw Error(ErrorCode::kNumericFailure,
                "simplex pivot budget exhausted after " +
                    std::to_string(used) + " pivots");
  }
  if (used % 64 == 63 && std::chrono::steady_clock::now() > opt_.deadline) {
    throw Error(ErrorCode::kTimeLimit, "simplex passed its deadline");
  }
  if (degenerate) {
    if (++degenerate_streak_ > opt_.bland_after) bland_ = true;
  } else {
    degenerate_streak_ = 0;
    bland_ = false;
  }
}

bool BoundedSimplex::primal_step(bool phase_one, LpStatus* status) {
  const double* price = d_.data();
  if (phase_one) {
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int k = basic_[i];
      double w = 0.0;
      if (val_[k] < lo_[k] - opt_.feasibility_tol) {
        w = -1.0;
      } else if (val_[k] > hi_[k] + opt_.feasibility_tol) {
        w = 1.0;
      }
      if (w == 0.0) continue;
      const double* r = &tab_[static_cast<std::size_t>(i) * n_];
      for (int j = 0; j < n_; ++j) scratch_[j] += w * r[j];
    }
    price = scratch_.data();
  }

  int enter = -1;
  int dir = 0;
  double best = 0.0;
  for (int j = 0; j < n_; ++j) {
    const int k = nonbasic_[j];
    if (is_fixed(k)) continue;
    const double dj = price[j];
    int cand_dir = 0;
    if (dj < -opt_.optimality_tol && val_[k] < hi_[k]) {
      cand_dir = 1;
    } else if (dj > opt_.optimality_tol && val_[k] > lo_[k]) {
      cand_dir = -1;
    }
    if (cand_dir == 0) continue;
    const double score = std::abs(dj);
    if (enter < 0) {
      enter = j;
      dir = cand_dir;
      best = score;
      continue;
    }
    const bool better = bland_ ? k < nonbasic_[enter] : score > best;
    if (better) {
      enter = j;
      dir = cand_dir;
      best = score;
    }
  }
  if (enter < 0) {
    *status = phase_one ? LpStatus::kInfeasible : LpStatus::kOptimal;
    return false;
  }

  const int e = nonbasic_[enter];
  double theta = hi_[e] - lo_[e];  // bound flip, may be +inf
  int leave = -1;
  double leave_target = 0.0;
  double leave_alpha = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double alpha = tab(i, enter) * dir;
    if (std::abs(alpha) <= opt_.pivot_tol) continue;
    const int k = basic_[i];
    const double x = val_[k];
    double limit = kInf;
    double target = 0.0;
    const bool below = x < lo_[k] - opt_.feasibility_tol;
    const bool above = x > hi_[k] + opt_.feasibility_tol;
    if (phase_one && below) {
      if (alpha > 0.0) {
        limit = (lo_[k] - x) / alpha;
        target = lo_[k];
      }
    } else if (phase_one && above) {
      if (alpha < 0.0) {
        limit = (x - hi_[k]) / -alpha;
        target = hi_[k];
      }
    } else if (alpha > 0.0) {
      if (std::isfinite(hi_[k])) {
        limit = std::max(0.0, (hi_[k] - x) / alpha);
        target = hi_[k];
      }
    } else if (std::isfinite(lo_[k])) {
      limit = std::max(0.0, (x - lo_[k]) / -alpha);
      target = lo_[k];
    }
    if (!std::isfinite(limit)) continue;
    bool take = false;
    if (limit < theta - kTieEps) {
      take = true;
    } else if (limit <= theta + kTieEps) {
      if (leave < 0) {
        // Prefer a real pivot over a bound flip on ties.
        take = true;
      } else if (bland_) {
        take = k < basic_[leave];
      } else {
        take = std::abs(alpha) > std::abs(leave_alpha);
      }
    }
    if (take) {
      theta = std::min(theta, limit);
      leave = i;
      leave_target = target;
      leave_alpha = alpha;
    }
  }

  if (!std::isfinite(theta)) {
    if (phase_one) {
      throw Error(ErrorCode::kNumericFailure, "unbounded phase-1 ray");
    }
    *status = LpStatus::kUnbounded;
    return false;
  }

  count_pivot(theta <= kTieEps);
  if (leave < 0) {
    // Bound flip: the entering column moves to its opposite bound.
    const double target = dir > 0 ? hi_[e] : lo_[e];
    shift_nonbasic(enter, target - val_[e]);
    val_[e] = target;
    ++pivots_;
    return true;
  }
  shift_nonbasic(enter, dir * theta);
  val_[basic_[leave]] = leave_target;
  pivot(leave, enter);
  return true;
}

bool BoundedSimplex::dual_step(LpStatus* status) {
  int row = -1;
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double inf = infeasibility(basic_[i]);
    if (inf <= 0.0) continue;
    const bool better =
        row < 0 || (bland_ ? basic_[i] < basic_[row] : inf > worst);
    if (better) {
      row = i;
      worst = inf;
    }
  }
  if (row < 0) {
    *status = LpStatus::kOptimal;
    return false;
  }
  const int leaving = basic_[row];
  const bool raise = val_[leaving] < lo_[leaving];
  const double target = raise ? lo_[leaving] : hi_[leaving];

  const double* r = &tab_[static_cast<std::size_t>(row) * n_];
  int enter = -1;
  double best_ratio = kInf;
  double best_alpha = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double a = r[j];
    if (std::abs(a) <= opt_.pivot_tol) continue;
    const int k = nonbasic_[j];
    if (is_fixed(k)) continue;
    const bool can_inc = val_[k] < hi_[k];
    const bool can_dec = val_[k] > lo_[k];
    // Moving k in direction s changes the leaving row by a * s.
    const bool ok = raise ? ((a > 0.0 && can_inc) || (a < 0.0 && can_dec))
                          : ((a < 0.0 && can_inc) || (a > 0.0 && can_dec));
    if (!ok) continue;
    const double ratio = std::abs(d_[j]) / std::abs(a);
    bool take = false;
    if (ratio < best_ratio - kTieEps) {
      take = true;
    } else if (ratio <= best_ratio + kTieEps) {
      take = bland_ ? k < nonbasic_[enter]
                    : std::abs(a) > std::abs(best_alpha);
    }
    if (take) {
      enter = j;
      best_ratio = std::min(best_ratio, ratio);
      best_alpha = a;
    }
  }
  if (enter < 0) {
    *status = LpStatus::kInfeasible;
    return false;
  }
  count_pivot(best_ratio <= kTieEps);
  const double delta = (target - val_[leaving]) / r[enter];
  shift_nonbasic(enter, delta);
  val_[leaving] = target;
  pivot(row, enter);
  return true;
}

LpStatus BoundedSimplex::solve_primal() {
  LpStatus status = LpStatus::kOptimal;
  begin_solve();
  // Exact phase 1 never increases the infeasibility sum; growth means the
  // tableau has drifted.
  double best_sum = kInf;
  while (true) {
    const bool phase_one = !primal_feasible();
    if (phase_one && (pivots_ - solve_start_) % kRefreshEvery == 0) {
      const double sum = phase_one_sum();
      if (sum > best_sum * (1.0 + 1e-6) + 1e-6) {
        throw Error(ErrorCode::kNumericFailure,
                    "phase 1 infeasibility grew from " +
                        std::to_string(best_sum) + " to " +
                        std::to_string(sum));
      }
      best_sum = std::min(best_sum, sum);
    }
    if (!primal_step(phase_one, &status)) {
      if (phase_one || status != LpStatus::kOptimal) return status;
      // Phase 2 optimum; make sure drift did not reopen infeasibility.
      refresh();
      if (primal_feasible()) return status;
    }
  }
}

LpStatus BoundedSimplex::solve_dual() {
  LpStatus status = LpStatus::kOptimal;
  begin_solve();
  while (dual_step(&status)) {
  }
  if (status != LpStatus::kOptimal) return status;
  // Dual simplex ends primal feasible; polish with primal in case tolerance
  // effects left a reduced cost with the wrong sign.
  return solve_primal();
}

LpStatus BoundedSimplex::solve() {
  if (!primal_feasible() && dual_feasible()) return solve_dual();
  return solve_primal();
}

double BoundedSimplex::objective() const {
  double z = 0.0;
  for (int j = 0; j < n_; ++j) z += cost_[j] * val_[j];
  return z;
}

std::vector<double> BoundedSimplex::values() const {
  return {val_.begin(), val_.begin() + n_};
}

LpResult solve_lp(const MilpModel& model, const LpOptions& options) {
  model.validate();
  BoundedSimplex simplex(model, options);
  LpResult result;
  result.status = simplex.solve_primal();
  result.pivots = simplex.pivots();
  if (result.status == LpStatus::kOptimal) {
    result.values = simplex.values();
    result.objective = simplex.objective();
  }
  return result;
}

}  // namespace paamp::milp
