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

#include "paamp/milp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <utility>

#include "milp/propagation.hpp"
#include "paamp/error.hpp"

namespace paamp::milp {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kBoundEps = 1e-9;
constexpr double kRowTol = 1e-6;

struct Node {
  std::int64_t parent = -1;
  int branch_var = -1;
  double branch_value = 0.0;
  double bound = -kInf;
};

struct Snapshot {
  BoundedSimplex simplex;
  double bound = 0.0;
  int children_left = 2;
};

// Frontier ordering: lowest bound first, then oldest node.
struct FrontierEntry {
  double bound;
  std::int64_t id;
  bool operator>(const FrontierEntry& o) const {
    if (bound != o.bound) return bound > o.bound;
    return id > o.id;
  }
};

class Search {
 public:
  Search(const MilpModel& model, const BnbOptions& options)
      : model_(model), opt_(options), start_(Clock::now()), propagator_(model) {
    if (opt_.time_limit_seconds < 1e9) {
      opt_.lp.deadline =
          start_ + std::chrono::duration_cast<Clock::duration>(
                       std::chrono::duration<double>(opt_.time_limit_seconds));
    }
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).kind == VarKind::kBinary) binaries_.push_back(j);
    }
  }

  SolveOutcome run();

 private:
  SolveOutcome search();
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool out_of_time() const { return elapsed() > opt_.time_limit_seconds; }

  // Most fractional binary, ties to the lowest index; -1 when integral.
  int pick_branch(const BoundedSimplex& lp) const;
  void try_incumbent(const BoundedSimplex& lp);
  void dive(BoundedSimplex lp, std::vector<double> lo, std::vector<double> hi);
  // Node LP from a fresh factorization; nullopt when it fails numerically too.
  std::optional<BoundedSimplex> cold_solve(const std::vector<double>& lo,
                                           const std::vector<double>& hi,
                                           LpStatus* status) const;
  // Bounds of node `id` after propagation; false when propagation proves the
  // node infeasible.
  bool node_bounds(std::int64_t id, std::vector<double>& lo,
                   std::vector<double>& hi) const;
  // Pushes binary fixings from `lo`/`hi` into the LP.
  void apply_fixings(BoundedSimplex& lp, const std::vector<double>& lo,
                     const std::vector<double>& hi) const;
  BoundedSimplex restore(std::int64_t id);
  void store_snapshot(std::int64_t id, const BoundedSimplex& lp, double bound);
  bool gap_closed(double global_bound) const;
  SolveOutcome finish(SolveStatus status, double bound);

  const MilpModel& model_;
  BnbOptions opt_;
  Clock::time_point start_;
  Propagator propagator_;
  std::vector<int> binaries_;
  std::vector<double> root_lo_;
  std::vector<double> root_hi_;
  std::vector<Node> nodes_;
  std::optional<BoundedSimplex> root_;
  std::map<std::int64_t, Snapshot> snapshots_;
  std::size_t snapshot_size_ = 0;
  double incumbent_value_ = kInf;
  std::vector<double> incumbent_;
  std::int64_t processed_ = 0;
  double global_bound_ = -kInf;
  // Smallest parent bound among nodes dropped after numeric failures.
  double lost_bound_ = kInf;
};

int Search::pick_branch(const BoundedSimplex& lp) const {
  int best = -1;
  double best_frac = 0.0;
  for (int j : binaries_) {
    const double v = lp.value(j);
    const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
    if (frac <= opt_.integrality_tol) continue;
    if (best < 0 || frac > best_frac + 1e-12) {
      best = j;
      best_frac = frac;
    }
  }
  return best;
}

void Search::try_incumbent(const BoundedSimplex& lp) {
  // Fix every binary at its rounded value and reoptimize so the stored point
  // has exact 0/1 entries and rows that hold to solver precision.
  BoundedSimplex fixed = lp;
  for (int j : binaries_) {
    const double r = std::round(lp.value(j));
    fixed.set_bounds(j, r, r);
  }
  std::vector<double> values;
  try {
    if (fixed.solve() == LpStatus::kOptimal) values = fixed.values();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNumericFailure) throw;
  }
  if (values.empty() || model_.max_violation(values) > kRowTol) {
    MilpModel exact = model_;
    for (int j : binaries_) {
      const double r = std::round(lp.value(j));
      exact.set_bounds(j, r, r);
    }
    try {
      const LpResult cold = solve_lp(exact, opt_.lp);
      if (cold.status != LpStatus::kOptimal) return;
      values = cold.values;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNumericFailure) throw;
      return;
    }
  }
  for (int j : binaries_) values[j] = std::round(values[j]);
  if (model_.max_violation(values) > kRowTol) return;
  const double z = model_.objective_value(values);
  if (z < incumbent_value_ - kBoundEps) {
    incumbent_value_ = z;
    incumbent_ = std::move(values);
  }
}

void Search::dive(BoundedSimplex lp, std::vector<double> lo,
                  std::vector<double> hi) {
  // Rounding dive: repeatedly fix the least fractional binary to its nearest
  // value (the other value on failure), propagate, and reoptimize until the
  // LP turns integral.
  for (std::size_t depth = 0; depth <= binaries_.size(); ++depth) {
    if (out_of_time()) return;
    int var = -1;
    double best = 1.0;
    for (int j : binaries_) {
      const double v = lp.value(j);
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac <= opt_.integrality_tol) continue;
      if (frac < best - 1e-12) {
        best = frac;
        var = j;
      }
    }
    if (var < 0) {
      try_incumbent(lp);
      return;
    }
    const double first = std::round(lp.value(var));
    bool solved = false;
    for (double value : {first, 1.0 - first}) {
      std::vector<double> next_lo = lo;
      std::vector<double> next_hi = hi;
      next_lo[var] = next_hi[var] = value;
      if (!propagator_.propagate(next_lo, next_hi)) continue;
      BoundedSimplex trial = lp;
      apply_fixings(trial, next_lo, next_hi);
      try {
        if (trial.solve() != LpStatus::kOptimal) continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNumericFailure) throw;
        return;
      }
      lp = std::move(trial);
      lo = std::move(next_lo);
      hi = std::move(next_hi);
      solved = true;
      break;
    }
    if (!solved) return;
    if (lp.objective() >= incumbent_value_ - kBoundEps) return;
  }
}

std::optional<BoundedSimplex> Search::cold_solve(const std::vector<double>& lo,
                                                const std::vector<double>& hi,
                                                LpStatus* status) const {
  try {
    BoundedSimplex lp(model_, opt_.lp);
    apply_fixings(lp, lo, hi);
    *status = lp.solve_primal();
    return lp;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNumericFailure) throw;
    return std::nullopt;
  }
}

bool Search::node_bounds(std::int64_t id, std::vector<double>& lo,
                         std::vector<double>& hi) const {
  lo = root_lo_;
  hi = root_hi_;
  for (std::int64_t cur = id; cur > 0; cur = nodes_[cur].parent) {
    const Node& n = nodes_[cur];
    lo[n.branch_var] = hi[n.branch_var] = n.branch_value;
  }
  return propagator_.propagate(lo, hi);
}

void Search::apply_fixings(BoundedSimplex& lp, const std::vector<double>& lo,
                           const std::vector<double>& hi) const {
  for (int j : binaries_) {
    if (lo[j] == hi[j] && (lp.lower(j) != lo[j] || lp.upper(j) != hi[j])) {
      lp.set_bounds(j, lo[j], hi[j]);
    }
  }
}

BoundedSimplex Search::restore(std::int64_t id) {
  const Node& node = nodes_[id];
  auto it = snapshots_.find(node.parent);
  if (it != snapshots_.end()) {
    BoundedSimplex lp = (--it->second.children_left == 0)
                            ? std::move(it->second.simplex)
                            : it->second.simplex;
    if (it->second.children_left == 0) snapshots_.erase(it);
    lp.set_bounds(node.branch_var, node.branch_value, node.branch_value);
    return lp;
  }
  BoundedSimplex lp = *root_;
  for (std::int64_t cur = id; cur > 0; cur = nodes_[cur].parent) {
    const Node& n = nodes_[cur];
    lp.set_bounds(n.branch_var, n.branch_value, n.branch_value);
  }
  return lp;
}

void Search::store_snapshot(std::int64_t id, const BoundedSimplex& lp,
                            double bound) {
  if (snapshot_size_ == 0) return;
  const std::size_t cap = opt_.snapshot_bytes / snapshot_size_;
  if (cap == 0) return;
  while (snapshots_.size() >= cap) {
    // Evict the basis least likely to be needed soon: the worst bound.
    auto worst = snapshots_.begin();
    for (auto it = snapshots_.begin(); it != snapshots_.end(); ++it) {
      if (it->second.bound > worst->second.bound) worst = it;
    }
    snapshots_.erase(worst);
  }
  snapshots_.emplace(id, Snapshot{lp, bound, 2});
}

bool Search::gap_closed(double global_bound) const {
  if (incumbent_.empty()) return false;
  if (opt_.first_incumbent) return true;
  return incumbent_value_ - global_bound <= opt_.gap + kBoundEps;
}

SolveOutcome Search::finish(SolveStatus status, double bound) {
  SolveOutcome out;
  out.status = status;
  out.nodes = processed_;
  out.best_bound = bound;
  if (!incumbent_.empty()) {
    out.objective = incumbent_value_;
    out.values = std::move(incumbent_);
    if (status == SolveStatus::kFeasibleWithinGap &&
        out.objective - bound <= kBoundEps) {
      out.status = SolveStatus::kOptimal;
    }
  }
  out.wall_seconds = elapsed();
  return out;
}

SolveOutcome Search::run() {
  try {
    return search();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTimeLimit) throw;
    return finish(SolveStatus::kTimeLimit,
                  std::min(global_bound_, incumbent_value_));
  }
}

SolveOutcome Search::search() {
  model_.validate();
  processed_ = 1;
  for (const Variable& v : model_.variables()) {
    root_lo_.push_back(v.lower);
    root_hi_.push_back(v.upper);
  }
  if (!propagator_.propagate(root_lo_, root_hi_)) {
    return finish(SolveStatus::kInfeasible, kInf);
  }
  root_.emplace(model_, opt_.lp);
  apply_fixings(*root_, root_lo_, root_hi_);
  const LpStatus root_status = root_->solve_primal();
  if (root_status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kInvalidInput,
                "branch-and-bound needs a bounded LP relaxation");
  }
  if (root_status == LpStatus::kInfeasible) {
    return finish(SolveStatus::kInfeasible, kInf);
  }
  snapshot_size_ = sizeof(double) * (static_cast<std::size_t>(
                                          root_->num_rows()) *
                                          root_->num_structurals() +
                                      4 * (root_->num_rows() +
                                           root_->num_structurals()));
  const double root_bound = root_->objective();
  nodes_.push_back({-1, -1, 0.0, root_bound});

  std::priority_queue<FrontierEntry, std::vector<FrontierEntry>,
                      std::greater<FrontierEntry>>
      frontier;
  auto expand = [&](std::int64_t id, const BoundedSimplex& lp, double bound,
                    const std::vector<double>& lo,
                    const std::vector<double>& hi) {
    const int var = pick_branch(lp);
    if (var < 0) {
      try_incumbent(lp);
      return;
    }
    if (opt_.diving && (id == 0 || processed_ % opt_.dive_every == 0)) {
      dive(lp, lo, hi);
      if (bound >= incumbent_value_ - kBoundEps) return;
    }
    store_snapshot(id, lp, bound);
    // Down branch first so it is the older sibling on ties.
    for (double value : {0.0, 1.0}) {
      nodes_.push_back({id, var, value, bound});
      frontier.push({bound, static_cast<std::int64_t>(nodes_.size()) - 1});
    }
  };

  expand(0, *root_, root_bound, root_lo_, root_hi_);

  while (!frontier.empty()) {
    const double global_bound = std::min(
        {frontier.top().bound, incumbent_value_, lost_bound_});
    global_bound_ = global_bound;
    if (gap_closed(global_bound)) {
      return finish(SolveStatus::kFeasibleWithinGap, global_bound);
    }
    if (processed_ >= opt_.node_limit) {
      return finish(SolveStatus::kNodeLimit, global_bound);
    }
    if (out_of_time()) return finish(SolveStatus::kTimeLimit, global_bound);

    const FrontierEntry entry = frontier.top();
    frontier.pop();
    if (entry.bound >= incumbent_value_ - kBoundEps) {
      // Drop the cached parent basis together with its last child.
      auto it = snapshots_.find(nodes_[entry.id].parent);
      if (it != snapshots_.end() && --it->second.children_left == 0) {
        snapshots_.erase(it);
      }
      continue;
    }
    BoundedSimplex lp = restore(entry.id);
    ++processed_;
    std::vector<double> lo;
    std::vector<double> hi;
    if (!node_bounds(entry.id, lo, hi)) continue;
    apply_fixings(lp, lo, hi);
    LpStatus status = LpStatus::kInfeasible;
    try {
      status = lp.solve();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNumericFailure) throw;
      auto cold = cold_solve(lo, hi, &status);
      if (!cold) {
        lost_bound_ = std::min(lost_bound_, entry.bound);
        continue;
      }
      lp = std::move(*cold);
    }
    if (status != LpStatus::kOptimal) continue;
    const double z = lp.objective();
    nodes_[entry.id].bound = z;
    if (z >= incumbent_value_ - kBoundEps) continue;
    expand(entry.id, lp, z, lo, hi);
  }
  if (lost_bound_ < incumbent_value_ - kBoundEps) {
    // Dropped nodes leave the search incomplete.
    const double bound = std::min(lost_bound_, incumbent_value_);
    if (gap_closed(bound)) {
      return finish(SolveStatus::kFeasibleWithinGap, bound);
    }
    return finish(SolveStatus::kNodeLimit, bound);
  }
  if (incumbent_.empty()) return finish(SolveStatus::kInfeasible, kInf);
  return finish(SolveStatus::kOptimal, incumbent_value_);
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasibleWithinGap:
      return "feasible-within-gap";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNodeLimit:
      return "node-limit";
    case SolveStatus::kTimeLimit:
      return "time-limit";
  }
  return "unknown";
}

bool root_proves_infeasible(const MilpModel& model, const LpOptions& options) {
  model.validate();
  std::vector<double> lo;
  std::vector<double> hi;
  for (const Variable& v : model.variables()) {
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }
  if (!Propagator(model).propagate(lo, hi)) return true;
  BoundedSimplex lp(model, options);
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).kind == VarKind::kBinary && lo[j] == hi[j]) {
      lp.set_bounds(j, lo[j], hi[j]);
    }
  }
  try {
    return lp.solve_primal() == LpStatus::kInfeasible;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNumericFailure) throw;
    return false;
  }
}

SolveOutcome branch_and_bound(const MilpModel& model,
                              const BnbOptions& options) {
  Search search(model, options);
  return search.run();
}

}  // namespace paamp::milp
