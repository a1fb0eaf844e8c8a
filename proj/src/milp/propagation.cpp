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

#include "milp/propagation.hpp"

#include <cmath>
#include <deque>

namespace paamp::milp {
namespace {

constexpr double kFeasTol = 1e-6;
constexpr double kMinMove = 1e-7;
constexpr double kIntTol = 1e-6;

}  // namespace

Propagator::Propagator(const MilpModel& model)
    : rows_of_(model.num_variables()), binary_(model.num_variables()) {
  for (int j = 0; j < model.num_variables(); ++j) {
    binary_[j] = model.variable(j).kind == VarKind::kBinary;
  }
  for (const Constraint& c : model.constraints()) {
    if (c.relation != Relation::kGreaterEqual) add_row(c, 1.0);
    if (c.relation != Relation::kLessEqual) add_row(c, -1.0);
  }
}

void Propagator::add_row(const Constraint& c, double sign) {
  Row row;
  row.rhs = sign * c.rhs;
  for (const Term& t : c.terms) {
    if (std::abs(t.coef) < 1e-12) continue;
    row.var.push_back(t.var);
    row.coef.push_back(sign * t.coef);
  }
  const int id = static_cast<int>(rows_.size());
  for (int v : row.var) rows_of_[v].push_back(id);
  rows_.push_back(std::move(row));
}

bool Propagator::propagate(std::vector<double>& lo,
                           std::vector<double>& hi) const {
  std::deque<int> queue;
  std::vector<bool> queued(rows_.size(), true);
  for (int r = 0; r < static_cast<int>(rows_.size()); ++r) queue.push_back(r);
  // Continuous chains can creep forever in tiny steps; cap the work.
  long budget = 50 * static_cast<long>(rows_.size()) + 1000;

  auto contribution = [&](double a, int v) {
    return a > 0 ? a * lo[v] : a * hi[v];
  };

  while (!queue.empty() && budget-- > 0) {
    const int r = queue.front();
    queue.pop_front();
    queued[r] = false;
    const Row& row = rows_[r];
    double min_act = 0.0;
    int infinite = 0;
    int infinite_at = -1;
    for (std::size_t k = 0; k < row.var.size(); ++k) {
      const double c = contribution(row.coef[k], row.var[k]);
      if (std::isinf(c)) {
        ++infinite;
        infinite_at = static_cast<int>(k);
      } else {
        min_act += c;
      }
    }
    if (infinite == 0 && min_act > row.rhs + kFeasTol * (1.0 + std::abs(row.rhs))) {
      return false;
    }
    if (infinite > 1) continue;
    for (std::size_t k = 0; k < row.var.size(); ++k) {
      if (infinite == 1 && static_cast<int>(k) != infinite_at) continue;
      const int v = row.var[k];
      const double a = row.coef[k];
      const double rest =
          infinite == 1 ? min_act : min_act - contribution(a, v);
      const double limit = (row.rhs - rest) / a;
      bool moved = false;
      if (a > 0) {
        double next = binary_[v] ? std::floor(limit + kIntTol) : limit;
        if (next < hi[v] - kMinMove * (1.0 + std::abs(next))) {
          hi[v] = next;
          moved = true;
        }
      } else {
        double next = binary_[v] ? std::ceil(limit - kIntTol) : limit;
        if (next > lo[v] + kMinMove * (1.0 + std::abs(next))) {
          lo[v] = next;
          moved = true;
        }
      }
      if (!moved) continue;
      if (lo[v] > hi[v] + kFeasTol * (1.0 + std::abs(hi[v]))) return false;
      if (lo[v] > hi[v]) {
        // Within tolerance: collapse to a point.
        const double mid = binary_[v] ? std::round(0.5 * (lo[v] + hi[v]))
                                      : 0.5 * (lo[v] + hi[v]);
        lo[v] = hi[v] = mid;
      }
      for (int other : rows_of_[v]) {
        if (!queued[other]) {
          queued[other] = true;
          queue.push_back(other);
        }
      }
    }
  }
  return true;
}

}  // namespace paamp::milp
