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

#ifndef PAAMP_SRC_MILP_PROPAGATION_HPP_
#define PAAMP_SRC_MILP_PROPAGATION_HPP_

#include <vector>

#include "paamp/milp/model.hpp"

namespace paamp::milp {

// Activity-based bound tightening over the rows of a model. Binary bounds are
// rounded to integers; continuous bounds only move by more than a small
// threshold so the fixpoint loop stays finite.
class Propagator {
 public:
  explicit Propagator(const MilpModel& model);

  // Tightens `lo`/`hi` in place. Returns false when some row cannot be
  // satisfied within the bounds.
  bool propagate(std::vector<double>& lo, std::vector<double>& hi) const;

 private:
  // Every row stored as sum coef * x <= rhs.
  struct Row {
    std::vector<int> var;
    std::vector<double> coef;
    double rhs = 0.0;
  };

  void add_row(const Constraint& c, double sign);

  std::vector<Row> rows_;
  std::vector<std::vector<int>> rows_of_;
  std::vector<bool> binary_;
};

}  // namespace paamp::milp

#endif  // PAAMP_SRC_MILP_PROPAGATION_HPP_
