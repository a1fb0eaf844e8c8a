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

#ifndef PAAMP_TESTS_ORACLES_RANDOM_MILP_HPP_
#define PAAMP_TESTS_ORACLES_RANDOM_MILP_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "paamp/milp/model.hpp"

namespace oracle {

// Random bounded MILP: `binaries` 0/1 columns, `continuous` columns in a box,
// `rows` mixed-relation rows. Roughly a third of the rows are big-M style
// disjunction rows tying a continuous column to a binary switch, like the
// collision rows the planner emits. Some instances come out infeasible.
inline paamp::milp::MilpModel random_milp(std::uint64_t seed, int binaries,
                                          int continuous, int rows) {
  using paamp::milp::Relation;
  using paamp::milp::Term;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_bin(0, binaries - 1);
  std::uniform_int_distribution<int> pick_cont(0, continuous - 1);

  paamp::milp::MilpModel m;
  for (int b = 0; b < binaries; ++b) {
    const int v = m.add_binary("b" + std::to_string(b));
    m.set_objective(v, coef(rng));
  }
  for (int c = 0; c < continuous; ++c) {
    const int v = m.add_continuous("x" + std::to_string(c), -5.0, 5.0);
    m.set_objective(v, coef(rng));
  }
  for (int r = 0; r < rows; ++r) {
    std::vector<Term> terms;
    const std::string name = "r" + std::to_string(r);
    if (binaries > 0 && continuous > 0 && r % 3 == 0) {
      // x_c >= t - M (1 - b)  <=>  x_c - M b >= t - M
      const double big_m = 20.0;
      const double t = coef(rng);
      terms.push_back({binaries + pick_cont(rng), unit(rng) < 0.5 ? 1.0 : -1.0});
      terms.push_back({pick_bin(rng), -big_m});
      m.add_constraint(name, terms, Relation::kGreaterEqual, t - big_m);
      continue;
    }
    double sum_abs = 0.0;
    for (int j = 0; j < binaries + continuous; ++j) {
      if (unit(rng) < 0.35) {
        const double a = coef(rng);
        terms.push_back({j, a});
        sum_abs += std::abs(a);
      }
    }
    const double rhs = coef(rng) * 0.25 * (1.0 + sum_abs);
    const double u = unit(rng);
    const Relation rel = u < 0.45   ? Relation::kLessEqual
                         : u < 0.9 ? Relation::kGreaterEqual
                                   : Relation::kEqual;
    m.add_constraint(name, terms, rel, rhs);
  }
  return m;
}

}  // namespace oracle

#endif  // PAAMP_TESTS_ORACLES_RANDOM_MILP_HPP_
