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

#ifndef PAAMP_TESTS_ORACLES_ROW_COUNT_HPP_
#define PAAMP_TESTS_ORACLES_ROW_COUNT_HPP_

#include <set>
#include <string>
#include <vector>

#include "paamp/milp/model.hpp"

namespace oracle {

// Binaries classified by the rows that use them, from column names alone:
// a row touching states of two agents is a collision row, of one agent an
// obstacle row. Rows made only of binaries are cover rows.
struct RowCount {
  std::set<int> collision;
  std::set<int> obstacle;
  int cover_rows = 0;
};

inline int agent_of(const std::string& name) {
  if (name.rfind("x_", 0) != 0) return -1;
  return std::stoi(name.substr(2, name.find('_', 2) - 2));
}

inline RowCount count_rows(const paamp::milp::MilpModel& m) {
  RowCount c;
  for (const auto& row : m.constraints()) {
    std::set<int> agents;
    std::vector<int> bins;
    bool only_binaries = true;
    for (const auto& term : row.terms) {
      const auto& v = m.variable(term.var);
      if (v.kind == paamp::milp::VarKind::kBinary) {
        bins.push_back(term.var);
      } else {
        only_binaries = false;
        const int a = agent_of(v.name);
        if (a >= 0) agents.insert(a);
      }
    }
    if (bins.empty()) continue;
    if (only_binaries) {
      ++c.cover_rows;
    } else if (agents.size() >= 2) {
      c.collision.insert(bins.begin(), bins.end());
    } else if (agents.size() == 1) {
      c.obstacle.insert(bins.begin(), bins.end());
    }
  }
  return c;
}

}  // namespace oracle

#endif  // PAAMP_TESTS_ORACLES_ROW_COUNT_HPP_
