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

#include "paamp/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "paamp/error.hpp"

namespace paamp::milp {

int MilpModel::add_continuous(std::string name, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw Error(ErrorCode::kInvalidInput,
                "variable '" + name + "' has empty bound interval");
  }
  variables_.push_back({std::move(name), VarKind::kContinuous, lower, upper});
  objective_.push_back(0.0);
  return num_variables() - 1;
}

int MilpModel::add_binary(std::string name) {
  variables_.push_back({std::move(name), VarKind::kBinary, 0.0, 1.0});
  objective_.push_back(0.0);
  return num_variables() - 1;
}

int MilpModel::add_constraint(std::string name, std::vector<Term> terms,
                              Relation relation, double rhs) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw Error(ErrorCode::kInvalidInput,
                  "row '" + name + "' references unknown variable");
    }
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  constraints_.push_back({std::move(name), std::move(merged), relation, rhs});
  return num_constraints() - 1;
}

void MilpModel::set_objective(int var, double coef) {
  objective_.at(var) = coef;
}

void MilpModel::add_objective(int var, double coef) {
  objective_.at(var) += coef;
}

void MilpModel::set_bounds(int var, double lower, double upper) {
  Variable& v = variables_.at(var);
  if (lower > upper) {
    throw Error(ErrorCode::kInvalidInput,
                "variable '" + v.name + "' given empty bounds");
  }
  if (v.kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "binary '" + v.name + "' bounds leave [0, 1]");
  }
  v.lower = lower;
  v.upper = upper;
}

void MilpModel::remove_constraints(std::span<const int> rows) {
  std::vector<bool> drop(constraints_.size(), false);
  for (int r : rows) drop.at(r) = true;
  std::vector<Constraint> kept;
  kept.reserve(constraints_.size());
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (!drop[i]) kept.push_back(std::move(constraints_[i]));
  }
  constraints_ = std::move(kept);
}

int MilpModel::num_binaries() const {
  return static_cast<int>(
      std::count_if(variables_.begin(), variables_.end(), [](const Variable& v) {
        return v.kind == VarKind::kBinary;
      }));
}

void MilpModel::validate() const {
  for (const Variable& v : variables_) {
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  "binary '" + v.name + "' bounds leave [0, 1]");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw Error(ErrorCode::kInvalidInput,
                  "variable '" + v.name + "' has invalid bounds");
    }
  }
  for (const Constraint& c : constraints_) {
    if (!std::isfinite(c.rhs)) {
      throw Error(ErrorCode::kInvalidInput,
                  "row '" + c.name + "' has non-finite right-hand side");
    }
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables() || !std::isfinite(t.coef)) {
        throw Error(ErrorCode::kInvalidInput,
                    "row '" + c.name + "' has an invalid term");
      }
    }
  }
  for (double c : objective_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite objective coefficient");
    }
  }
}

double row_activity(const Constraint& row, std::span<const double> values) {
  double sum = 0.0;
  for (const Term& t : row.terms) sum += t.coef * values[t.var];
  return sum;
}

double MilpModel::objective_value(std::span<const double> values) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) {
    sum += objective_[j] * values[j];
  }
  return sum;
}

double MilpModel::max_violation(std::span<const double> values) const {
  if (values.size() != variables_.size()) return kInf;
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    worst = std::max(worst, variables_[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables_[j].upper);
  }
  for (const Constraint& c : constraints_) {
    const double lhs = row_activity(c, values);
    switch (c.relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, c.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
    }
  }
  return worst;
}

}  // namespace paamp::milp
