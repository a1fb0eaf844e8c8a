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

#ifndef PAAMP_MILP_MODEL_HPP_
#define PAAMP_MILP_MODEL_HPP_

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace paamp::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;
};

struct Term {
  int var = -1;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// A minimization MILP: sparse rows over continuous and binary columns.
// Binary columns always carry bounds [0, 1]. The model is a plain value; it is
// built once by a transcriber and then only read by the solvers.
class MilpModel {
 public:
  int add_continuous(std::string name, double lower = 0.0,
                     double upper = kInf);
  int add_binary(std::string name);

  // Duplicate variable references inside one row are merged.
  int add_constraint(std::string name, std::vector<Term> terms,
                     Relation relation, double rhs);

  void set_objective(int var, double coef);
  void add_objective(int var, double coef);

  // Overrides the bounds of any variable; used to fix binaries when
  // enumerating or probing. Binary bounds must stay inside [0, 1].
  void set_bounds(int var, double lower, double upper);

  // Drops the named rows. Variables are left untouched.
  void remove_constraints(std::span<const int> rows);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_binaries() const;

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }
  const Variable& variable(int i) const { return variables_.at(i); }
  const Constraint& constraint(int i) const { return constraints_.at(i); }

  // Throws Error(kInvalidInput) when an invariant is broken.
  void validate() const;

  double objective_value(std::span<const double> values) const;

  // Largest violation of any row or bound by `values` (0 when feasible).
  // Recomputed from the rows, never from solver bookkeeping.
  double max_violation(std::span<const double> values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;
};

double row_activity(const Constraint& row, std::span<const double> values);

}  // namespace paamp::milp

#endif  // PAAMP_MILP_MODEL_HPP_
