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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles/random_milp.hpp"
#include "paamp/error.hpp"
#include "paamp/milp/branch_and_bound.hpp"
#include "paamp/milp/lp_writer.hpp"
#include "paamp/milp/simplex.hpp"

namespace {

using namespace paamp::milp;

struct Knapsack {
  std::vector<double> value{10, 13, 7, 8, 15, 4, 9, 11};
  std::vector<double> weight{5, 7, 4, 3, 8, 2, 6, 5};
  double capacity = 19;
};

MilpModel knapsack_model(const Knapsack& k) {
  MilpModel m;
  std::vector<Term> row;
  for (std::size_t i = 0; i < k.value.size(); ++i) {
    const int v = m.add_binary("item" + std::to_string(i));
    m.set_objective(v, -k.value[i]);
    row.push_back({v, k.weight[i]});
  }
  m.add_constraint("cap", row, Relation::kLessEqual, k.capacity);
  return m;
}

// LP-free enumeration of all 2^8 packings.
double enumerate_knapsack(const Knapsack& k) {
  double best = 0.0;
  const int n = static_cast<int>(k.value.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    double v = 0.0;
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        v += k.value[i];
        w += k.weight[i];
      }
    }
    if (w <= k.capacity) best = std::max(best, v);
  }
  return -best;
}

bool has_solution_status(SolveStatus s) {
  return s == SolveStatus::kOptimal || s == SolveStatus::kFeasibleWithinGap;
}

}  // namespace

TEST_CASE("8-item knapsack matches exhaustive enumeration") {
  const Knapsack k;
  const double expected = enumerate_knapsack(k);
  const MilpModel m = knapsack_model(k);
  const SolveOutcome bnb = branch_and_bound(m);
  REQUIRE(bnb.status == SolveStatus::kOptimal);
  CHECK(bnb.objective == doctest::Approx(expected));
  const SolveOutcome brute = brute_force_solve(m);
  REQUIRE(brute.status == SolveStatus::kOptimal);
  CHECK(brute.objective == doctest::Approx(expected));
  CHECK(m.max_violation(bnb.values) <= 1e-6);
}

TEST_CASE("model without binaries takes one node and equals the LP") {
  MilpModel m;
  const int x = m.add_continuous("x", 0.0, 10.0);
  const int y = m.add_continuous("y", 0.0, 10.0);
  m.set_objective(x, 1.0);
  m.set_objective(y, 2.0);
  m.add_constraint("c0", {{x, 1.0}, {y, 1.0}}, Relation::kGreaterEqual, 4.0);
  const SolveOutcome out = branch_and_bound(m);
  CHECK(out.status == SolveStatus::kOptimal);
  CHECK(out.nodes == 1);
  CHECK(out.objective == doctest::Approx(solve_lp(m).objective));
  const SolveOutcome brute = brute_force_solve(m);
  CHECK(brute.objective == doctest::Approx(4.0));
}

TEST_CASE("infeasible for every assignment") {
  MilpModel m;
  const int a = m.add_binary("a");
  const int b = m.add_binary("b");
  m.add_constraint("c0", {{a, 1.0}, {b, 1.0}}, Relation::kGreaterEqual, 1.5);
  m.add_constraint("c1", {{a, 1.0}, {b, 1.0}}, Relation::kLessEqual, 1.5);
  CHECK(brute_force_solve(m).status == SolveStatus::kInfeasible);
  const SolveOutcome out = branch_and_bound(m);
  CHECK(out.status == SolveStatus::kInfeasible);
  CHECK_FALSE(out.has_solution());
}

TEST_CASE("brute force refuses oversized models") {
  MilpModel m;
  for (int i = 0; i <= kBruteForceMaxBinaries; ++i) {
    m.add_binary("b" + std::to_string(i));
  }
  try {
    brute_force_solve(m);
    FAIL("expected refusal");
  } catch (const paamp::Error& e) {
    CHECK(e.code() == paamp::ErrorCode::kOracleScaleExceeded);
  }
}

TEST_CASE("random MILPs: branch-and-bound agrees with brute force") {
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const int nb = 4 + static_cast<int>(seed % 9);         // 4..12
    const int nc = 2 + static_cast<int>((seed * 7) % 19);  // 2..20
    const int nr = 6 + static_cast<int>((seed * 13) % 35);  // 6..40
    const MilpModel m = oracle::random_milp(seed, nb, nc, nr);
    const SolveOutcome ref = brute_force_solve(m);
    const SolveOutcome got = branch_and_bound(m);
    CAPTURE(seed);
    CHECK(has_solution_status(got.status) == has_solution_status(ref.status));
    if (ref.status == SolveStatus::kInfeasible) {
      CHECK(got.status == SolveStatus::kInfeasible);
      continue;
    }
    ++feasible;
    CHECK(got.status == SolveStatus::kOptimal);
    CHECK(std::abs(got.objective - ref.objective) <= 1e-6);
    // Independent row-by-row replay of the returned point.
    CHECK(m.max_violation(got.values) <= 1e-6);
    for (int j = 0; j < m.num_variables(); ++j) {
      if (m.variable(j).kind == VarKind::kBinary) {
        CHECK(std::abs(got.values[j] - std::round(got.values[j])) <= 1e-6);
      }
    }
  }
  CHECK(feasible >= 30);
}

TEST_CASE("absolute gap: looser gaps never lose more than the gap") {
  for (std::uint64_t seed = 500; seed < 530; ++seed) {
    const MilpModel m = oracle::random_milp(seed, 12, 10, 30);
    BnbOptions tight;
    BnbOptions loose;
    loose.gap = 2.0;
    const SolveOutcome a = branch_and_bound(m, tight);
    const SolveOutcome b = branch_and_bound(m, loose);
    CAPTURE(seed);
    REQUIRE(has_solution_status(a.status) == has_solution_status(b.status));
    if (!a.has_solution()) continue;
    CHECK(a.objective <= b.objective + 1e-9);
    CHECK(b.objective <= a.objective + loose.gap + 1e-6);
    CHECK(b.objective - b.best_bound <= loose.gap + 1e-6);
  }
}

TEST_CASE("node limit reports the best incumbent") {
  const MilpModel m = oracle::random_milp(77, 12, 10, 30);
  BnbOptions opt;
  opt.node_limit = 2;
  opt.diving = false;
  const SolveOutcome out = branch_and_bound(m, opt);
  CHECK(out.nodes <= 2);
  if (out.status == SolveStatus::kNodeLimit && out.has_solution()) {
    CHECK(m.max_violation(out.values) <= 1e-6);
  }
}

TEST_CASE("LP export: one-variable smoke test") {
  MilpModel m;
  const int x = m.add_continuous("x", -kInf, kInf);
  m.set_objective(x, 1.0);
  m.add_constraint("c0", {{x, 1.0}}, Relation::kGreaterEqual, 3.0);
  std::ostringstream os;
  write_lp(m, os);
  const std::string text = os.str();
  std::istringstream lines(text);
  std::vector<std::string> got;
  for (std::string line; std::getline(lines, line);) got.push_back(line);
  auto has = [&](const std::string& s) {
    return std::find(got.begin(), got.end(), s) != got.end();
  };
  CHECK(has("Minimize"));
  CHECK(has("obj: x"));
  CHECK(has("Subject To"));
  CHECK(has("c0: x >= 3"));
  CHECK(has("Bounds"));
  CHECK(has("x free"));
  CHECK(got.back() == "End");
}

TEST_CASE("LP export: binaries section, coefficients, errors") {
  MilpModel m;
  const int x = m.add_continuous("x", 0.0, 2.5);
  const int d = m.add_binary("delta_0_1");
  m.set_objective(x, -1.0 / 3.0);
  m.add_constraint("big_m", {{x, 1.0}, {d, -100.0}}, Relation::kGreaterEqual,
                   -99.0);
  std::ostringstream os;
  write_lp(m, os);
  const std::string text = os.str();
  CHECK(text.find("obj: - 0.333333333333 x") != std::string::npos);
  CHECK(text.find("big_m: x - 100 delta_0_1 >= -99") != std::string::npos);
  CHECK(text.find("0 <= x <= 2.5") != std::string::npos);
  const auto bin = text.find("Binaries\n");
  REQUIRE(bin != std::string::npos);
  CHECK(text.find("delta_0_1", bin) != std::string::npos);

  MilpModel dup;
  dup.add_continuous("x");
  dup.add_continuous("x");
  CHECK_THROWS_AS(write_lp(dup, os), paamp::Error);
  MilpModel bad;
  bad.add_continuous("x-1");
  CHECK_THROWS_AS(write_lp(bad, os), paamp::Error);
  CHECK_THROWS_AS(export_lp(m, "/nonexistent-dir/out.lp"), paamp::Error);
}
