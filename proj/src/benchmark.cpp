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

#include "paamp/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "paamp/error.hpp"
#include "paamp/pairs.hpp"
#include "paamp/planner.hpp"

namespace paamp {
namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

BenchmarkRow row_from(int T, const char* method, const PlanResult& r,
                      double limit_seconds) {
  BenchmarkRow row;
  row.T = T;
  row.method = method;
  row.status = milp::to_string(r.solver_status);
  row.objective = r.objective;
  row.binaries = r.collision_binaries;
  row.nodes = 0;
  for (const IterationRecord& h : r.history) row.nodes += h.nodes;
  row.wall_ms = r.wall_seconds * 1000.0;
  row.rho = r.rho;
  row.limited = r.solver_status == milp::SolveStatus::kTimeLimit;
  row.limit_ms = limit_seconds * 1000.0;
  return row;
}

std::string wall_cell(const BenchmarkRow& r) {
  if (r.limited) return ">" + format("%.0f", r.limit_ms);
  return format("%.1f", r.wall_ms);
}

std::string objective_cell(double v) {
  return std::isfinite(v) ? format("%.4f", v) : "inf";
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const Scenario& scenario,
                                        const BenchmarkOptions& options) {
  std::vector<BenchmarkRow> rows;
  for (int T : options.horizons) {
    Scenario s = scenario;
    s.params.T = T;
    rows.push_back(row_from(T, "paamp", plan(s), s.params.timeout_seconds));
    if (options.naive) {
      s.params.timeout_seconds = options.naive_limit_seconds;
      rows.push_back(
          row_from(T, "naive", plan_naive(s), options.naive_limit_seconds));
    }
  }
  return rows;
}

std::string to_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << "T,method,status,objective,binaries,nodes,wall_ms,rho\n";
  for (const BenchmarkRow& r : rows) {
    out << r.T << ',' << r.method << ',' << r.status << ','
        << objective_cell(r.objective) << ',' << r.binaries << ',' << r.nodes
        << ',' << wall_cell(r) << ',' << format("%.4f", r.rho) << '\n';
  }
  return out.str();
}

std::string to_text(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%4s  %-6s  %-20s  %10s  %8s  %8s  %10s  %6s\n",
                "T", "method", "status", "objective", "binaries", "nodes",
                "wall_ms", "rho");
  out << buf;
  for (const BenchmarkRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%4d  %-6s  %-20s  %10s  %8d  %8lld  %10s  %6.3f\n", r.T,
                  r.method.c_str(), r.status.c_str(),
                  objective_cell(r.objective).c_str(), r.binaries,
                  static_cast<long long>(r.nodes), wall_cell(r).c_str(), r.rho);
    out << buf;
  }
  return out.str();
}

InfeasibilityProbe probe_infeasibility(const Scenario& scenario,
                                       double d_min) {
  const PlanResult nominal = plan(scenario);
  if (nominal.status != PlanStatus::kSuccess) {
    throw Error(ErrorCode::kInvalidInput,
                "nominal scenario could not be planned: " + nominal.message);
  }
  Scenario inflated = scenario;
  inflated.params.d_min = d_min;
  inflated.params.d_sep = d_min;
  const Transcription tr =
      build_paamp_model(inflated, nominal.plans, nominal.pairs);
  milp::BnbOptions o;
  o.gap = scenario.params.gap;
  o.time_limit_seconds = scenario.params.timeout_seconds;
  const milp::SolveOutcome out = milp::branch_and_bound(tr.model, o);

  InfeasibilityProbe probe;
  probe.d_min = d_min;
  probe.proven = out.status == milp::SolveStatus::kInfeasible;
  probe.feasible_seconds = nominal.history.back().solve_seconds;
  probe.infeasible_seconds = out.wall_seconds;
  return probe;
}

}  // namespace paamp
