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

#ifndef PAAMP_BENCHMARK_HPP_
#define PAAMP_BENCHMARK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "paamp/scenario.hpp"

namespace paamp {

struct BenchmarkRow {
  int T = 0;
  std::string method;
  std::string status;
  double objective = 0.0;
  // Collision binaries of the final model.
  int binaries = 0;
  std::int64_t nodes = 0;
  double wall_ms = 0.0;
  double rho = 0.0;
  // True when the solve stopped at its time limit.
  bool limited = false;
  double limit_ms = 0.0;
};

struct BenchmarkOptions {
  std::vector<int> horizons{12, 20};
  bool naive = true;
  // Cap on each naive solve; PAAMP uses the scenario timeout.
  double naive_limit_seconds = 300.0;
};

std::vector<BenchmarkRow> run_benchmark(const Scenario& scenario,
                                        const BenchmarkOptions& options = {});

// Header T,method,status,objective,binaries,nodes,wall_ms,rho. Limited
// solves show ">limit" wall times.
std::string to_csv(const std::vector<BenchmarkRow>& rows);
std::string to_text(const std::vector<BenchmarkRow>& rows);

struct InfeasibilityProbe {
  double d_min = 0.0;
  bool proven = false;
  double feasible_seconds = 0.0;
  double infeasible_seconds = 0.0;
};

// Plans the scenario, then re-solves the final sequence model with d_min
// and d_sep raised to `d_min`. Throws Error(kInvalidInput) if the nominal
// scenario cannot be planned.
InfeasibilityProbe probe_infeasibility(const Scenario& scenario, double d_min);

}  // namespace paamp

#endif  // PAAMP_BENCHMARK_HPP_
