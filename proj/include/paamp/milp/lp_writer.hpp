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

#ifndef PAAMP_MILP_LP_WRITER_HPP_
#define PAAMP_MILP_LP_WRITER_HPP_

#include <filesystem>
#include <ostream>

#include "paamp/milp/model.hpp"

namespace paamp::milp {

// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / End, numbers
// printed with 12 significant digits. Names must be unique and match
// [A-Za-z_][A-Za-z0-9_]*; unnamed rows are written as c<index>.
void write_lp(const MilpModel& model, std::ostream& out);
void export_lp(const MilpModel& model, const std::filesystem::path& path);

}  // namespace paamp::milp

#endif  // PAAMP_MILP_LP_WRITER_HPP_
