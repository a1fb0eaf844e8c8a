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

#include "paamp/error.hpp"

namespace paamp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid input";
    case ErrorCode::kInfeasibleGeometry:
      return "infeasible geometry";
    case ErrorCode::kParse:
      return "parse error";
    case ErrorCode::kValidation:
      return "validation error";
    case ErrorCode::kSequenceTooLong:
      return "sequence too long";
    case ErrorCode::kNumericFailure:
      return "numeric failure";
    case ErrorCode::kOracleScaleExceeded:
      return "oracle scale exceeded";
    case ErrorCode::kInternalConsistency:
      return "internal consistency";
    case ErrorCode::kContract:
      return "contract violation";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kTimeLimit:
      return "time limit";
  }
  return "unknown error";
}

}  // namespace paamp
