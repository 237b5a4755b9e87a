// Copyright 2026 The riskfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskfree/error.h"

namespace riskfree {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kOutOfRange:
      return "out_of_range";
    case ErrorCode::kDegenerateValuation:
      return "degenerate_valuation";
    case ErrorCode::kInfeasibleInstance:
      return "infeasible_instance";
    case ErrorCode::kContractViolation:
      return "contract_violation";
    case ErrorCode::kCapacityExceeded:
      return "capacity_exceeded";
    case ErrorCode::kPolicyContract:
      return "policy_contract";
    case ErrorCode::kInfeasibleLp:
      return "infeasible_lp";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

}  // namespace riskfree
