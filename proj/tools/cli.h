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


#ifndef RISKFREE_TOOLS_CLI_H_
#define RISKFREE_TOOLS_CLI_H_

#include <ostream>

namespace riskfree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

// Entry point of the riskfree command-line tool. Human-readable results go
// to `out`, diagnostics to `err`. Returns 0 on success, 2 when a checked
// bound is violated and 1 for usage or configuration errors.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace riskfree::cli

#endif  // RISKFREE_TOOLS_CLI_H_
