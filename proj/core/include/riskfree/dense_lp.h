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

#ifndef RISKFREE_DENSE_LP_H_
#define RISKFREE_DENSE_LP_H_

#include <vector>

namespace riskfree {

// minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
struct DenseLp {
  std::vector<double> c;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
};

// Two-phase tableau simplex. Entering columns follow the most negative
// reduced cost with the largest pivot among ratio ties; after a long run of
// degenerate pivots it falls back to Bland's rule, so it terminates. Throws kInfeasibleLp when the constraints are
// infeasible, kOutOfRange when the objective is unbounded below, and
// kInvalidArgument for ragged input.
LpSolution SolveDenseLp(const DenseLp& lp);

}  // namespace riskfree

#endif  // RISKFREE_DENSE_LP_H_
