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

#ifndef RISKFREE_CLOSED_FORMS_H_
#define RISKFREE_CLOSED_FORMS_H_

namespace riskfree {

// (1 - sqrt(B))^2 on [0, 1] and 0 beyond. Throws kOutOfRange for B < 0.
double FBound(double budget);

// t_k(B) = 1/(k+1) - B/k, the tangent to FBound at B = (k/(k+1))^2.
struct TangentBound {
  int k = 1;
  double value = 0.0;
  double tangency = 0.0;
};
TangentBound Tangent(int k, double budget);

// Upper envelope max_k t_k(B) for 0 <= B < 1. `k` is the smallest maximizer;
// `tied` is set when k + 1 attains the same value within 1e-12.
struct TStarResult {
  double value = 0.0;
  int k = 1;
  bool tied = false;
};
TStarResult TStar(double budget);

// Guaranteed profit on the uniform additive auction with m in {1, 2, 3}
// items, transcribed from the closed-form tables. Throws kOutOfRange for
// other m or negative B.
double TableA(int m, double budget);

enum class BudgetRegime { kLow, kHigh };

// Per-item bid levels (times 1/m) of the randomized simultaneous adversary.
struct BudgetSplit {
  double w1 = 0.0;
  double w2 = 0.0;
  BudgetRegime regime = BudgetRegime::kLow;
};
// Throws kOutOfRange unless 0 < B < 1.
BudgetSplit SplitBudget(double budget);

// sigma(x) = 8x / (1 - 4x) for 0 < x < 1/4.
double Sigma(double x);

// Smallest admissible item count for the S_{x,m} construction:
// max(sigma + 2, (1 + sigma) / (x (2 + sigma)) + 2), for 0 < x < 1/4.
double LThreshold(double x);

}  // namespace riskfree

#endif  // RISKFREE_CLOSED_FORMS_H_
