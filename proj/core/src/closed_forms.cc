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

#include "riskfree/closed_forms.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskfree/error.h"

namespace riskfree {
namespace {

void RequireBudget(double budget) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "budget must be non-negative");
  }
}

void RequireSmallX(double x) {
  if (!(x > 0.0 && x < 0.25)) {
    throw Error(ErrorCode::kOutOfRange, "x must lie in (0, 1/4)");
  }
}

}  // namespace

double FBound(double budget) {
  RequireBudget(budget);
  if (budget >= 1.0) return 0.0;
  const double r = 1.0 - std::sqrt(budget);
  return r * r;
}

TangentBound Tangent(int k, double budget) {
  if (k < 1) throw Error(ErrorCode::kOutOfRange, "tangent index k must be >= 1");
  const double kd = k;
  return {k, 1.0 / (kd + 1.0) - budget / kd,
          (kd / (kd + 1.0)) * (kd / (kd + 1.0))};
}

TStarResult TStar(double budget) {
  RequireBudget(budget);
  if (budget >= 1.0) {
    throw Error(ErrorCode::kOutOfRange, "t* is defined for budgets below 1");
  }
  // Tangency points (k/(k+1))^2 increase towards 1, and t_k(B) is unimodal in
  // k, so the maximizer is at most the first k whose tangency point passes B,
  // plus a margin.
  const int k_max =
      static_cast<int>(std::ceil(1.0 / (1.0 - std::sqrt(budget)))) + 2;
  TStarResult best{Tangent(1, budget).value, 1, false};
  for (int k = 2; k <= k_max; ++k) {
    const double v = Tangent(k, budget).value;
    if (v > best.value + 1e-12) best = {v, k, false};
  }
  best.tied = std::abs(Tangent(best.k + 1, budget).value - best.value) <= 1e-12;
  return best;
}

double TableA(int m, double budget) {
  RequireBudget(budget);
  const double b = budget;
  switch (m) {
    case 1:
      return b < 1.0 ? 1.0 - b : 0.0;
    case 2:
      if (b < 0.25) return 1.0 - 2.0 * b;
      if (b < 0.5) return 0.75 - b;
      if (b < 1.0) return 0.5 - b / 2.0;
      return 0.0;
    case 3:
      if (b < 1.0 / 9.0) return 1.0 - 3.0 * b;
      if (b < 1.0 / 6.0) return 8.0 / 9.0 - 2.0 * b;
      if (b < 1.0 / 3.0) return 7.0 / 9.0 - 4.0 * b / 3.0;
      if (b < 5.0 / 9.0) return 7.0 / 12.0 - 3.0 * b / 4.0;
      if (b < 2.0 / 3.0) return 4.0 / 9.0 - b / 2.0;
      if (b < 1.0) return 1.0 / 3.0 - b / 3.0;
      return 0.0;
    default:
      throw Error(ErrorCode::kOutOfRange,
                  "closed-form tables exist for m in {1, 2, 3}, got m=" +
                      std::to_string(m));
  }
}

BudgetSplit SplitBudget(double budget) {
  if (!(budget > 0.0 && budget < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "budget split needs 0 < B < 1");
  }
  if (budget < 0.25) return {2.0 * budget, 0.0, BudgetRegime::kLow};
  return {1.0 / 3.0 + 2.0 * budget / 3.0, 4.0 * budget / 3.0 - 1.0 / 3.0,
          BudgetRegime::kHigh};
}

double Sigma(double x) {
  RequireSmallX(x);
  return 8.0 * x / (1.0 - 4.0 * x);
}

double LThreshold(double x) {
  const double s = Sigma(x);
  return std::max(s + 2.0, (1.0 + s) / (x * (2.0 + s)) + 2.0);
}

}  // namespace riskfree
