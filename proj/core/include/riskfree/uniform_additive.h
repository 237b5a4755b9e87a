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

#ifndef RISKFREE_UNIFORM_ADDITIVE_H_
#define RISKFREE_UNIFORM_ADDITIVE_H_

#include <deque>
#include <mutex>

#include "riskfree/piecewise_linear.h"

namespace riskfree {

// Continuation values after the first round of the uniform additive auction
// on m items with normalized budget x, when the adversary bids alpha/m:
// g if Bidder 1 wins the item, h if she lets the adversary win it.
struct GhValues {
  double g = 0.0;
  double h = 0.0;
};
// Requires m >= 2 and 0 <= alpha <= min(1, m x); `f_prev` is f_{m-1}.
// Throws kInvalidArgument otherwise.
GhValues GH(int m, double x, double alpha, const PiecewiseLinear& f_prev);

struct AlphaParams {
  int m = 0;
  double x = 0.0;
  double alpha_tilde = 0.0;
  double alpha_max = 0.0;
  // x in [1/m^2, (m-1)/m].
  bool intermediate = false;
};
// alpha_tilde = 1 - 2m(1 - sqrt x) + 2 sqrt(m(m-1)) (1 - sqrt x) and
// alpha_max = min(1, m x). Requires m >= 2 and x >= 0.
AlphaParams ComputeAlphaParams(int m, double x);

// The adversary's minimizing first-round ratio alpha in [0, alpha_max] and
// the resulting value f_m(x) = max(g, h) at that alpha. `interior` is set
// when g and h are equalized inside the interval.
struct EqualizedAlpha {
  double alpha = 0.0;
  double value = 0.0;
  bool interior = false;
};
EqualizedAlpha OptimalAlpha(int m, double x, const PiecewiseLinear& f_prev);

// One exact level of the recursion: f_m on [0, 1] from a non-increasing
// f_{m-1}. Monotone in f_prev: a pointwise larger input gives a pointwise
// larger output.
PiecewiseLinear UniformAdditiveStep(int m, const PiecewiseLinear& f_prev);

// Pointwise bounds lower <= f_m <= upper. When `exact` is set both are f_m.
struct ValueBounds {
  PiecewiseLinear lower;
  PiecewiseLinear upper;
  bool exact = false;
  double Gap() const;
};

// Memoizes the uniform additive value functions level by level. Levels are
// exact while they fit under the breakpoint cap; past it each level carries
// envelopes obtained by simplifying the previous level from above with
// `tolerance`, which keeps the bounds certified because the recursion is
// monotone. Thread-safe.
class UniformAdditiveSolver {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  explicit UniformAdditiveSolver(double tolerance = kDefaultTolerance);

  // f_m exactly. Throws kCapacityExceeded when f_m has more breakpoints than
  // the cap and kOutOfRange for m < 1.
  const PiecewiseLinear& Exact(int m);
  const ValueBounds& Bounds(int m);
  // Upper envelope evaluated at x; the exact value when available.
  double Upper(int m, double x) { return Bounds(m).upper(x); }

  // Number of leading levels that are exact, among those computed so far.
  int exact_levels();
  double tolerance() const { return tolerance_; }

 private:
  void ExtendTo(int m);

  const double tolerance_;
  std::mutex mutex_;
  std::deque<ValueBounds> levels_;  // levels_[m - 1] holds f_m
};

// Process-wide solver with the default tolerance.
UniformAdditiveSolver& SharedUniformAdditiveSolver();

// Exact f_m; kCapacityExceeded past the breakpoint cap.
PiecewiseLinear UniformAdditiveValue(int m);

}  // namespace riskfree

#endif  // RISKFREE_UNIFORM_ADDITIVE_H_
