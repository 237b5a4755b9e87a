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

#ifndef RISKFREE_SIMULTANEOUS_H_
#define RISKFREE_SIMULTANEOUS_H_

#include <cstdint>
#include <vector>

#include "riskfree/closed_forms.h"
#include "riskfree/policy.h"
#include "riskfree/sequential.h"
#include "riskfree/valuation.h"

namespace riskfree {

// Per item: higher bid wins, ties to the adversary; the first-price winner
// pays its own bid and the second-price winner pays the other bid.
Outcome Resolve(const Valuation& v, const std::vector<double>& bids1,
                const std::vector<double>& bids2, PriceRule rule);

// Expected first-price profit of bidding X_i gstar_i with X_i ~ U(0,1)
// against adversary bids ratios_i gstar_i, scored with the additive
// valuation gstar: sum_i gstar_i (1 - b_i)^2 / 2.
double ExpectedProfitUniformRandom(const AdditiveValuation& gstar,
                                   const std::vector<double>& ratios);

// The same expectation scored with the true XOS valuation, summing over all
// 2^m win sets. Capped at m = kMaxEnumerationItems.
double ExpectedProfitUniformRandomXos(const XosValuation& v,
                                      const std::vector<double>& ratios);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
// Sampled version of the expectation above against valuation `v`. Samples
// are split into fixed shards with their own sub-streams and reduced in
// shard order, so the estimate does not depend on the worker count.
MonteCarloEstimate MonteCarloUniformRandom(const Valuation& v,
                                           const AdditiveValuation& gstar,
                                           const std::vector<double>& ratios,
                                           std::uint64_t samples,
                                           std::uint64_t seed);

// minimize 1/2 sum_i gstar_i (1 - b_i)^2  s.t.  sum_i b_i gstar_i <= B,
// 0 <= b_i <= 1.
struct QpSolution {
  std::vector<double> ratios;
  double value = 0.0;
  // lambda_1..lambda_m for b_i <= 1, lambda_{m+1}..lambda_{2m} for b_i >= 0,
  // then lambda_{2m+1} for the budget.
  std::vector<double> dual;
  double dual_value = 0.0;
  // Best value reached by projected gradient from the random starts.
  double numeric_value = 0.0;
};
struct QpOptions {
  int iterations = 10'000;
  int random_starts = 4;
  std::uint64_t seed = 1;
};
// Closed form b_i = B with value (1 - B)^2 / 2, dual lambda_{2m+1} = 1 - B,
// plus a projected-gradient run for verification. Requires sum gstar = 1
// (within 1e-9) and 0 < B < 1; throws kInvalidArgument otherwise.
QpSolution AdversaryQp(const AdditiveValuation& gstar, double budget,
                       const QpOptions& options = {});

// The objective of the QP at ratios b.
double QpObjective(const AdditiveValuation& gstar,
                   const std::vector<double>& ratios);

// Lagrangian dual objective g(lambda) of the QP.
double QpDualObjective(const AdditiveValuation& gstar, double budget,
                       const std::vector<double>& lambda);

// Euclidean projection of y onto {b in [0,1]^m : sum b_i w_i <= B}.
std::vector<double> ProjectOntoBudgetBox(const std::vector<double>& y,
                                         const std::vector<double>& w,
                                         double budget);

// Counter to a fixed first-price bid vector on the uniform additive instance:
// the adversary buys the cheapest items while it can.
struct CounterPlan {
  int k_star = 0;
  double p_star = 0.0;
  // (m - B/p* + 1)(1/m - p*); NaN when k* = m.
  double bound = 0.0;
  // Bidder 1's profit against the best prefix purchase.
  double realized_profit = 0.0;
};
// `bids1_sorted` must be non-decreasing with length m and not all zero;
// throws kInvalidArgument otherwise.
CounterPlan DeterministicCounter(const std::vector<double>& bids1_sorted,
                                 double budget, int m);

// Uniform m/2-subset S; bids w1/m on S and w2/m elsewhere.
std::vector<double> RandomizedAdversary(int m, double budget, Rng& rng);

// Bidder 1's best expected profit against RandomizedAdversary: 1 - 2B for
// B < 1/4 and 2(1 - B)/3 otherwise.
double RandomizedAdversaryProfit(double budget);

// Exhaustive check of the above on the uniform additive instance with even
// m: Bidder 1 picks, per item, one of the undominated bids 0, (w2/m)+ and
// (w1/m)+; by symmetry only the counts matter, and each count vector is
// scored by exact expectation over all C(m, m/2) subsets.
double RandomizedAdversaryBestResponse(int m, double budget);

// Bidder 1's counter to a known adversary vector: bid (b2_i)+ wherever
// b2_i < gstar_i. Profit is in the limit where the margin vanishes.
struct PureCounter {
  std::vector<double> bids1;
  std::vector<bool> wins;
  double profit = 0.0;
};
PureCounter BidderCounterToPure(const XosValuation& v,
                                const std::vector<double>& bids2);

}  // namespace riskfree

#endif  // RISKFREE_SIMULTANEOUS_H_
