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

#ifndef RISKFREE_SEQUENTIAL_H_
#define RISKFREE_SEQUENTIAL_H_

#include <cstdint>
#include <vector>

#include "riskfree/policy.h"
#include "riskfree/valuation.h"

namespace riskfree {

struct Outcome {
  // 1 when Bidder 1 won the item, 2 when the adversary did.
  std::vector<int> winner;
  std::vector<double> bids1;
  std::vector<double> bids2;
  // Price paid by the winner of each item.
  std::vector<double> prices;
  double payments1 = 0.0;
  double adversary_spend = 0.0;
  double profit = 0.0;
};

// Plays every round: higher bid wins, ties go to the adversary; the
// first-price winner pays its own bid, the second-price winner pays the
// other bid. Throws kPolicyContract for a negative bid or an adversary bid
// above its remaining budget.
Outcome Simulate(const Valuation& v, double budget, const Policy& bidder,
                 const Policy& adversary, PriceRule rule, std::uint64_t seed);

// Adversary's best response to a fixed bid vector of Bidder 1.
struct FixedBidResponse {
  std::vector<bool> adversary_wins;
  double min_profit = 0.0;
};
// How the adversary's budget constrains its losing bids. In a sequential
// auction only winning spends budget, so under the second-price rule every
// item Bidder 1 wins costs her min(bid, budget left at that round). In a
// simultaneous auction all bids share the budget, so her second-price
// payments total at most what the adversary did not spend on its wins.
enum class AuctionFormat { kSequential, kSimultaneous };
// The adversary wins a set T by matching Bidder 1's bids there, which costs
// bids1(T) <= B. Exhaustive for m <= kMaxEnumerationItems; additive
// valuations of any size go through a knapsack branch and bound, except for
// the sequential second-price case. Throws kOutOfRange otherwise.
inline constexpr int kMaxEnumerationItems = 20;
FixedBidResponse BestResponseToFixedBids(
    const Valuation& v, const std::vector<double>& bids1, double budget,
    PriceRule rule, AuctionFormat format = AuctionFormat::kSequential);
// Bidder 1's best response to a deterministic adaptive adversary, in the
// limit where beating a bid b costs exactly b. Each round she either takes
// the item or lets the adversary win it at his own bid (under the
// second-price rule she may also let him win it for free). Exhaustive, so
// m <= kMaxEnumerationItems.
struct SequentialResponse {
  double profit = 0.0;
  std::vector<bool> won_by_1;
};
SequentialResponse BidderBestResponse(const Valuation& v, double budget,
                                      const Policy& adversary, PriceRule rule);

// The adversary's best response to a deterministic adaptive Bidder 1 policy.
// Each round he either matches her bid (if affordable) or loses, and under
// the second-price rule a loss makes her pay min(bid, remaining budget).
// Exhaustive, so m <= kMaxEnumerationItems.
SequentialResponse AdversaryBestResponse(const Valuation& v, double budget,
                                         const Policy& bidder, PriceRule rule);

enum class Leader { kAdversary, kBidder };

// Value of the sequential game with bids restricted to multiples of delta.
// In each round the leader commits to a bid and the follower answers by
// winning or losing; a follower who wins outbids by one grid step and ties go
// to the adversary. Bids of Bidder 1 range up to v(I). Requires m <= 6 and
// B a multiple of delta. The state space is capped at kMaxOracleStates and
// the number of leader moves examined at kMaxOracleMoves; either cap throws
// kCapacityExceeded.
inline constexpr int kMaxOracleItems = 6;
inline constexpr std::int64_t kMaxOracleStates = 20'000'000;
inline constexpr std::int64_t kMaxOracleMoves = 4'000'000'000;
double SolveDiscretized(const Valuation& v, double budget, double delta,
                        PriceRule rule, Leader leader);

}  // namespace riskfree

#endif  // RISKFREE_SEQUENTIAL_H_
