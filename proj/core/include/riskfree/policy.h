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

#ifndef RISKFREE_POLICY_H_
#define RISKFREE_POLICY_H_

#include <string>
#include <vector>

#include "riskfree/rng.h"

namespace riskfree {

enum class PriceRule { kFirst, kSecond };

// Margin added to a bid that must beat a known amount. Ties go to the
// adversary, so "b plus a negligible amount" is realized as b + kOutbid.
inline constexpr double kOutbid = 1e-12;

// Public state of a sequential auction before round `round`, where item
// `round` is on sale. Items are sold in index order.
struct SeqGameState {
  int item_count = 0;
  int round = 0;
  double initial_budget = 0.0;
  double adversary_budget = 0.0;
  // won_by_1[i] is meaningful for i < round.
  std::vector<bool> won_by_1;
  int wins_1 = 0;
  int wins_2 = 0;
  double prices_paid_1 = 0.0;
  PriceRule rule = PriceRule::kFirst;

  int remaining() const { return item_count - round; }
};

// A bidding rule for either side. Policies are immutable; randomness comes
// only from the generator passed in, so a run replays exactly from its seed.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string Name() const = 0;

  // Bid for item state.round in a sequential auction.
  virtual double Bid(const SeqGameState& state, Rng& rng) const = 0;

  // Bid vector for a simultaneous auction on m items. The default asks Bid()
  // for every item with an empty history.
  virtual std::vector<double> BidVector(int m, double budget, Rng& rng) const;
};

}  // namespace riskfree

#endif  // RISKFREE_POLICY_H_
