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

#include "riskfree/sequential.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "riskfree/error.h"

namespace riskfree {
namespace {

// Spending exactly the budget is allowed; anything beyond this slack is not.
// Kept well below kOutbid so that a bid of b + kOutbid cannot be matched by
// an adversary holding exactly b.
constexpr double kBudgetSlack = 1e-13;

SeqGameState InitialState(int m, double budget, PriceRule rule) {
  SeqGameState s;
  s.item_count = m;
  s.initial_budget = budget;
  s.adversary_budget = budget;
  s.won_by_1.assign(static_cast<std::size_t>(m), false);
  s.rule = rule;
  return s;
}

// Advances `s` by one round. Returns Bidder 1's payment for the round.
double Apply(SeqGameState& s, bool bidder_wins, double price,
             double adversary_cost) {
  const auto i = static_cast<std::size_t>(s.round);
  s.won_by_1[i] = bidder_wins;
  if (bidder_wins) {
    ++s.wins_1;
    s.prices_paid_1 += price;
  } else {
    ++s.wins_2;
    s.adversary_budget = std::max(0.0, s.adversary_budget - adversary_cost);
  }
  ++s.round;
  return bidder_wins ? price : 0.0;
}

void RequireEnumerable(int m) {
  if (m > kMaxEnumerationItems) {
    throw Error(ErrorCode::kOutOfRange,
                "exhaustive search is capped at m=" +
                    std::to_string(kMaxEnumerationItems) + ", got m=" +
                    std::to_string(m));
  }
}

// max sum over T of gain subject to sum over T of cost <= capacity, for
// non-negative costs. Items with equal (cost, gain) are grouped so that
// symmetric instances stay cheap.
struct KnapsackGroup {
  double cost;
  double gain;
  int count;
  std::vector<int> items;
};

class KnapsackSearch {
 public:
  KnapsackSearch(std::vector<KnapsackGroup> groups, double capacity)
      : groups_(std::move(groups)), capacity_(capacity) {
    std::sort(groups_.begin(), groups_.end(),
              [](const KnapsackGroup& a, const KnapsackGroup& b) {
                return a.gain * b.cost > b.gain * a.cost;
              });
    take_.assign(groups_.size(), 0);
    best_take_ = take_;
  }

  double Run() {
    Dfs(0, 0.0, 0.0);
    return best_;
  }
  const std::vector<int>& best_take() const { return best_take_; }
  const std::vector<KnapsackGroup>& groups() const { return groups_; }

 private:
  // Fractional relaxation over groups g.. with the remaining capacity.
  double Bound(std::size_t g, double room) const {
    double extra = 0.0;
    for (; g < groups_.size() && room > 0; ++g) {
      const double all = groups_[g].cost * groups_[g].count;
      if (all <= room) {
        extra += groups_[g].gain * groups_[g].count;
        room -= all;
      } else {
        extra += groups_[g].gain * room / groups_[g].cost;
        room = 0;
      }
    }
    return extra;
  }

  void Dfs(std::size_t g, double used, double gain) {
    if (gain > best_) {
      best_ = gain;
      best_take_ = take_;
    }
    if (g == groups_.size()) return;
    if (gain + Bound(g, capacity_ - used) <= best_ + 1e-15) return;
    const KnapsackGroup& grp = groups_[g];
    const int fit = std::min<double>(
        grp.count, std::floor((capacity_ + kBudgetSlack - used) / grp.cost));
    for (int c = std::max(0, fit); c >= 0; --c) {
      take_[g] = c;
      Dfs(g + 1, used + c * grp.cost, gain + c * grp.gain);
    }
    take_[g] = 0;
  }

  std::vector<KnapsackGroup> groups_;
  double capacity_;
  std::vector<int> take_;
  std::vector<int> best_take_;
  double best_ = 0.0;
};

FixedBidResponse AdditiveResponse(const AdditiveValuation& a,
                                  const std::vector<double>& bids1,
                                  double budget, PriceRule rule) {
  // Winning T changes Bidder 1's profit by -(w - b)(T) under both rules, up
  // to a constant: first price W - b(I) - (w - b)(T); second price
  // W - min(b(I), B) - (w - b)(T).
  const auto m = static_cast<int>(bids1.size());
  double w_total = 0.0;
  double b_total = 0.0;
  std::vector<bool> wins(static_cast<std::size_t>(m), false);
  double free_gain = 0.0;
  std::vector<KnapsackGroup> groups;
  for (int i = 0; i < m; ++i) {
    const double w = a.weights()[static_cast<std::size_t>(i)];
    const double b = bids1[static_cast<std::size_t>(i)];
    w_total += w;
    b_total += b;
    const double gain = w - b;
    if (gain <= 0 || b > budget + kBudgetSlack) continue;
    if (b == 0) {
      wins[static_cast<std::size_t>(i)] = true;
      free_gain += gain;
      continue;
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.cost == b && g.gain == gain;
    });
    if (it == groups.end()) {
      groups.push_back({b, gain, 1, {i}});
    } else {
      ++it->count;
      it->items.push_back(i);
    }
  }
  KnapsackSearch search(std::move(groups), budget);
  const double gain = search.Run() + free_gain;
  for (std::size_t g = 0; g < search.groups().size(); ++g) {
    for (int c = 0; c < search.best_take()[g]; ++c) {
      wins[static_cast<std::size_t>(search.groups()[g].items[static_cast<std::size_t>(c)])] = true;
    }
  }
  const double base = rule == PriceRule::kFirst
                          ? w_total - b_total
                          : w_total - std::min(b_total, budget);
  return {std::move(wins), base - gain};
}

}  // namespace

std::vector<double> Policy::BidVector(int m, double budget, Rng& rng) const {
  std::vector<double> bids(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    SeqGameState s = InitialState(m, budget, PriceRule::kFirst);
    s.round = i;
    bids[static_cast<std::size_t>(i)] = Bid(s, rng);
  }
  return bids;
}

Outcome Simulate(const Valuation& v, double budget, const Policy& bidder,
                 const Policy& adversary, PriceRule rule, std::uint64_t seed) {
  if (!(budget >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
  const int m = ItemCount(v);
  const Rng root(seed);
  Rng bidder_rng = root.Split(1);
  Rng adversary_rng = root.Split(2);
  SeqGameState s = InitialState(m, budget, rule);
  Outcome out;
  for (int t = 0; t < m; ++t) {
    const double b1 = bidder.Bid(s, bidder_rng);
    const double b2 = adversary.Bid(s, adversary_rng);
    if (!(b1 >= 0) || !(b2 >= 0)) {
      throw Error(ErrorCode::kPolicyContract,
                  "bids must be non-negative (round " + std::to_string(t) +
                      ")");
    }
    if (b2 > s.adversary_budget + kBudgetSlack) {
      throw Error(ErrorCode::kPolicyContract,
                  adversary.Name() + " bid " + std::to_string(b2) +
                      " above its remaining budget " +
                      std::to_string(s.adversary_budget) + " in round " +
                      std::to_string(t));
    }
    const bool bidder_wins = b1 > b2;
    const double price = rule == PriceRule::kFirst ? (bidder_wins ? b1 : b2)
                                                   : (bidder_wins ? b2 : b1);
    out.winner.push_back(bidder_wins ? 1 : 2);
    out.bids1.push_back(b1);
    out.bids2.push_back(b2);
    out.prices.push_back(price);
    if (!bidder_wins) out.adversary_spend += price;
    out.payments1 += Apply(s, bidder_wins, price, price);
  }
  out.profit = ValueOfMembership(v, s.won_by_1) - out.payments1;
  return out;
}

FixedBidResponse BestResponseToFixedBids(const Valuation& v,
                                         const std::vector<double>& bids1,
                                         double budget, PriceRule rule,
                                         AuctionFormat format) {
  const int m = ItemCount(v);
  if (static_cast<int>(bids1.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "bid vector length differs from the item count");
  }
  if (!(budget >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
  for (double b : bids1) {
    if (!(b >= 0)) {
      throw Error(ErrorCode::kInvalidArgument, "bids must be non-negative");
    }
  }
  const bool drain_per_round =
      rule == PriceRule::kSecond && format == AuctionFormat::kSequential;
  if (const auto* a = std::get_if<AdditiveValuation>(&v);
      a != nullptr && m > kMaxEnumerationItems && !drain_per_round) {
    return AdditiveResponse(*a, bids1, budget, rule);
  }
  RequireEnumerable(m);
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_t = 0;
  for (std::uint64_t t = 0; t <= full; ++t) {
    double cost = 0.0;
    double rest = 0.0;
    double drained = 0.0;
    for (int i = 0; i < m; ++i) {
      const double b = bids1[static_cast<std::size_t>(i)];
      if ((t >> i) & 1U) {
        cost += b;
      } else {
        rest += b;
        drained += std::min(b, std::max(0.0, budget - cost));
      }
    }
    if (cost > budget + kBudgetSlack) continue;
    double pay = rest;
    if (rule == PriceRule::kSecond) {
      pay = drain_per_round ? drained
                            : std::min(rest, std::max(0.0, budget - cost));
    }
    const double profit = ValueOfMask(v, full & ~t) - pay;
    if (profit < best) {
      best = profit;
      best_t = t;
    }
  }
  FixedBidResponse out;
  out.adversary_wins.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out.adversary_wins[static_cast<std::size_t>(i)] = ((best_t >> i) & 1U) != 0;
  }
  out.min_profit = best;
  return out;
}

SequentialResponse BidderBestResponse(const Valuation& v, double budget,
                                      const Policy& adversary,
                                      PriceRule rule) {
  const int m = ItemCount(v);
  RequireEnumerable(m);
  SequentialResponse best{-std::numeric_limits<double>::infinity(), {}};
  Rng rng(0);
  std::function<void(const SeqGameState&)> dfs = [&](const SeqGameState& s) {
    if (s.round == m) {
      const double profit = ValueOfMembership(v, s.won_by_1) - s.prices_paid_1;
      if (profit > best.profit) best = {profit, s.won_by_1};
      return;
    }
    Rng local = rng;
    const double b2 = adversary.Bid(s, local);
    if (!(b2 >= 0) || b2 > s.adversary_budget + kBudgetSlack) {
      throw Error(ErrorCode::kPolicyContract,
                  adversary.Name() + " made an infeasible bid");
    }
    SeqGameState win = s;
    Apply(win, true, b2, 0.0);
    dfs(win);
    SeqGameState lose = s;
    Apply(lose, false, 0.0, b2);
    dfs(lose);
    if (rule == PriceRule::kSecond && b2 > 0) {
      SeqGameState free_loss = s;
      Apply(free_loss, false, 0.0, 0.0);
      dfs(free_loss);
    }
  };
  dfs(InitialState(m, budget, rule));
  return best;
}

SequentialResponse AdversaryBestResponse(const Valuation& v, double budget,
                                         const Policy& bidder, PriceRule rule) {
  const int m = ItemCount(v);
  RequireEnumerable(m);
  SequentialResponse best{std::numeric_limits<double>::infinity(), {}};
  Rng rng(0);
  std::function<void(const SeqGameState&)> dfs = [&](const SeqGameState& s) {
    if (s.round == m) {
      const double profit = ValueOfMembership(v, s.won_by_1) - s.prices_paid_1;
      if (profit < best.profit) best = {profit, s.won_by_1};
      return;
    }
    Rng local = rng;
    const double b1 = bidder.Bid(s, local);
    if (!(b1 >= 0)) {
      throw Error(ErrorCode::kPolicyContract, bidder.Name() + " bid negative");
    }
    if (b1 <= s.adversary_budget + kBudgetSlack) {
      SeqGameState win = s;
      Apply(win, false, 0.0, b1);
      dfs(win);
    }
    const double price =
        rule == PriceRule::kFirst ? b1 : std::min(b1, s.adversary_budget);
    if (b1 > 0) {
      SeqGameState lose = s;
      Apply(lose, true, price, 0.0);
      dfs(lose);
    }
  };
  dfs(InitialState(m, budget, rule));
  return best;
}

double SolveDiscretized(const Valuation& v, double budget, double delta,
                        PriceRule rule, Leader leader) {
  const int m = ItemCount(v);
  if (m > kMaxOracleItems) {
    throw Error(ErrorCode::kOutOfRange,
                "the discretized oracle is capped at m=" +
                    std::to_string(kMaxOracleItems));
  }
  if (!(delta > 0) || !(budget >= 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "oracle needs delta > 0 and a non-negative budget");
  }
  const double steps = budget / delta;
  const auto nb = static_cast<std::int64_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(nb)) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget must be a multiple of delta");
  }
  const auto top =
      static_cast<std::int64_t>(std::ceil(TotalValue(v) / delta - 1e-9));
  const std::int64_t states = (std::int64_t{1} << m) * (nb + 1);
  if (states > kMaxOracleStates) {
    throw Error(ErrorCode::kCapacityExceeded,
                "oracle state space " + std::to_string(states) +
                    " exceeds the cap of " + std::to_string(kMaxOracleStates));
  }
  // Every state scans at most top + 1 bids; the masks of all rounds together
  // number fewer than 2^m.
  const double moves = static_cast<double>(std::int64_t{1} << m) *
                       static_cast<double>(nb + 1) *
                       static_cast<double>(top + 1);
  if (moves > static_cast<double>(kMaxOracleMoves)) {
    throw Error(ErrorCode::kCapacityExceeded,
                "oracle needs about " + std::to_string(moves) +
                    " moves, above the cap of " +
                    std::to_string(kMaxOracleMoves));
  }
  const auto width = static_cast<std::size_t>(nb + 1);
  // next[mask * width + b]: value from round t+1 on, masks over items < t+1.
  std::vector<double> next((std::size_t{1} << m) * width);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const double value = ValueOfMask(v, mask);
    for (std::size_t b = 0; b < width; ++b) next[mask * width + b] = value;
  }
  for (int t = m - 1; t >= 0; --t) {
    std::vector<double> cur((std::size_t{1} << t) * width);
    const std::uint64_t bit = std::uint64_t{1} << t;
    for (std::uint64_t mask = 0; mask < bit; ++mask) {
      const double* keep = &next[mask * width];
      const double* take = &next[(mask | bit) * width];
      for (std::int64_t b = 0; b <= nb; ++b) {
        double value;
        if (leader == Leader::kAdversary) {
          value = std::numeric_limits<double>::infinity();
          for (std::int64_t k = 0; k <= std::min(b, top); ++k) {
            const double pay =
                (rule == PriceRule::kFirst ? k + 1 : k) * delta;
            const double win = take[b] - pay;
            const double lose = keep[b - k];
            value = std::min(value, std::max(win, lose));
          }
        } else {
          // A zero bid always loses to the adversary's zero bid.
          value = keep[b];
          for (std::int64_t j = 1; j <= top; ++j) {
            const double pay = (rule == PriceRule::kFirst
                                    ? j
                                    : std::min(j - 1, b)) *
                               delta;
            double reply = take[b] - pay;
            if (j <= b) reply = std::min(reply, keep[b - j]);
            value = std::max(value, reply);
          }
        }
        cur[mask * width + static_cast<std::size_t>(b)] = value;
      }
    }
    next = std::move(cur);
  }
  return next[static_cast<std::size_t>(nb)];
}

}  // namespace riskfree
