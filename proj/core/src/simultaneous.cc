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

#include "riskfree/simultaneous.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "riskfree/error.h"
#include "riskfree/parallel.h"

namespace riskfree {
namespace {

constexpr double kBudgetSlack = 1e-13;

void RequireRatios(const std::vector<double>& ratios, int m) {
  if (static_cast<int>(ratios.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "ratio vector length differs from the item count");
  }
  for (double b : ratios) {
    if (!(b >= 0 && b <= 1)) {
      throw Error(ErrorCode::kInvalidArgument, "ratios must lie in [0, 1]");
    }
  }
}

}  // namespace

Outcome Resolve(const Valuation& v, const std::vector<double>& bids1,
                const std::vector<double>& bids2, PriceRule rule) {
  const int m = ItemCount(v);
  if (static_cast<int>(bids1.size()) != m ||
      static_cast<int>(bids2.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "bid vectors must have one entry per item");
  }
  Outcome out;
  std::vector<bool> won(static_cast<std::size_t>(m), false);
  for (std::size_t i = 0; i < won.size(); ++i) {
    const double b1 = bids1[i];
    const double b2 = bids2[i];
    if (!(b1 >= 0) || !(b2 >= 0)) {
      throw Error(ErrorCode::kInvalidArgument, "bids must be non-negative");
    }
    const bool bidder_wins = b1 > b2;
    const double price = rule == PriceRule::kFirst ? (bidder_wins ? b1 : b2)
                                                   : (bidder_wins ? b2 : b1);
    won[i] = bidder_wins;
    out.winner.push_back(bidder_wins ? 1 : 2);
    out.bids1.push_back(b1);
    out.bids2.push_back(b2);
    out.prices.push_back(price);
    (bidder_wins ? out.payments1 : out.adversary_spend) += price;
  }
  out.profit = ValueOfMembership(v, won) - out.payments1;
  return out;
}

double ExpectedProfitUniformRandom(const AdditiveValuation& gstar,
                                   const std::vector<double>& ratios) {
  RequireRatios(ratios, gstar.item_count());
  double total = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double r = 1.0 - ratios[i];
    total += gstar.weights()[i] * 0.5 * r * r;
  }
  return total;
}

double ExpectedProfitUniformRandomXos(const XosValuation& v,
                                      const std::vector<double>& ratios) {
  const int m = v.item_count();
  RequireRatios(ratios, m);
  if (m > kMaxEnumerationItems) {
    throw Error(ErrorCode::kOutOfRange,
                "exact expectation enumerates 2^m win sets; m is capped at " +
                    std::to_string(kMaxEnumerationItems));
  }
  const auto& g = GammaStar(v).weights();
  // Item i is won with probability 1 - b_i, and the expected payment on it is
  // gstar_i E[X; X > b_i] = gstar_i (1 - b_i^2) / 2.
  double payments = 0.0;
  for (int i = 0; i < m; ++i) {
    const double b = ratios[static_cast<std::size_t>(i)];
    payments += g[static_cast<std::size_t>(i)] * 0.5 * (1.0 - b * b);
  }
  const Valuation val = v;
  double expected_value = 0.0;
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t s = 0; s <= full; ++s) {
    double p = 1.0;
    for (int i = 0; i < m && p > 0; ++i) {
      const double b = ratios[static_cast<std::size_t>(i)];
      p *= ((s >> i) & 1U) ? 1.0 - b : b;
    }
    if (p > 0) expected_value += p * ValueOfMask(val, s);
  }
  return expected_value - payments;
}

MonteCarloEstimate MonteCarloUniformRandom(const Valuation& v,
                                           const AdditiveValuation& gstar,
                                           const std::vector<double>& ratios,
                                           std::uint64_t samples,
                                           std::uint64_t seed) {
  const int m = ItemCount(v);
  RequireRatios(ratios, m);
  if (gstar.item_count() != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "gstar and valuation item counts differ");
  }
  if (samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two samples");
  }
  constexpr std::size_t kShards = 64;
  std::vector<double> sums(kShards, 0.0);
  std::vector<double> squares(kShards, 0.0);
  const Rng root(seed);
  ParallelFor(kShards, [&](std::size_t shard) {
    Rng rng = root.Split(shard);
    const std::uint64_t begin = samples * shard / kShards;
    const std::uint64_t end = samples * (shard + 1) / kShards;
    std::vector<bool> won(static_cast<std::size_t>(m));
    double s = 0.0;
    double q = 0.0;
    for (std::uint64_t n = begin; n < end; ++n) {
      double paid = 0.0;
      for (std::size_t i = 0; i < won.size(); ++i) {
        const double x = rng.Uniform();
        won[i] = x > ratios[i];
        if (won[i]) paid += x * gstar.weights()[i];
      }
      const double profit = ValueOfMembership(v, won) - paid;
      s += profit;
      q += profit * profit;
    }
    sums[shard] = s;
    squares[shard] = q;
  });
  double s = 0.0;
  double q = 0.0;
  for (std::size_t k = 0; k < kShards; ++k) {
    s += sums[k];
    q += squares[k];
  }
  const double n = static_cast<double>(samples);
  const double mean = s / n;
  const double var = std::max(0.0, (q - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), samples, seed};
}

double QpObjective(const AdditiveValuation& gstar,
                   const std::vector<double>& ratios) {
  return ExpectedProfitUniformRandom(gstar, ratios);
}

double QpDualObjective(const AdditiveValuation& gstar, double budget,
                       const std::vector<double>& lambda) {
  const auto& g = gstar.weights();
  const std::size_t m = g.size();
  if (lambda.size() != 2 * m + 1) {
    throw Error(ErrorCode::kInvalidArgument, "dual vector needs 2m+1 entries");
  }
  const double lb = lambda[2 * m];
  double value = -lb * budget;
  for (std::size_t i = 0; i < m; ++i) {
    const double up = lambda[i];
    const double down = lambda[m + i];
    if (g[i] == 0) {
      // The Lagrangian is linear in b_i; bounded below only when flat.
      if (up != down) return -std::numeric_limits<double>::infinity();
      value -= up;
      continue;
    }
    const double t = lb + (up - down) / g[i];  // 1 - b_i at the minimizer
    value += 0.5 * g[i] * t * t + lb * (1.0 - t) * g[i] - up * t -
             down * (1.0 - t);
  }
  return value;
}

std::vector<double> ProjectOntoBudgetBox(const std::vector<double>& y,
                                         const std::vector<double>& w,
                                         double budget) {
  const std::size_t m = y.size();
  const auto clip = [](double z) { return std::clamp(z, 0.0, 1.0); };
  std::vector<double> b(m);
  double used = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = clip(y[i]);
    used += w[i] * b[i];
  }
  if (used <= budget) return b;
  // b_i(mu) = clip(y_i - mu w_i); S(mu) = sum w_i b_i(mu) is piecewise linear
  // and non-increasing. Find the mu with S(mu) = B between its kinks.
  std::vector<double> kinks{0.0};
  for (std::size_t i = 0; i < m; ++i) {
    if (w[i] <= 0) continue;
    const double lo = (y[i] - 1.0) / w[i];
    const double hi = y[i] / w[i];
    if (lo > 0) kinks.push_back(lo);
    if (hi > 0) kinks.push_back(hi);
  }
  std::sort(kinks.begin(), kinks.end());
  const auto s_of = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (w[i] > 0) s += w[i] * clip(y[i] - mu * w[i]);
    }
    return s;
  };
  double mu = kinks.back();
  double prev_mu = 0.0;
  double prev_s = s_of(0.0);
  for (double k : kinks) {
    const double s = s_of(k);
    if (s <= budget) {
      mu = s == prev_s ? k
                       : prev_mu + (k - prev_mu) * (prev_s - budget) / (prev_s - s);
      break;
    }
    prev_mu = k;
    prev_s = s;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (w[i] > 0) b[i] = clip(y[i] - mu * w[i]);
  }
  return b;
}

QpSolution AdversaryQp(const AdditiveValuation& gstar, double budget,
                       const QpOptions& options) {
  if (std::abs(gstar.total() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "adversarial QP needs a normalized gstar (sum 1)");
  }
  if (!(budget > 0 && budget < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "adversarial QP needs 0 < B < 1");
  }
  const auto& g = gstar.weights();
  const std::size_t m = g.size();
  QpSolution sol;
  sol.ratios.assign(m, budget);
  sol.value = 0.5 * (1.0 - budget) * (1.0 - budget);
  sol.dual.assign(2 * m + 1, 0.0);
  sol.dual[2 * m] = 1.0 - budget;
  sol.dual_value = QpDualObjective(gstar, budget, sol.dual);

  const double lipschitz = *std::max_element(g.begin(), g.end());
  Rng rng(options.seed);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> y(m);
  for (int start = 0; start < options.random_starts; ++start) {
    for (double& z : y) z = rng.Uniform();
    std::vector<double> b = ProjectOntoBudgetBox(y, g, budget);
    for (int it = 0; it < options.iterations; ++it) {
      for (std::size_t i = 0; i < m; ++i) {
        y[i] = b[i] + g[i] * (1.0 - b[i]) / lipschitz;
      }
      std::vector<double> nb = ProjectOntoBudgetBox(y, g, budget);
      double moved = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        moved = std::max(moved, std::abs(nb[i] - b[i]));
      }
      b = std::move(nb);
      if (moved < 1e-15) break;
    }
    best = std::min(best, QpObjective(gstar, b));
  }
  sol.numeric_value = best;
  return sol;
}

CounterPlan DeterministicCounter(const std::vector<double>& bids1_sorted,
                                 double budget, int m) {
  if (static_cast<int>(bids1_sorted.size()) != m || m < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "bid vector length must equal m >= 1");
  }
  if (!(budget >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < bids1_sorted.size(); ++i) {
    if (!(bids1_sorted[i] >= 0) ||
        (i > 0 && bids1_sorted[i] < bids1_sorted[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bids must be non-negative and sorted non-decreasing");
    }
    any_positive = any_positive || bids1_sorted[i] > 0;
  }
  if (!any_positive) {
    throw Error(ErrorCode::kInvalidArgument,
                "k* is undefined for an all-zero bid vector");
  }
  CounterPlan plan;
  double prefix = 0.0;
  for (int k = 1; k <= m; ++k) {
    prefix += bids1_sorted[static_cast<std::size_t>(k - 1)];
    if (prefix < budget) plan.k_star = k;
  }
  const double item = 1.0 / m;
  if (plan.k_star < m) {
    plan.p_star = bids1_sorted[static_cast<std::size_t>(plan.k_star)];
    plan.bound = (m - budget / plan.p_star + 1.0) * (item - plan.p_star);
  } else {
    plan.p_star = std::numeric_limits<double>::quiet_NaN();
    plan.bound = std::numeric_limits<double>::quiet_NaN();
  }
  // Adversary buys the k cheapest items for every affordable k.
  std::vector<double> suffix(static_cast<std::size_t>(m) + 1, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i) + 1] + item -
        bids1_sorted[static_cast<std::size_t>(i)];
  }
  double cost = 0.0;
  plan.realized_profit = suffix[0];
  for (int k = 1; k <= m; ++k) {
    cost += bids1_sorted[static_cast<std::size_t>(k - 1)];
    if (cost > budget + kBudgetSlack) break;
    plan.realized_profit =
        std::min(plan.realized_profit, suffix[static_cast<std::size_t>(k)]);
  }
  return plan;
}

std::vector<double> RandomizedAdversary(int m, double budget, Rng& rng) {
  if (m < 2 || m % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "the randomized adversary needs an even item count");
  }
  const BudgetSplit split = SplitBudget(budget);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < m / 2; ++i) {
    const auto j = static_cast<std::size_t>(i) +
                   static_cast<std::size_t>(rng.Below(static_cast<std::uint64_t>(m - i)));
    std::swap(order[static_cast<std::size_t>(i)], order[j]);
  }
  std::vector<double> bids(static_cast<std::size_t>(m), split.w2 / m);
  for (int i = 0; i < m / 2; ++i) {
    bids[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
        split.w1 / m;
  }
  return bids;
}

double RandomizedAdversaryProfit(double budget) {
  const BudgetSplit split = SplitBudget(budget);
  return split.regime == BudgetRegime::kLow ? 1.0 - 2.0 * budget
                                            : 2.0 * (1.0 - budget) / 3.0;
}

double RandomizedAdversaryBestResponse(int m, double budget) {
  if (m < 2 || m % 2 != 0 || m > kMaxEnumerationItems) {
    throw Error(ErrorCode::kInvalidArgument,
                "exhaustive response needs an even m <= " +
                    std::to_string(kMaxEnumerationItems));
  }
  const BudgetSplit split = SplitBudget(budget);
  const double item = 1.0 / m;
  const double high = split.w1 / m;
  const double low = split.w2 / m;
  // All subsets of size m/2.
  std::vector<std::uint64_t> subsets;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    if (std::popcount(s) == m / 2) subsets.push_back(s);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a <= m; ++a) {
    for (int c = 0; a + c <= m; ++c) {
      // Items [0, a) bid high+, [a, a+c) bid low+, the rest bid 0.
      double total = 0.0;
      for (std::uint64_t s : subsets) {
        double profit = 0.0;
        for (int i = 0; i < a + c; ++i) {
          const bool in_s = (s >> i) & 1U;
          const double adversary = in_s ? high : low;
          const double bid = i < a ? high : low;
          // bid+ beats the adversary iff bid >= adversary bid.
          if (bid >= adversary) profit += item - bid;
        }
        total += profit;
      }
      best = std::max(best, total / static_cast<double>(subsets.size()));
    }
  }
  return best;
}

PureCounter BidderCounterToPure(const XosValuation& v,
                                const std::vector<double>& bids2) {
  const auto& g = GammaStar(v).weights();
  if (bids2.size() != g.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "adversary vector length differs from the item count");
  }
  PureCounter out;
  out.bids1.assign(g.size(), 0.0);
  out.wins.assign(g.size(), false);
  double paid = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(bids2[i] >= 0)) {
      throw Error(ErrorCode::kInvalidArgument, "bids must be non-negative");
    }
    if (bids2[i] < g[i]) {
      out.bids1[i] = bids2[i] + kOutbid;
      out.wins[i] = true;
      paid += bids2[i];
    }
  }
  out.profit = ValueOfMembership(Valuation(v), out.wins) - paid;
  return out;
}

}  // namespace riskfree
