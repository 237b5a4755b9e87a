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

#include "riskfree/strategies.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "riskfree/analysis.h"
#include "riskfree/closed_forms.h"
#include "riskfree/sequential.h"
#include "riskfree/uniform_additive.h"
#include "test_util.h"

namespace riskfree {
namespace {

using ::riskfree::testing::ForAll;

Valuation Uniform(int m) {
  return AdditiveValuation(std::vector<double>(m, 1.0 / m));
}

TEST(XosSqrtPolicyTest, BidsScaleGammaStar) {
  const XosSqrtPolicy p(AdditiveValuation({0.5, 0.3, 0.2}), 0.25);
  ASSERT_EQ(p.bids().size(), 3u);
  EXPECT_NEAR(p.bids()[0], 0.25, 1e-15);
  EXPECT_NEAR(p.bids()[1], 0.15, 1e-15);
  EXPECT_NEAR(p.bids()[2], 0.10, 1e-15);
  EXPECT_EQ(p.Name(), "xos_sqrt");
}

TEST(XosSqrtPolicyTest, ZeroBudgetBidsZero) {
  const XosValuation v(
      {AdditiveValuation({0.5, 0.3, 0.2}), AdditiveValuation({0.2, 0.2, 0.2})});
  const XosSqrtPolicy p(GammaStar(v), 0.0);
  for (double b : p.bids()) EXPECT_EQ(b, 0.0);
  // Ties go to the adversary, who matches zero bids at no cost.
  EXPECT_NEAR(BestResponseToFixedBids(v, p.bids(), 0.0, PriceRule::kFirst)
                  .min_profit,
              0.0, 1e-12);
}

TEST(XosSqrtPolicyTest, QuarterBudgetGuarantee) {
  ForAll(100, 81, [](Rng& rng, int) {
    const int m = 1 + static_cast<int>(rng.Below(10));
    const XosValuation v = RandomXos(m, 1 + static_cast<int>(rng.Below(5)), rng);
    const XosSqrtPolicy p(GammaStar(v), 0.25);
    // The bids never exceed what any item can be worth.
    for (int i = 0; i < m; ++i) {
      EXPECT_LE(p.bids()[i], Value(v, std::vector<int>{i}) + 1e-15);
    }
    EXPECT_GE(AdversaryBestResponse(v, 0.25, p, PriceRule::kFirst).profit,
              0.25 - 1e-9);
  });
}

TEST(BudgetPoliciesTest, LowBudgetThreeItems) {
  const LowBudgetPolicy p(3, 0.05);
  EXPECT_TRUE(p.warning().empty());
  EXPECT_NEAR(AdversaryBestResponse(Uniform(3), 0.05, p, PriceRule::kFirst)
                  .profit,
              0.85, 1e-9);
  const LowBudgetPolicy zero(3, 0.0);
  EXPECT_NEAR(AdversaryBestResponse(Uniform(3), 0.0, zero, PriceRule::kFirst)
                  .profit,
              1.0, 1e-9);
  EXPECT_FALSE(LowBudgetPolicy(3, 0.2).warning().empty());
}

TEST(BudgetPoliciesTest, HighBudgetThreeItems) {
  const HighBudgetPolicy p(3, 0.7);
  EXPECT_TRUE(p.warning().empty());
  EXPECT_NEAR(AdversaryBestResponse(Uniform(3), 0.7, p, PriceRule::kFirst)
                  .profit,
              0.1, 1e-9);
  EXPECT_FALSE(HighBudgetPolicy(3, 0.5).warning().empty());
}

TEST(BudgetPoliciesTest, ClosedFormsAcrossItemCounts) {
  UniformAdditiveSolver& solver = SharedUniformAdditiveSolver();
  for (int m = 1; m <= 8; ++m) {
    const double low = 0.7 / (m * m);
    const LowBudgetPolicy lp(m, low);
    EXPECT_NEAR(AdversaryBestResponse(Uniform(m), low, lp, PriceRule::kFirst)
                    .profit,
                solver.Exact(m)(low), 1e-9);
    const double high = (m - 1.0) / m + 0.3 / m;
    const HighBudgetPolicy hp(m, high);
    EXPECT_NEAR(AdversaryBestResponse(Uniform(m), high, hp, PriceRule::kFirst)
                    .profit,
                solver.Exact(m)(high), 1e-9);
  }
}

TEST(UniformAdditiveAdversaryTest, FirstBidAtTwoItems) {
  const UniformAdditiveAdversary adv(0.5,
                                     UniformAdditiveAdversary::Mode::kAlphaTilde);
  SeqGameState s;
  s.item_count = 2;
  s.initial_budget = s.adversary_budget = 0.3;
  s.won_by_1.assign(2, false);
  Rng rng(1);
  const double alpha = ComputeAlphaParams(2, 0.3).alpha_tilde;
  EXPECT_NEAR(adv.Bid(s, rng), alpha / 2, 1e-15);
    // 1 - (4 - 2 sqrt 2)(1 - sqrt 0.3), halved.
  EXPECT_NEAR(adv.Bid(s, rng), 0.235062, 1e-6);
}

TEST(UniformAdditiveAdversaryTest, AlphaTildeHoldsTheSqrtBound) {
  for (int m = 2; m <= 10; ++m) {
    const UniformAdditiveAdversary adv(
        1.0 / m, UniformAdditiveAdversary::Mode::kAlphaTilde);
    for (int i = 0; i <= 20; ++i) {
      const double x = i / 20.0;
      const double profit =
          BidderBestResponse(Uniform(m), x, adv, PriceRule::kFirst).profit;
      EXPECT_LE(profit, FBound(x) + 1 / std::sqrt(m) + 1e-9)
          << "m=" << m << " x=" << x;
    }
  }
}

TEST(UniformAdditiveAdversaryTest, WholeBudgetLeavesNothing) {
  for (int m = 1; m <= 6; ++m) {
    const UniformAdditiveAdversary adv(
        1.0 / m, UniformAdditiveAdversary::Mode::kAlphaTilde);
    EXPECT_NEAR(
        BidderBestResponse(Uniform(m), 1.0, adv, PriceRule::kFirst).profit,
        0.0, 1e-9);
  }
}

TEST(UniformAdditiveAdversaryTest, OptimalModeRealizesTheValueFunction) {
  UniformAdditiveSolver& solver = SharedUniformAdditiveSolver();
  ForAll(60, 82, [&](Rng& rng, int) {
    const int m = 1 + static_cast<int>(rng.Below(8));
    const double x = rng.Uniform(0, 1.1);
    const UniformAdditiveAdversary adv(
        1.0 / m, UniformAdditiveAdversary::Mode::kOptimal);
    EXPECT_NEAR(
        BidderBestResponse(Uniform(m), x, adv, PriceRule::kFirst).profit,
        solver.Exact(m)(x), 1e-9)
        << "m=" << m << " x=" << x;
  });
}

TEST(ConstantPriceTest, PlanExample) {
  const ConstantPricePlan plan = MakeConstantPricePlan(10, 0.2, 2);
  EXPECT_EQ(plan.q, 5);
  EXPECT_NEAR(plan.p, 1.0 / 30, 1e-15);
  EXPECT_NEAR(plan.bound, 0.26, 1e-12);
  EXPECT_ERROR_CODE(MakeConstantPricePlan(10, 0.2, 1),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(MakeConstantPricePlan(3, 0.2, 4),
                    ErrorCode::kInvalidArgument);
}

TEST(ConstantPriceTest, ChooseKBreaksTiesLow) {
  EXPECT_NEAR(Tangent(2, 0.5).value, 1.0 / 12, 1e-15);
  EXPECT_NEAR(Tangent(3, 0.5).value, 1.0 / 12, 1e-15);
  EXPECT_EQ(ChooseK(0.5, 100), 3);
  EXPECT_EQ(ChooseK(0.1, 100), 2);
  EXPECT_EQ(ChooseK(0.9, 3), 3);
  for (int i = 1; i < 100; ++i) {
    const double b = i / 100.0;
    EXPECT_NEAR(Tangent(ChooseK(b, 200) - 1, b).value, TStar(b).value, 1e-12);
  }
}

TEST(ConstantPriceTest, GuaranteeAgainstExhaustiveAdversary) {
  ForAll(60, 83, [](Rng& rng, int) {
    const int m = 2 + static_cast<int>(rng.Below(11));
    const SubadditiveIdenticalValuation v = RandomSubadditiveIdentical(m, rng);
    const double budget = rng.Uniform(0.001, 0.9);
    const int k = 2 + static_cast<int>(rng.Below(m - 1));
    const ConstantPricePolicy policy(v, budget, k);
    const ConstantPricePlan& plan = policy.plan();
    const double profit =
        AdversaryBestResponse(v, budget, policy, PriceRule::kFirst).profit;
    EXPECT_GE(profit, v.table()[plan.q] - plan.q * plan.p - 1e-9);
    EXPECT_GE(profit, CoverLowerBound(v, plan.q) - plan.q * plan.p - 1e-9);
    // The prefix adversaries that outbid p on the first j items realize the
    // exhaustive best response.
    double prefix = std::numeric_limits<double>::infinity();
    for (int j = 0; j + plan.q <= m; ++j) {
      const PrefixAdversary adv(j, plan.p + kOutbid);
      prefix = std::min(prefix, Simulate(v, budget, policy, adv,
                                         PriceRule::kFirst, 1)
                                    .profit);
    }
    EXPECT_NEAR(prefix, profit, 1e-9);
  });
}

TEST(SInstanceAdversaryTest, PhaseTwoBid) {
  const auto [v, params] = MakeSInstance(0.125, 10);
  const SInstanceAdversary adv(params);
  SeqGameState s;
  s.item_count = 10;
  s.initial_budget = s.adversary_budget = 0.125;
  s.won_by_1.assign(10, false);
  Rng rng(1);
  EXPECT_EQ(adv.Bid(s, rng), 0.0);
  s.round = 1;
  s.won_by_1[0] = true;
  s.wins_1 = 1;
  EXPECT_NEAR(adv.Bid(s, rng), 3.0 / 32, 1e-15);
  EXPECT_LE(adv.Bid(s, rng), params.x);
}

TEST(SInstanceAdversaryTest, WinningAllButOneIsCapped) {
  for (double x : {0.05, 0.1, 0.125, 0.2}) {
    const int m = std::max(10, static_cast<int>(std::ceil(LThreshold(x))));
    if (m > 16) continue;
    const auto [v, params] = MakeSInstance(x, m);
    const SInstanceCases cases =
        SInstanceCaseAnalysis(params, SharedUniformAdditiveSolver());
    EXPECT_LE(cases.case2, 0.5 - 2 * x + 1e-9) << x;
  }
}

TEST(SInstanceAdversaryTest, CaseAnalysisMatchesExhaustiveResponse) {
  for (double x : {0.03, 0.05, 0.08, 0.1, 0.125}) {
    const int lo = static_cast<int>(std::ceil(LThreshold(x)));
    for (int m = lo; m <= std::min(lo + 3, 14); ++m) {
      const auto [v, params] = MakeSInstance(x, m);
      const SInstanceAdversary adv(params);
      const double exhaustive =
          BidderBestResponse(v, x, adv, PriceRule::kFirst).profit;
      const SInstanceCases cases =
          SInstanceCaseAnalysis(params, SharedUniformAdditiveSolver());
      EXPECT_NEAR(cases.value, exhaustive, 1e-9) << "x=" << x << " m=" << m;
    }
  }
}

TEST(UniformRandomPolicyTest, MeanBidAndDeterminism) {
  const AdditiveValuation g({0.2, 0.3, 0.5});
  const UniformRandomPolicy p(g);
  Rng a(5), b(5);
  EXPECT_EQ(p.BidVector(3, 0.0, a), p.BidVector(3, 0.0, b));
  const int n = 100'000;
  std::vector<double> sum(3, 0.0);
  Rng rng(6);
  for (int t = 0; t < n; ++t) {
    const std::vector<double> bids = p.BidVector(3, 0.0, rng);
    for (int i = 0; i < 3; ++i) {
      EXPECT_GE(bids[i], 0.0);
      EXPECT_LE(bids[i], g.weights()[i]);
      sum[i] += bids[i];
    }
  }
  for (int i = 0; i < 3; ++i) {
    // Standard error of the mean of U(0, w) is w / sqrt(12 n).
    const double se = g.weights()[i] / std::sqrt(12.0 * n);
    EXPECT_NEAR(sum[i] / n, g.weights()[i] / 2, 4 * se);
  }
}

TEST(PrefixAdversaryTest, BidsOnlyOnPrefixWithinBudget) {
  const PrefixAdversary p(2, 0.3);
  SeqGameState s;
  s.item_count = 4;
  s.adversary_budget = 0.2;
  Rng rng(1);
  EXPECT_NEAR(p.Bid(s, rng), 0.2, 1e-15);
  s.round = 2;
  EXPECT_EQ(p.Bid(s, rng), 0.0);
}

TEST(PolicySpecTest, Parses) {
  const PolicySpec c = ParsePolicySpec("constant_price(3)");
  EXPECT_EQ(c.kind, "constant_price");
  EXPECT_EQ(c.args, std::vector<double>{3});
  const PolicySpec f = ParsePolicySpec(" fixed(0.1, 0.25) ");
  EXPECT_EQ(f.kind, "fixed");
  EXPECT_EQ(f.args, (std::vector<double>{0.1, 0.25}));
  for (const char* name : {"xos_sqrt", "low_budget", "high_budget",
                           "alpha_tilde", "s_adversary", "uniform_random"}) {
    const PolicySpec s = ParsePolicySpec(name);
    EXPECT_EQ(s.kind, name);
    EXPECT_TRUE(s.args.empty());
  }
}

TEST(PolicySpecTest, RejectsMalformedText) {
  for (const char* text :
       {"", "nonsense", "fixed()", "fixed(0.1", "fixed(a)", "constant_price",
        "constant_price(2,3)", "xos_sqrt(1)", "fixed(0.1,)", "fixed(1)x"}) {
    EXPECT_ERROR_CODE(ParsePolicySpec(text), ErrorCode::kParse);
  }
}

TEST(MakePolicyTest, BuildsEveryName) {
  const Valuation additive = AdditiveValuation({1, 1, 1, 1});
  const Normalized n = Normalize(additive);
  PolicyContext ctx{&n.valuation, 0.2, std::nullopt, nullptr};
  for (const char* name : {"xos_sqrt", "low_budget", "high_budget",
                           "alpha_tilde", "uniform_random",
                           "fixed(0.1,0.1,0.1,0.1)"}) {
    const auto p = MakePolicy(ParsePolicySpec(name), ctx);
    ASSERT_NE(p, nullptr);
  }
  const auto [si, params] = MakeSInstance(0.125, 10);
  const Valuation sv = si;
  PolicyContext sctx{&sv, 0.125, params, nullptr};
  EXPECT_EQ(MakePolicy(ParsePolicySpec("s_adversary"), sctx)->Name(),
            "s_adversary");
  EXPECT_EQ(MakePolicy(ParsePolicySpec("constant_price(2)"), sctx)->Name(),
            "constant_price(2)");
}

TEST(MakePolicyTest, RejectsMismatchedInstances) {
  const auto [si, params] = MakeSInstance(0.125, 10);
  const Valuation sv = si;
  PolicyContext sctx{&sv, 0.125, std::nullopt, nullptr};
  EXPECT_ERROR_CODE(MakePolicy(ParsePolicySpec("xos_sqrt"), sctx),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(MakePolicy(ParsePolicySpec("s_adversary"), sctx),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(MakePolicy(ParsePolicySpec("constant_price(2.5)"), sctx),
                    ErrorCode::kInvalidArgument);
  const Valuation skewed = AdditiveValuation({0.7, 0.3});
  PolicyContext actx{&skewed, 0.2, std::nullopt, nullptr};
  EXPECT_ERROR_CODE(MakePolicy(ParsePolicySpec("alpha_tilde"), actx),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(MakePolicy(ParsePolicySpec("constant_price(2)"), actx),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(MakePolicy(ParsePolicySpec("fixed(0.1)"), actx),
                    ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace riskfree
