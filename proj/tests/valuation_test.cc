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

#include "riskfree/valuation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "riskfree/analysis.h"
#include "riskfree/closed_forms.h"
#include "test_util.h"

namespace riskfree {
namespace {

using ::riskfree::testing::ForAll;
using ::riskfree::testing::MaskItems;

constexpr double kTol = 1e-9;

TEST(ValuationTest, XosValueIsMaxOfClauseSums) {
  const Valuation v = XosValuation(
      {AdditiveValuation({0.7, 0.2}), AdditiveValuation({0.5, 0.5})});
  const std::vector<int> s{1};
  EXPECT_DOUBLE_EQ(Value(v, s), 0.5);
  EXPECT_DOUBLE_EQ(Value(v, std::vector<int>{0, 1}), 1.0);
}

TEST(ValuationTest, EmptySetIsWorthZero) {
  const std::vector<int> none;
  EXPECT_EQ(Value(AdditiveValuation({0.3, 0.7}), none), 0.0);
  EXPECT_EQ(Value(XosValuation({AdditiveValuation({1.0})}), none), 0.0);
  EXPECT_EQ(Value(SubadditiveIdenticalValuation({0, 0.6, 1}), none), 0.0);
}

TEST(ValuationTest, SInstanceSingletonValue) {
  const auto [v, params] = MakeSInstance(0.125, 10);
  EXPECT_NEAR(Value(v, std::vector<int>{3}), 0.25, kTol);
}

TEST(ValuationTest, DuplicatesCountOnceAndIndicesAreChecked) {
  const Valuation v = AdditiveValuation({0.2, 0.8});
  EXPECT_DOUBLE_EQ(Value(v, std::vector<int>{1, 1}), 0.8);
  EXPECT_ERROR_CODE(Value(v, std::vector<int>{2}), ErrorCode::kOutOfRange);
  EXPECT_ERROR_CODE(Value(v, std::vector<int>{-1}), ErrorCode::kOutOfRange);
}

TEST(ValuationTest, AdditiveEqualsSumOfMembers) {
  ForAll(50, 21, [](Rng& rng, int) {
    const int m = 1 + static_cast<int>(rng.Below(8));
    const std::vector<double> w =
        ::riskfree::testing::RandomVector(rng, m, 0.0, 1.0);
    const Valuation v = AdditiveValuation(w);
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
      double sum = 0;
      for (int i : MaskItems(mask, m)) sum += w[i];
      EXPECT_NEAR(ValueOfMask(v, mask), sum, 1e-12);
    }
  });
}

TEST(ValuationTest, ConstructionInvariants) {
  EXPECT_ERROR_CODE(AdditiveValuation({-0.1, 1.0}),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(AdditiveValuation({0.0, 0.0}),
                    ErrorCode::kDegenerateValuation);
  EXPECT_ERROR_CODE(XosValuation({}), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(XosValuation({AdditiveValuation({1.0}),
                                  AdditiveValuation({1.0, 1.0})}),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(SubadditiveIdenticalValuation({0.1, 0.5, 1.0}),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(SubadditiveIdenticalValuation({0.0, 0.6, 0.5}),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(SubadditiveIdenticalValuation({0.0, 0.4, 1.0}),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(SubadditiveIdenticalValuation({0.0, 0.0, 0.0}),
                    ErrorCode::kDegenerateValuation);
}

TEST(GammaStarTest, PicksLargestClause) {
  const XosValuation v(
      {AdditiveValuation({0.7, 0.2}), AdditiveValuation({0.5, 0.5})});
  EXPECT_EQ(GammaStar(v).weights(), (std::vector<double>{0.5, 0.5}));
}

TEST(GammaStarTest, SingleClause) {
  const XosValuation v({AdditiveValuation({1.0})});
  EXPECT_EQ(GammaStar(v).weights(), (std::vector<double>{1.0}));
}

TEST(GammaStarTest, TieGoesToLowestIndex) {
  const XosValuation v(
      {AdditiveValuation({0.6, 0.4}), AdditiveValuation({0.5, 0.5})});
  EXPECT_EQ(GammaStar(v).weights(), (std::vector<double>{0.6, 0.4}));
}

TEST(GammaStarTest, DominatedByXosValueOnEverySet) {
  ForAll(20, 22, [](Rng& rng, int) {
    const int m = 1 + static_cast<int>(rng.Below(12));
    const XosValuation v =
        RandomXos(m, 1 + static_cast<int>(rng.Below(5)), rng);
    const Valuation gs = GammaStar(v);
    const Valuation vv = v;
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
      EXPECT_GE(ValueOfMask(vv, mask) + 1e-12, ValueOfMask(gs, mask));
    }
  });
}

TEST(NormalizeTest, AdditiveScale) {
  const Normalized n = Normalize(AdditiveValuation({2.0, 2.0}));
  EXPECT_DOUBLE_EQ(n.scale, 4.0);
  EXPECT_EQ(std::get<AdditiveValuation>(n.valuation).weights(),
            (std::vector<double>{0.5, 0.5}));
}

TEST(NormalizeTest, NormalizedInputIsUnchanged) {
  const Valuation v = AdditiveValuation({0.25, 0.75});
  const Normalized n = Normalize(v);
  EXPECT_DOUBLE_EQ(n.scale, 1.0);
  EXPECT_EQ(n.valuation, v);
}

TEST(NormalizeTest, SInstanceMarginalsDivideByTwoPlusSigma) {
  const double x = 0.125;
  const int m = 10;
  const double sigma = 8 * x / (1 - 4 * x);
  const int d = m - 2;
  // Marginals 1, sigma/d (m - 2 times), 1.
  std::vector<double> table{0.0, 1.0};
  for (int i = 2; i < m; ++i) table.push_back(table.back() + sigma / d);
  table.push_back(table.back() + 1.0);
  const Normalized n = Normalize(SubadditiveIdenticalValuation(table));
  EXPECT_NEAR(n.scale, 2 + sigma, kTol);
  const auto& got = std::get<SubadditiveIdenticalValuation>(n.valuation);
  const auto [expected, params] = MakeSInstance(x, m);
  ASSERT_EQ(got.table().size(), expected.table().size());
  for (std::size_t i = 0; i < got.table().size(); ++i) {
    EXPECT_NEAR(got.table()[i], expected.table()[i], kTol) << i;
  }
  EXPECT_NEAR(got.table().back(), 1.0, kTol);
}

TEST(SInstanceTest, EighthAtTenItems) {
  const auto [v, p] = MakeSInstance(0.125, 10);
  EXPECT_NEAR(p.sigma, 2.0, kTol);
  EXPECT_EQ(p.d, 8);
  EXPECT_EQ(p.m, 10);
  EXPECT_NEAR(p.phase2_bid, 3.0 / 32.0, kTol);
  EXPECT_LE(p.phase2_bid, p.x);
  const auto& t = v.table();
  EXPECT_NEAR(t[1], 0.25, kTol);
  EXPECT_NEAR(t[2], 0.3125, kTol);
  EXPECT_NEAR(t[9], 0.75, kTol);
  EXPECT_NEAR(t[10], 1.0, kTol);
  EXPECT_TRUE(IsMonotoneSubadditiveTable(t));
}

TEST(SInstanceTest, DomainErrors) {
  EXPECT_ERROR_CODE(MakeSInstance(0.125, 4), ErrorCode::kInfeasibleInstance);
  EXPECT_ERROR_CODE(MakeSInstance(0.3, 10), ErrorCode::kOutOfRange);
  EXPECT_ERROR_CODE(MakeSInstance(0.0, 10), ErrorCode::kOutOfRange);
}

TEST(SInstanceTest, SubadditiveIffSigmaAtMostD) {
  int checked_both_sides = 0;
  for (double x = 0.01; x < 0.245; x += 0.0037) {
    const double sigma = 8 * x / (1 - 4 * x);
    for (int m = 3; m <= 80; ++m) {
      const int d = m - 2;
      if (std::abs(sigma - d) < 1e-6) continue;
      const bool sub = IsMonotoneSubadditiveTable(SInstanceTable(x, m), 1e-12);
      EXPECT_EQ(sub, sigma <= d) << "x=" << x << " m=" << m;
      if (!(sigma <= d)) ++checked_both_sides;
    }
  }
  EXPECT_GT(checked_both_sides, 0);
  // Exactly on the boundary: sigma(1/8) = 2 = d at m = 4.
  EXPECT_TRUE(IsMonotoneSubadditiveTable(SInstanceTable(0.125, 4), 1e-12));
  EXPECT_FALSE(IsMonotoneSubadditiveTable(SInstanceTable(0.125, 3), 1e-12));
}

TEST(SInstanceTest, FeasibleInstancesHavePhaseTwoBidWithinBudget) {
  for (double x : {0.02, 0.05, 0.1, 0.15, 0.2, 0.24}) {
    const int m = static_cast<int>(std::ceil(LThreshold(x)));
    const auto [v, p] = MakeSInstance(x, m);
    EXPECT_LE(p.phase2_bid, x + kTol);
    EXPECT_LE(p.sigma, p.d + kTol);
  }
}

TEST(CoverLowerBoundTest, Examples) {
  std::vector<double> table(11);
  for (int i = 0; i <= 10; ++i) table[i] = std::min(1.0, i / 4.0);
  const SubadditiveIdenticalValuation v10(table);
  EXPECT_NEAR(CoverLowerBound(v10, 3), 0.25, kTol);
  EXPECT_NEAR(CoverLowerBound(v10, 10), 1.0, kTol);
  const SubadditiveIdenticalValuation v6({0, 0.3, 0.5, 0.6, 0.8, 0.9, 1.0});
  EXPECT_NEAR(CoverLowerBound(v6, 3), 0.5, kTol);
  EXPECT_ERROR_CODE(CoverLowerBound(v6, 0), ErrorCode::kOutOfRange);
  EXPECT_ERROR_CODE(CoverLowerBound(v6, 7), ErrorCode::kOutOfRange);
}

TEST(CoverLowerBoundTest, NeverExceedsTableValue) {
  ForAll(300, 23, [](Rng& rng, int) {
    const int m = 1 + static_cast<int>(rng.Below(40));
    const SubadditiveIdenticalValuation v = RandomSubadditiveIdentical(m, rng);
    ASSERT_TRUE(IsMonotoneSubadditiveTable(v.table(), 1e-12));
    for (int q = 1; q <= m; ++q) {
      EXPECT_GE(v.table()[q] + 1e-12, CoverLowerBound(v, q)) << q;
    }
  });
}

TEST(MonotonicityTest, RandomNestedSets) {
  ForAll(1000, 24, [](Rng& rng, int trial) {
    const int m = 1 + static_cast<int>(rng.Below(12));
    Valuation v = AdditiveValuation({1.0});
    switch (trial % 3) {
      case 0:
        v = RandomAdditive(m, rng);
        break;
      case 1:
        v = RandomXos(m, 1 + static_cast<int>(rng.Below(5)), rng);
        break;
      default:
        v = RandomSubadditiveIdentical(m, rng);
    }
    const std::uint64_t t = rng.Below(1ULL << m);
    const std::uint64_t s = t & rng.Below(1ULL << m);
    EXPECT_LE(ValueOfMask(v, s), ValueOfMask(v, t) + 1e-12);
  });
}

// min over r on the simplex grid of step 1/n of max_S r(S)/v(S).
double GridBeta(const Valuation& v, int n) {
  const int m = ItemCount(v);
  std::vector<double> values(1u << m);
  for (std::uint64_t mask = 1; mask < values.size(); ++mask) {
    values[mask] = ValueOfMask(v, mask);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> parts(m, 0);
  // Enumerate compositions of n into m non-negative parts.
  const auto visit = [&](const auto& self, int i, int left) -> void {
    if (i == m - 1) {
      parts[i] = left;
      double worst = 0;
      for (std::uint64_t mask = 1; mask < values.size(); ++mask) {
        int sum = 0;
        for (int j = 0; j < m; ++j) {
          if (mask >> j & 1) sum += parts[j];
        }
        const double r = static_cast<double>(sum) / n * values.back();
        worst = std::max(worst, values[mask] > 0
                                    ? r / values[mask]
                                    : (r > 0 ? 1e300 : 0.0));
      }
      best = std::min(best, worst);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      parts[i] = k;
      self(self, i + 1, left - k);
    }
  };
  visit(visit, 0, n);
  return best;
}

TEST(BetaCoverTest, AdditiveIsOne) {
  const CoverCertificate c = BetaCover(AdditiveValuation({0.5, 0.5}));
  EXPECT_NEAR(c.beta, 1.0, kTol);
  ASSERT_EQ(c.r.size(), 2u);
  EXPECT_NEAR(c.r[0], 0.5, kTol);
  EXPECT_NEAR(c.r[1], 0.5, kTol);
}

TEST(BetaCoverTest, XosIsAtMostOne) {
  ForAll(30, 25, [](Rng& rng, int) {
    const int m = 1 + static_cast<int>(rng.Below(6));
    const CoverCertificate c =
        BetaCover(RandomXos(m, 1 + static_cast<int>(rng.Below(5)), rng));
    EXPECT_LE(c.beta, 1.0 + 1e-9);
  });
}

TEST(BetaCoverTest, FourItemTableMatchesGridOracle) {
  const Valuation v = SubadditiveIdenticalValuation({0, 0.5, 0.5, 0.75, 1.0});
  const CoverCertificate c = BetaCover(v);
  const double grid = GridBeta(v, 100);
  EXPECT_LE(c.beta, grid + 1e-9);
  EXPECT_NEAR(c.beta, grid, 0.02);
  EXPECT_LE(c.beta, std::log(4.0));
}

TEST(BetaCoverTest, CertificateSatisfiesEveryConstraint) {
  ForAll(40, 26, [](Rng& rng, int) {
    const int m = 2 + static_cast<int>(rng.Below(5));
    const Valuation v = RandomSubadditiveIdentical(m, rng);
    const CoverCertificate c = BetaCover(v);
    double sum = 0;
    for (double r : c.r) {
      EXPECT_GE(r, -1e-12);
      sum += r;
    }
    EXPECT_NEAR(sum, TotalValue(v), kTol);
    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
      double rs = 0;
      for (int i : MaskItems(mask, m)) rs += c.r[i];
      EXPECT_LE(rs, c.beta * ValueOfMask(v, mask) + 1e-9);
    }
    // On identical items the uniform split is optimal, so beta is the
    // largest ratio (k/m) / v(k).
    const auto& t = std::get<SubadditiveIdenticalValuation>(v).table();
    double ratio = 0;
    for (int k = 1; k <= m; ++k) {
      ratio = std::max(ratio, static_cast<double>(k) / m / t[k]);
    }
    EXPECT_NEAR(c.beta, ratio, 1e-7);
  });
}

TEST(BetaCoverTest, ThreeItemTableExceedsLogM) {
  // v = (0, 1/2, 1/2, 1) is monotone and subadditive, yet any cover needs
  // beta = (2/3) / (1/2) = 4/3 > ln 3.
  const Valuation v = SubadditiveIdenticalValuation({0, 0.5, 0.5, 1.0});
  const CoverCertificate c = BetaCover(v);
  EXPECT_NEAR(c.beta, 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(GridBeta(v, 120), 4.0 / 3.0, 1e-9);
  EXPECT_GT(c.beta, std::log(3.0));
}

TEST(BetaCoverTest, RejectsLargeInstances) {
  EXPECT_ERROR_CODE(BetaCover(AdditiveValuation(std::vector<double>(9, 1.0))),
                    ErrorCode::kOutOfRange);
}

}  // namespace
}  // namespace riskfree
