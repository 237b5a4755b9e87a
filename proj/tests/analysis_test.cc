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

#include "riskfree/analysis.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "riskfree/closed_forms.h"
#include "riskfree/uniform_additive.h"
#include "test_util.h"

namespace riskfree {
namespace {

SweepReport WithMargins(std::vector<double> margins, bool strict = false) {
  SweepReport r;
  r.name = "r";
  r.tolerance = 1e-9;
  r.strict = strict;
  for (double m : margins) r.points.push_back({1, 0.5, 0.0, 0.0, m});
  FinalizeReport(r);
  return r;
}

TEST(FinalizeReportTest, Rules) {
  EXPECT_TRUE(WithMargins({0.1, 0.0, -1e-10}).pass);
  EXPECT_FALSE(WithMargins({0.1, -1e-8}).pass);
  EXPECT_DOUBLE_EQ(WithMargins({0.1, -1e-8}).min_margin, -1e-8);
  EXPECT_DOUBLE_EQ(WithMargins({0.1, -1e-8}).worst.margin, -1e-8);
  EXPECT_FALSE(WithMargins({}).pass);
  EXPECT_FALSE(WithMargins({0.1, std::nan("")}).pass);
  EXPECT_FALSE(WithMargins({0.1, 0.0}, true).pass);
  EXPECT_TRUE(WithMargins({0.1, 1e-12}, true).pass);
  SweepReport measured;
  measured.judged = false;
  FinalizeReport(measured);
  EXPECT_TRUE(measured.pass);
}

TEST(GridTest, IncludesEndpoint) {
  const std::vector<double> g = Grid(0.0, 1.0, 0.25);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  const std::vector<double> h = Grid(0.0, 1.0, 0.3);
  ASSERT_EQ(h.size(), 5u);
  EXPECT_DOUBLE_EQ(h.back(), 1.0);
  EXPECT_NEAR(h[3], 0.9, 1e-12);
}

TEST(ParseSuiteTest, Names) {
  EXPECT_EQ(ParseSuite("xos"), Suite::kXos);
  EXPECT_EQ(ParseSuite("si"), Suite::kSi);
  EXPECT_EQ(ParseSuite("simul"), Suite::kSimul);
  EXPECT_EQ(ParseSuite("all"), Suite::kAll);
  EXPECT_ERROR_CODE(ParseSuite("everything"), ErrorCode::kParse);
}

TEST(FormatNumberTest, TwelveSignificantDigits) {
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(1.0 / 3), "0.333333333333");
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(std::nan("")), "nan");
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatNumber(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(FormatNumber(0.45), "0.45");
}

TEST(SweepTest, TablesAndBreakpoints) {
  const SweepReport tables = SweepTables(2000, 3);
  EXPECT_TRUE(tables.pass);
  EXPECT_EQ(tables.points.size(), 6000u);
  EXPECT_GE(tables.min_margin, -1e-9);
  const SweepReport bp = SweepThreeItemBreakpoints();
  EXPECT_TRUE(bp.pass);
}

TEST(SweepTest, UniformBoundOnSmallGrid) {
  UniformAdditiveSolver solver;
  const SweepReport r = SweepUniformBound(8, 0.05, 1e-9, solver);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.min_margin, 0.0);
  const SweepReport alpha = SweepAlphaClaims(8, 0.05, 1e-9, solver);
  EXPECT_TRUE(alpha.pass);
  EXPECT_TRUE(SweepAlphaRange(8, 0.05, 1e-9).pass);
}

TEST(SweepTest, DegenerateUnitBudget) {
  // At x = 1 every f_m vanishes, so the margin is exactly 1/sqrt(m).
  UniformAdditiveSolver& solver = SharedUniformAdditiveSolver();
  for (int m = 1; m <= 10; ++m) {
    EXPECT_NEAR(FBound(1.0) + 1 / std::sqrt(m) - solver.Upper(m, 1.0),
                1 / std::sqrt(m), 1e-12);
  }
}

TEST(SweepTest, SmallRandomizedFamiliesPass) {
  EXPECT_TRUE(SweepXosSqrt(40, 6, 3, {0.04, 0.25, 0.49}, 5, 1e-9).pass);
  EXPECT_TRUE(SweepConstantPrice({20}, 20, 5, 1e-9).pass);
  EXPECT_TRUE(SweepTangency(20, 0.01, 1e-9).pass);
  EXPECT_TRUE(SweepSecondPrice(30, 8, 300, 5, 1e-9).pass);
  EXPECT_TRUE(SweepQp({0.2, 0.7}, 3, 20'000, 5).pass);
  EXPECT_TRUE(SweepRandomizedAdversary({4}, {0.1, 0.5}, 1e-9).pass);
  EXPECT_TRUE(SweepRandomizedGap({4}, {0.1, 0.5}).pass);
  EXPECT_TRUE(SweepConstantBidCounter({100}, {0.1, 0.5}, 10).pass);
  EXPECT_TRUE(SweepPureCounter({10}, 200, 5, 1e-9).pass);
}

TEST(SweepTest, BetaCoverFindsSmallCounterexamplesOnly) {
  const SweepReport big = SweepBetaCover(40, 5, 6, 7, 1e-6);
  EXPECT_TRUE(big.pass);
  // Tables near (0, 1/2, 1/2, 1) reach beta = 4/3 > ln 3.
  const SweepReport small = SweepBetaCover(200, 3, 3, 7, 1e-6);
  EXPECT_FALSE(small.pass);
  EXPECT_LT(small.min_margin, -0.1);
  EXPECT_GE(small.min_margin, std::log(3.0) - 4.0 / 3.0 - 1e-9);
}

TEST(SweepTest, SInstanceConstantIsMeasured) {
  UniformAdditiveSolver solver;
  const SweepReport r = SweepSInstance({0.1}, {20, 40}, solver);
  ASSERT_EQ(r.points.size(), 1u);
  bool has_constant = false;
  for (const auto& [name, value] : r.measurements) {
    if (name.rfind("C(", 0) == 0) {
      has_constant = true;
      EXPECT_TRUE(std::isfinite(value));
    }
  }
  EXPECT_TRUE(has_constant);
}

TEST(ReportsTest, JsonIsDeterministicWithoutRuntime) {
  VerifyOptions options;
  options.m_max = 5;
  options.grid_step = 0.1;
  options.instances = 10;
  options.mc_samples = 2000;
  const auto run = [&] {
    UniformAdditiveSolver solver;
    std::ostringstream out;
    WriteReportsJson(VerifyAll(Suite::kSimul, options, solver), false, out);
    return out.str();
  };
  const std::string a = run();
  EXPECT_EQ(a, run());
  const nlohmann::json j = nlohmann::json::parse(a);
  ASSERT_TRUE(j.is_object() || j.is_array());
  EXPECT_EQ(a.find("runtime"), std::string::npos);
  UniformAdditiveSolver solver;
  std::ostringstream timed;
  WriteReportsJson(VerifyAll(Suite::kSimul, options, solver), true, timed);
  EXPECT_NE(timed.str().find("runtime"), std::string::npos);
}

TEST(ReportsTest, TextNamesEveryReport) {
  std::vector<SweepReport> reports{WithMargins({0.5}), WithMargins({-1.0})};
  reports[0].name = "first_family";
  reports[1].name = "second_family";
  std::ostringstream out;
  WriteReportsText(reports, false, out);
  const std::string s = out.str();
  EXPECT_NE(s.find("first_family"), std::string::npos);
  EXPECT_NE(s.find("second_family"), std::string::npos);
  EXPECT_NE(s.find("PASS"), std::string::npos);
  EXPECT_NE(s.find("FAIL"), std::string::npos);
  EXPECT_FALSE(AllPass(reports));
}

TEST(FiguresTest, FigureOneCarriesThreeItemBreakpoints) {
  std::ostringstream out;
  WriteFigure1Csv(0.1, SharedUniformAdditiveSolver(), out);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("x,series,value\n", 0), 0u);
  for (const char* row :
       {"0.111111111111,f3,0.666666666667", "0.166666666667,f3,0.555555555556",
        "0.555555555556,f3,0.166666666667", "0.666666666667,f3,0.111111111111",
        "0.25,f2,0.5", "0.5,f2,0.25", "0.25,f,0.25"}) {
    EXPECT_NE(s.find(row), std::string::npos) << row;
  }
  for (const char* series : {",f_plus_inv_sqrt2,", ",f_plus_inv_sqrt3,"}) {
    EXPECT_NE(s.find(series), std::string::npos) << series;
  }
}

TEST(FiguresTest, FigureTwoEnvelope) {
  std::ostringstream out;
  WriteFigure2Csv(0.05, out);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("x,series,value\n", 0), 0u);
  // Tangency points of t_1, t_2, t_3 and the crossings at 1/3 and 1/2.
  for (const char* row :
       {"0.25,t_star,0.25", "0.333333333333,t_star,0.166666666667",
        "0.444444444444,t_star,0.111111111111",
        "0.5,t_star,0.0833333333333", "0.5625,t_star,0.0625"}) {
    EXPECT_NE(s.find(row), std::string::npos) << row;
  }
}

TEST(ProfitabilityTableTest, QuarterBudget) {
  const std::vector<ProfitabilityRow> rows = ProfitabilityTable(0.25);
  ASSERT_FALSE(rows.empty());
  bool saw_second = false;
  for (const ProfitabilityRow& r : rows) {
    EXPECT_LE(r.lower, r.upper + 1e-12) << r.auction << " " << r.valuation_class;
    if (r.auction == "simultaneous second price") {
      saw_second = true;
      EXPECT_NEAR(r.lower, 0.75, 1e-12);
    }
    if (r.auction == "simultaneous first price") {
      EXPECT_NEAR(r.lower, 0.28125, 1e-12);
      EXPECT_NEAR(r.upper, 0.5, 1e-12);
    }
  }
  EXPECT_TRUE(saw_second);
}

}  // namespace
}  // namespace riskfree
