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


#ifndef RISKFREE_ANALYSIS_H_
#define RISKFREE_ANALYSIS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "riskfree/rng.h"
#include "riskfree/uniform_additive.h"
#include "riskfree/valuation.h"

namespace riskfree {

// One grid point of a sweep. `margin` is positive when the checked claim
// holds at this point, whatever the direction of the inequality.
struct SweepPoint {
  int m = 0;
  double x = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

struct SweepReport {
  std::string name;
  std::string claim;
  std::string grid;
  double tolerance = 0.0;
  // Strict reports pass only when every margin is positive; others pass when
  // the minimum margin is at least -tolerance.
  bool strict = false;
  // False for measurement-only families, which never fail.
  bool judged = true;
  std::vector<SweepPoint> points;
  double min_margin = 0.0;
  SweepPoint worst;
  bool pass = true;
  double runtime_seconds = 0.0;
  // Named quantities measured by the sweep, such as empirical constants.
  std::vector<std::pair<std::string, double>> measurements;
};

// Fills min_margin, worst and pass from the points.
void FinalizeReport(SweepReport& report);

// Random instances. Every generator returns a normalized valuation.
XosValuation RandomXos(int m, int clauses, Rng& rng);
AdditiveValuation RandomAdditive(int m, Rng& rng);
// Random non-decreasing table closed under v(i + j) <= v(i) + v(j).
SubadditiveIdenticalValuation RandomSubadditiveIdentical(int m, Rng& rng);

// The grid {lo, lo + step, ...} with `hi` appended when it is not already
// within 1e-12 of the last point.
std::vector<double> Grid(double lo, double hi, double step);

// Exact f_m against the closed-form tables for m = 1, 2, 3 at random budgets
// in [0, 1.5).
SweepReport SweepTables(int samples, std::uint64_t seed);
// Interior breakpoints of f_3 against {1/9, 1/6, 1/3, 5/9, 2/3, 1}.
SweepReport SweepThreeItemBreakpoints();

// f_m(x) <= f(x) + 1/sqrt(m) for m in [1, m_max] and x = step, 2 step, ...
// below 1. Levels past the exact breakpoint cap use the certified upper
// envelope, which only makes the check harder to pass.
SweepReport SweepUniformBound(int m_max, double step, double tolerance,
                              UniformAdditiveSolver& solver);
// 0 <= alpha_tilde <= alpha_max on [1/m^2, (m-1)/m] for m in [2, m_max].
SweepReport SweepAlphaRange(int m_max, double step, double tolerance);
// max(g_m, h_m)(x, alpha_tilde) <= f(x) + 1/sqrt(m) on the same grid, with
// f_{m-1} replaced by its upper envelope where it is not exact.
SweepReport SweepAlphaClaims(int m_max, double step, double tolerance,
                             UniformAdditiveSolver& solver);

// Worst-case profit of the sqrt(B) gstar bids on random normalized XOS
// instances against the exhaustive adversary best response, under both
// price rules, against (1 - sqrt(B))^2.
SweepReport SweepXosSqrt(int instances, int max_items, int max_clauses,
                         const std::vector<double>& budgets,
                         std::uint64_t seed, double tolerance);

// Constant-price strategy with k = ChooseK(B, m) on random identical-item
// instances with B uniform in (0, 0.9), against every prefix adversary that
// outbids it. Checks profit >= t*(B) - (B k/(k-1))/m.
SweepReport SweepConstantPrice(const std::vector<int>& item_counts,
                               int instances_per_count, std::uint64_t seed,
                               double tolerance);

// Bidder 1's best value over the response classes of the three-phase S_{x,m}
// adversary, with uniform additive subgames valued by upper envelopes.
struct SInstanceCases {
  double case1 = 0.0;  // the adversary takes the first item
  double case2 = 0.0;  // Bidder 1 takes the first m - 1 items
  double case3 = 0.0;  // Bidder 1 takes item 1, the adversary a later one
  int best_j1 = 0;
  int best_j2 = 0;
  double value = 0.0;
};
SInstanceCases SInstanceCaseAnalysis(const SInstanceParams& params,
                                     UniformAdditiveSolver& solver);
// For each x: the measured C = max_m sqrt(m) (value - t_1(x)) over the item
// counts, which must be finite, and the excess over t_1 must shrink from the
// smallest to the largest count.
SweepReport SweepSInstance(const std::vector<double>& xs,
                           const std::vector<int>& item_counts,
                           UniformAdditiveSolver& solver);

// t_k touches f at (k/(k+1))^2 with matching slope for k <= k_max, and
// f >= t*(B) >= t_k(B) on the grid.
SweepReport SweepTangency(int k_max, double step, double tolerance);

// beta_cover on random identical-item subadditive tables against ln m.
SweepReport SweepBetaCover(int instances, int m_min, int m_max,
                           std::uint64_t seed, double tolerance);

// Truthful gstar bids in the simultaneous second-price auction against the
// enumerated best response and against random feasible adversary vectors.
SweepReport SweepSecondPrice(int instances, int max_items, int random_vectors,
                             std::uint64_t seed, double tolerance);

// Adversarial QP: closed form against projected gradient and a 0.001
// lattice search (m in {2, 3}), plus Monte Carlo of the uniform-random
// policy against the optimizer for the first instance of every budget.
SweepReport SweepQp(const std::vector<double>& budgets, int instances,
                    std::uint64_t mc_samples, std::uint64_t seed);

// Exact best response to the w1/w2 randomized adversary on m even items
// against 1 - 2B or 2(1 - B)/3.
SweepReport SweepRandomizedAdversary(const std::vector<int>& item_counts,
                                     const std::vector<double>& budgets,
                                     double tolerance);
// The same values stay strictly below the second-price guarantee 1 - B.
SweepReport SweepRandomizedGap(const std::vector<int>& item_counts,
                               const std::vector<double>& budgets);

// The k* counter holds every constant bid vector to f(B) + 2/sqrt(m).
SweepReport SweepConstantBidCounter(const std::vector<int>& item_counts,
                                    const std::vector<double>& budgets,
                                    int bid_levels);
// The b2+ counter attains 1 - B against random pure adversary vectors.
SweepReport SweepPureCounter(const std::vector<int>& item_counts,
                             int random_vectors, std::uint64_t seed,
                             double tolerance);

enum class Suite { kXos, kSi, kSimul, kAll };
// Throws kParse for anything but "xos", "si", "simul" or "all".
Suite ParseSuite(const std::string& name);

struct VerifyOptions {
  int m_max = 30;
  double grid_step = 0.01;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  // Instance and sample counts for the randomized families.
  int instances = 200;
  std::uint64_t mc_samples = 100'000;
};
std::vector<SweepReport> VerifyAll(Suite suite, const VerifyOptions& options,
                                   UniformAdditiveSolver& solver);

bool AllPass(const std::vector<SweepReport>& reports);

// Reports as JSON. Runtimes are left out unless requested, so that equal
// inputs give byte-identical output.
void WriteReportsJson(const std::vector<SweepReport>& reports,
                      bool include_runtime, std::ostream& out);
// One aligned line per report.
void WriteReportsText(const std::vector<SweepReport>& reports,
                      bool include_runtime, std::ostream& out);

// Locale-independent shortest round-trip at 12 significant digits.
std::string FormatNumber(double value);

// Figure CSVs with header `x,series,value`. The first holds f, f + 1/sqrt(2),
// f_2, f + 1/sqrt(3) and f_3; the second f, t_1, t_2, t_3 and t*. Grids are
// the multiples of `step` in [0, 1] merged with every breakpoint of the
// piecewise-linear series.
void WriteFigure1Csv(double step, UniformAdditiveSolver& solver,
                     std::ostream& out);
void WriteFigure2Csv(double step, std::ostream& out);

// Lower and upper profitability bounds by auction and valuation class.
struct ProfitabilityRow {
  std::string auction;
  std::string valuation_class;
  double lower = 0.0;
  double upper = 0.0;
};
std::vector<ProfitabilityRow> ProfitabilityTable(double budget);

}  // namespace riskfree

#endif  // RISKFREE_ANALYSIS_H_
