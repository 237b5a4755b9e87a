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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "riskfree/closed_forms.h"
#include "riskfree/error.h"
#include "riskfree/parallel.h"
#include "riskfree/sequential.h"
#include "riskfree/simultaneous.h"
#include "riskfree/strategies.h"

namespace riskfree {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SweepPoint Point(int m, double x, double value, double bound, double margin) {
  return {m, x, value, bound, margin};
}

// Upper-bound check: the claim is value <= bound.
SweepPoint Below(int m, double x, double value, double bound) {
  return Point(m, x, value, bound, bound - value);
}

// Lower-bound check: the claim is value >= bound.
SweepPoint Above(int m, double x, double value, double bound) {
  return Point(m, x, value, bound, value - bound);
}

// Equality check: the claim is value == bound.
SweepPoint Equal(int m, double x, double value, double bound) {
  return Point(m, x, value, bound, -std::abs(value - bound));
}

SweepReport Timed(const std::function<SweepReport()>& run) {
  const auto start = std::chrono::steady_clock::now();
  SweepReport report = run();
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  FinalizeReport(report);
  return report;
}

std::string Join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ",";
    out += FormatNumber(v);
  }
  return out;
}

std::string Join(const std::vector<int>& values) {
  std::string out;
  for (int v : values) {
    if (!out.empty()) out += ",";
    out += std::to_string(v);
  }
  return out;
}

// Per-task point lists flattened in task order.
std::vector<SweepPoint> Flatten(std::vector<std::vector<SweepPoint>> parts) {
  std::vector<SweepPoint> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

// Random bid mass: non-negative, summing to exactly `total`. Half of the draws
// put all the mass on a random subset.
std::vector<double> RandomMass(int m, double total, Rng& rng) {
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  const bool sparse = rng.Uniform() < 0.5;
  double sum = 0.0;
  for (double& b : out) {
    const double u = rng.Uniform();
    b = sparse && rng.Uniform() < 0.5 ? 0.0 : u * u;
    sum += b;
  }
  if (sum == 0.0) {
    out[rng.Below(static_cast<std::uint64_t>(m))] = 1.0;
    sum = 1.0;
  }
  for (double& b : out) b *= total / sum;
  return out;
}

double LatticeQp(const std::vector<double>& g, double budget) {
  constexpr int kSteps = 1000;
  double best = kInf;
  auto objective = [&](double b1, double b2, double b3) {
    double v = g[0] * (1 - b1) * (1 - b1) + g[1] * (1 - b2) * (1 - b2);
    if (g.size() == 3) v += g[2] * (1 - b3) * (1 - b3);
    return 0.5 * v;
  };
  for (int i = 0; i <= kSteps; ++i) {
    const double b1 = static_cast<double>(i) / kSteps;
    const double rest = budget - g[0] * b1;
    if (rest < 0) break;
    if (g.size() == 2) {
      best = std::min(best, objective(b1, std::min(1.0, rest / g[1]), 0.0));
      continue;
    }
    for (int j = 0; j <= kSteps; ++j) {
      const double b2 = static_cast<double>(j) / kSteps;
      const double last = rest - g[1] * b2;
      if (last < 0) break;
      best = std::min(best, objective(b1, b2, std::min(1.0, last / g[2])));
    }
  }
  return best;
}

}  // namespace

void FinalizeReport(SweepReport& report) {
  report.min_margin = kInf;
  report.worst = SweepPoint{};
  for (const SweepPoint& p : report.points) {
    // NaN margins count as failures.
    const double margin = std::isnan(p.margin) ? -kInf : p.margin;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.worst = p;
    }
  }
  if (!report.judged) {
    report.pass = true;
  } else if (report.points.empty()) {
    report.pass = false;
  } else if (report.strict) {
    report.pass = report.min_margin > 0;
  } else {
    report.pass = report.min_margin >= -report.tolerance;
  }
}

XosValuation RandomXos(int m, int clauses, Rng& rng) {
  if (m < 1 || clauses < 1) {
    throw Error(ErrorCode::kInvalidArgument, "RandomXos needs m, clauses >= 1");
  }
  std::vector<std::vector<double>> weights(static_cast<std::size_t>(clauses));
  double top = 0.0;
  for (auto& w : weights) {
    w.resize(static_cast<std::size_t>(m));
    double total = 0.0;
    for (double& x : w) {
      x = rng.Uniform() < 0.3 ? 0.0 : rng.Uniform();
      total += x;
    }
    if (total == 0.0) {
      w[rng.Below(static_cast<std::uint64_t>(m))] = 1.0;
      total = 1.0;
    }
    top = std::max(top, total);
  }
  std::vector<AdditiveValuation> out;
  out.reserve(weights.size());
  for (auto& w : weights) {
    for (double& x : w) x /= top;
    out.emplace_back(std::move(w));
  }
  return XosValuation(std::move(out));
}

AdditiveValuation RandomAdditive(int m, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(m));
  for (double& x : w) x = rng.Uniform(0.05, 1.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return AdditiveValuation(std::move(w));
}

SubadditiveIdenticalValuation RandomSubadditiveIdentical(int m, Rng& rng) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  static constexpr double kShapes[] = {0.25, 1.0, 3.0, 8.0};
  const double shape = kShapes[rng.Below(4)];
  std::vector<double> t(static_cast<std::size_t>(m) + 1, 0.0);
  for (int k = 1; k <= m; ++k) {
    t[k] = t[k - 1] + 1e-6 + std::pow(rng.Uniform(), shape);
  }
  // Subadditive closure; each entry stays >= its predecessor by induction.
  for (int k = 2; k <= m; ++k) {
    for (int i = 1; i <= k / 2; ++i) t[k] = std::min(t[k], t[i] + t[k - i]);
  }
  const double top = t[m];
  for (double& x : t) x /= top;
  t[m] = 1.0;
  return SubadditiveIdenticalValuation(std::move(t));
}

std::vector<double> Grid(double lo, double hi, double step) {
  if (!(step > 0) || !(hi >= lo)) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs step > 0, hi >= lo");
  }
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 2);
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  if (hi - out.back() > 1e-12) out.push_back(hi);
  return out;
}

SweepReport SweepTables(int samples, std::uint64_t seed) {
  return Timed([&] {
    SweepReport r;
    r.name = "tables";
    r.claim = "exact f_m equals the closed-form tables for m = 1, 2, 3";
    r.grid = std::to_string(samples) + " uniform budgets in [0, 1.5), seed " +
             std::to_string(seed);
    r.tolerance = 1e-9;
    UniformAdditiveSolver solver;
    Rng rng(seed, 101);
    for (int i = 0; i < samples; ++i) {
      const double b = rng.Uniform(0.0, 1.5);
      for (int m = 1; m <= 3; ++m) {
        r.points.push_back(Equal(m, b, solver.Exact(m)(b), TableA(m, b)));
      }
    }
    return r;
  });
}

SweepReport SweepThreeItemBreakpoints() {
  return Timed([] {
    SweepReport r;
    r.name = "three_item_breakpoints";
    r.claim = "interior breakpoints of f_3 are 1/9, 1/6, 1/3, 5/9, 2/3, 1";
    r.grid = "breakpoints of the exact f_3";
    r.tolerance = 1e-9;
    UniformAdditiveSolver solver;
    std::vector<double> found;
    for (double x : solver.Exact(3).breakpoints()) {
      if (x > 1e-12 && x <= 1.0 + 1e-12) found.push_back(x);
    }
    const std::vector<double> expected = {1.0 / 9, 1.0 / 6, 1.0 / 3,
                                          5.0 / 9, 2.0 / 3, 1.0};
    if (found.size() != expected.size()) {
      r.points.push_back(Equal(3, -1.0, static_cast<double>(found.size()),
                               static_cast<double>(expected.size())));
    }
    for (double e : expected) {
      double nearest = kInf;
      for (double x : found) {
        if (std::abs(x - e) < std::abs(nearest - e)) nearest = x;
      }
      r.points.push_back(Equal(3, e, nearest, e));
    }
    return r;
  });
}

SweepReport SweepUniformBound(int m_max, double step, double tolerance,
                              UniformAdditiveSolver& solver) {
  return Timed([&] {
    SweepReport r;
    r.name = "uniform_bound";
    r.claim = "f_m(x) <= (1 - sqrt(x))^2 + 1/sqrt(m)";
    r.grid = "m = 1.." + std::to_string(m_max) + ", x = " +
             FormatNumber(step) + ", " + FormatNumber(2 * step) + ", ... < 1";
    r.tolerance = tolerance;
    for (int m = 1; m <= m_max; ++m) {
      const PiecewiseLinear& upper = solver.Bounds(m).upper;
      for (double x : Grid(step, 1.0, step)) {
        if (x >= 1.0 - 1e-12) break;
        r.points.push_back(
            Below(m, x, upper(x), FBound(x) + 1.0 / std::sqrt(m)));
      }
    }
    r.measurements.emplace_back("exact_levels", solver.exact_levels());
    return r;
  });
}

SweepReport SweepAlphaRange(int m_max, double step, double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "alpha_range";
    r.claim = "0 <= alpha_tilde <= alpha_max on [1/m^2, (m-1)/m]";
    r.grid = "m = 2.." + std::to_string(m_max) + ", step " + FormatNumber(step);
    r.tolerance = tolerance;
    for (int m = 2; m <= m_max; ++m) {
      for (double x : Grid(1.0 / (m * m), (m - 1.0) / m, step)) {
        const AlphaParams p = ComputeAlphaParams(m, x);
        r.points.push_back(Point(m, x, p.alpha_tilde, p.alpha_max,
                                 std::min(p.alpha_tilde,
                                          p.alpha_max - p.alpha_tilde)));
      }
    }
    return r;
  });
}

SweepReport SweepAlphaClaims(int m_max, double step, double tolerance,
                             UniformAdditiveSolver& solver) {
  return Timed([&] {
    SweepReport r;
    r.name = "alpha_claims";
    r.claim = "g_m(x, alpha_tilde), h_m(x, alpha_tilde) <= f(x) + 1/sqrt(m)";
    r.grid = "m = 2.." + std::to_string(m_max) + ", step " + FormatNumber(step);
    r.tolerance = tolerance;
    for (int m = 2; m <= m_max; ++m) {
      const PiecewiseLinear& prev = solver.Bounds(m - 1).upper;
      for (double x : Grid(1.0 / (m * m), (m - 1.0) / m, step)) {
        const AlphaParams p = ComputeAlphaParams(m, x);
        const double alpha = std::clamp(p.alpha_tilde, 0.0, p.alpha_max);
        const GhValues gh = GH(m, x, alpha, prev);
        r.points.push_back(Below(m, x, std::max(gh.g, gh.h),
                                 FBound(x) + 1.0 / std::sqrt(m)));
      }
    }
    return r;
  });
}

SweepReport SweepXosSqrt(int instances, int max_items, int max_clauses,
                         const std::vector<double>& budgets,
                         std::uint64_t seed, double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "xos_sqrt";
    r.claim = "sqrt(B) gstar bids keep profit >= (1 - sqrt(B))^2";
    r.grid = std::to_string(instances) + " random XOS instances, m <= " +
             std::to_string(max_items) + ", <= " +
             std::to_string(max_clauses) + " clauses, B in {" +
             Join(budgets) + "}, both price rules, seed " +
             std::to_string(seed);
    r.tolerance = tolerance;
    std::vector<std::vector<SweepPoint>> parts(
        static_cast<std::size_t>(instances));
    ParallelFor(parts.size(), [&](std::size_t i) {
      Rng rng(seed, 200'000 + i);
      const int m = 1 + static_cast<int>(rng.Below(max_items));
      const int clauses = 1 + static_cast<int>(rng.Below(max_clauses));
      const XosValuation xos = RandomXos(m, clauses, rng);
      const Valuation v = xos;
      for (double b : budgets) {
        const XosSqrtPolicy policy(GammaStar(xos), b);
        for (PriceRule rule : {PriceRule::kFirst, PriceRule::kSecond}) {
          const double profit =
              BestResponseToFixedBids(v, policy.bids(), b, rule).min_profit;
          parts[i].push_back(Above(m, b, profit, FBound(b)));
        }
      }
    });
    r.points = Flatten(std::move(parts));
    return r;
  });
}

SweepReport SweepConstantPrice(const std::vector<int>& item_counts,
                               int instances_per_count, std::uint64_t seed,
                               double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "constant_price";
    r.claim = "constant-price profit >= t*(B) - (B k/(k-1))/m";
    r.grid = std::to_string(instances_per_count) +
             " random identical-item instances per m in {" +
             Join(item_counts) + "}, B ~ U(0, 0.9), seed " +
             std::to_string(seed);
    r.tolerance = tolerance;
    const std::size_t per = static_cast<std::size_t>(instances_per_count);
    std::vector<std::vector<SweepPoint>> parts(item_counts.size() * per);
    ParallelFor(parts.size(), [&](std::size_t task) {
      const int m = item_counts[task / per];
      Rng rng(seed, 300'000 + task);
      const double b = rng.Uniform(1e-3, 0.9);
      const SubadditiveIdenticalValuation si =
          RandomSubadditiveIdentical(m, rng);
      const Valuation v = si;
      const int k = ChooseK(b, m);
      const ConstantPricePolicy policy(si, b, k);
      const ConstantPricePlan& plan = policy.plan();
      double worst = kInf;
      for (int j = 0; j <= m - plan.q; ++j) {
        const PrefixAdversary adversary(j, plan.p + kOutbid);
        worst = std::min(worst, Simulate(v, b, policy, adversary,
                                         PriceRule::kFirst, seed)
                                    .profit);
      }
      const double bound = TStar(b).value - (b * k / (k - 1.0)) / m;
      parts[task].push_back(Above(m, b, worst, bound));
    });
    r.points = Flatten(std::move(parts));
    return r;
  });
}

SInstanceCases SInstanceCaseAnalysis(const SInstanceParams& params,
                                     UniformAdditiveSolver& solver) {
  const int m = params.m;
  const double s = params.sigma;
  const double first = 1.0 / (2.0 + s);
  const double w = s / (params.d * (2.0 + s));
  const double p2 = params.phase2_bid;
  auto subgame = [&](int items, double budget) {
    if (items == 0) return 0.0;
    const double value = items * w;
    return value * solver.Upper(items, std::max(0.0, budget) / value);
  };
  SInstanceCases out;
  out.case1 = -kInf;
  for (int j1 = 2; j1 <= m; ++j1) {
    const double v = first + subgame(m - j1, params.x);
    if (v > out.case1) {
      out.case1 = v;
      out.best_j1 = j1;
    }
  }
  const double keep_last = 1.0 - (m - 1) * p2;
  const double lose_last = first + (m - 2) * (w - p2);
  out.case2 = std::max(keep_last, lose_last);
  out.case3 = -kInf;
  for (int j2 = 2; j2 <= m - 1; ++j2) {
    const double v =
        first + (j2 - 2) * (w - p2) + subgame(m - j2, params.x - p2);
    if (v > out.case3) {
      out.case3 = v;
      out.best_j2 = j2;
    }
  }
  // Winning nothing is always available and worth 0.
  out.value = std::max({0.0, out.case1, out.case2, out.case3});
  return out;
}

SweepReport SweepSInstance(const std::vector<double>& xs,
                           const std::vector<int>& item_counts,
                           UniformAdditiveSolver& solver) {
  return Timed([&] {
    SweepReport r;
    r.name = "s_instance";
    r.claim =
        "best response to the three-phase adversary is <= t_1(x) + C/sqrt(m) "
        "with finite C, and the excess over t_1 shrinks as m grows";
    r.grid = "x in {" + Join(xs) + "}, m in {" + Join(item_counts) + "}";
    r.strict = true;
    for (double x : xs) {
      const double t1 = Tangent(1, x).value;
      double c = -kInf;
      std::vector<double> excess;
      for (int m : item_counts) {
        const auto [si, params] = MakeSInstance(x, m);
        const SInstanceCases cases = SInstanceCaseAnalysis(params, solver);
        excess.push_back(cases.value - t1);
        c = std::max(c, std::sqrt(m) * excess.back());
        r.measurements.emplace_back(
            "excess(x=" + FormatNumber(x) + ",m=" + std::to_string(m) + ")",
            excess.back());
      }
      r.measurements.emplace_back("C(x=" + FormatNumber(x) + ")", c);
      const double shrink =
          std::isfinite(c) ? excess.front() - excess.back() : -kInf;
      r.points.push_back(Point(item_counts.back(), x, excess.back(),
                               excess.front(), shrink));
    }
    return r;
  });
}

SweepReport SweepTangency(int k_max, double step, double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "tangency";
    r.claim = "t_k touches f at (k/(k+1))^2 and f >= t* >= t_k";
    r.grid = "k = 1.." + std::to_string(k_max) + ", B in [0, 1) step " +
             FormatNumber(step);
    r.tolerance = tolerance;
    constexpr double kH = 1e-6;
    for (int k = 1; k <= k_max; ++k) {
      const double at = (k / (k + 1.0)) * (k / (k + 1.0));
      r.points.push_back(Equal(k, at, Tangent(k, at).value, FBound(at)));
      const double slope =
          (Tangent(k, at + kH).value - Tangent(k, at - kH).value) / (2 * kH);
      r.points.push_back(Equal(k, at, slope, 1.0 - 1.0 / std::sqrt(at)));
    }
    for (double b : Grid(0.0, 1.0, step)) {
      if (b >= 1.0 - 1e-12) break;
      const double star = TStar(b).value;
      double best = -kInf;
      for (int k = 1; k <= k_max; ++k) best = std::max(best, Tangent(k, b).value);
      r.points.push_back(Above(0, b, star, best));
      r.points.push_back(Below(0, b, star, FBound(b)));
    }
    return r;
  });
}

SweepReport SweepBetaCover(int instances, int m_min, int m_max,
                           std::uint64_t seed, double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "beta_cover";
    r.claim = "beta_cover <= ln m on random identical-item subadditive tables";
    r.grid = std::to_string(instances) + " instances, m in [" +
             std::to_string(m_min) + ", " + std::to_string(m_max) +
             "], seed " + std::to_string(seed);
    r.tolerance = tolerance;
    std::vector<std::vector<SweepPoint>> parts(
        static_cast<std::size_t>(instances));
    ParallelFor(parts.size(), [&](std::size_t i) {
      Rng rng(seed, 400'000 + i);
      const int m = m_min + static_cast<int>(rng.Below(m_max - m_min + 1));
      const Valuation v = RandomSubadditiveIdentical(m, rng);
      parts[i].push_back(Below(m, 0.0, BetaCover(v).beta, std::log(m)));
    });
    r.points = Flatten(std::move(parts));
    int failures = 0;
    for (const SweepPoint& p : r.points) failures += p.margin < -tolerance;
    r.measurements.emplace_back("failures", failures);
    return r;
  });
}

SweepReport SweepSecondPrice(int instances, int max_items, int random_vectors,
                             std::uint64_t seed, double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "second_price";
    r.claim = "truthful gstar bids keep second-price profit >= 1 - B";
    r.grid = std::to_string(instances) + " random XOS instances, m <= " +
             std::to_string(max_items) + ", " +
             std::to_string(random_vectors) +
             " random adversary vectors, seed " + std::to_string(seed);
    r.tolerance = tolerance;
    const int per = (random_vectors + instances - 1) / std::max(1, instances);
    std::vector<std::vector<SweepPoint>> parts(
        static_cast<std::size_t>(instances));
    ParallelFor(parts.size(), [&](std::size_t i) {
      Rng rng(seed, 500'000 + i);
      const int m = 1 + static_cast<int>(rng.Below(max_items));
      const XosValuation xos =
          RandomXos(m, 1 + static_cast<int>(rng.Below(5)), rng);
      const Valuation v = xos;
      const std::vector<double>& truthful = GammaStar(xos).weights();
      const double b = rng.Uniform(0.0, 1.0);
      parts[i].push_back(Above(
          m, b,
          BestResponseToFixedBids(v, truthful, b, PriceRule::kSecond,
                                  AuctionFormat::kSimultaneous)
              .min_profit,
          1.0 - b));
      const int count =
          std::min(per, random_vectors - per * static_cast<int>(i));
      for (int t = 0; t < count; ++t) {
        std::vector<double> bids2(static_cast<std::size_t>(m), 0.0);
        double left = b * rng.Uniform();
        if (rng.Uniform() < 0.5) {
          // Match Bidder 1 exactly on a random affordable subset.
          for (int j = 0; j < m; ++j) {
            if (rng.Uniform() < 0.5 && truthful[j] <= left) {
              bids2[j] = truthful[j];
              left -= truthful[j];
            }
          }
        }
        const std::vector<double> extra = RandomMass(m, left, rng);
        for (int j = 0; j < m; ++j) bids2[j] += extra[j];
        parts[i].push_back(Above(
            m, b, Resolve(v, truthful, bids2, PriceRule::kSecond).profit,
            1.0 - b));
      }
    });
    r.points = Flatten(std::move(parts));
    return r;
  });
}

SweepReport SweepQp(const std::vector<double>& budgets, int instances,
                    std::uint64_t mc_samples, std::uint64_t seed) {
  return Timed([&] {
    SweepReport r;
    r.name = "adversarial_qp";
    r.claim =
        "closed form (1 - B)^2 / 2 matches projected gradient and lattice "
        "search within 1e-4, and Monte Carlo within 3 standard errors";
    r.grid = std::to_string(instances) + " random gstar (m in {2, 3}) per B in {" +
             Join(budgets) + "}, " + std::to_string(mc_samples) +
             " Monte Carlo samples, seed " + std::to_string(seed);
    r.tolerance = 0.0;
    const std::size_t per = static_cast<std::size_t>(instances);
    std::vector<std::vector<SweepPoint>> parts(budgets.size() * per);
    ParallelFor(parts.size(), [&](std::size_t task) {
      const double b = budgets[task / per];
      const std::size_t j = task % per;
      Rng rng(seed, 600'000 + task);
      const int m = 2 + static_cast<int>(j % 2);
      const AdditiveValuation g = RandomAdditive(m, rng);
      const double closed = 0.5 * (1.0 - b) * (1.0 - b);
      QpOptions options;
      options.seed = seed + task;
      const QpSolution qp = AdversaryQp(g, b, options);
      const double numeric_gap = std::max(std::abs(qp.numeric_value - closed),
                                          std::abs(qp.value - closed));
      parts[task].push_back(Below(m, b, numeric_gap, 1e-4));
      parts[task].push_back(
          Below(m, b, std::abs(LatticeQp(g.weights(), b) - closed), 1e-4));
      if (j == 0 && mc_samples > 0) {
        const MonteCarloEstimate mc = MonteCarloUniformRandom(
            Valuation(g), g, qp.ratios, mc_samples, seed + 7 * task);
        parts[task].push_back(Below(m, b, std::abs(mc.mean - closed),
                                    3.0 * mc.standard_error));
      }
    });
    r.points = Flatten(std::move(parts));
    return r;
  });
}

SweepReport SweepRandomizedAdversary(const std::vector<int>& item_counts,
                                     const std::vector<double>& budgets,
                                     double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "randomized_adversary";
    r.claim = "best response to the w1/w2 adversary is 1 - 2B or 2(1 - B)/3";
    r.grid = "m in {" + Join(item_counts) + "}, B in {" + Join(budgets) + "}";
    r.tolerance = tolerance;
    for (int m : item_counts) {
      for (double b : budgets) {
        r.points.push_back(Equal(m, b, RandomizedAdversaryBestResponse(m, b),
                                 RandomizedAdversaryProfit(b)));
      }
    }
    return r;
  });
}

SweepReport SweepRandomizedGap(const std::vector<int>& item_counts,
                               const std::vector<double>& budgets) {
  return Timed([&] {
    SweepReport r;
    r.name = "randomized_gap";
    r.claim = "the w1/w2 adversary holds Bidder 1 strictly below 1 - B";
    r.grid = "m in {" + Join(item_counts) + "}, B in {" + Join(budgets) + "}";
    r.strict = true;
    for (int m : item_counts) {
      for (double b : budgets) {
        r.points.push_back(
            Below(m, b, RandomizedAdversaryBestResponse(m, b), 1.0 - b));
      }
    }
    return r;
  });
}

SweepReport SweepConstantBidCounter(const std::vector<int>& item_counts,
                                    const std::vector<double>& budgets,
                                    int bid_levels) {
  return Timed([&] {
    SweepReport r;
    r.name = "constant_bid_counter";
    r.claim = "the k* counter holds constant bids to f(B) + 2/sqrt(m)";
    r.grid = "m in {" + Join(item_counts) + "}, B in {" + Join(budgets) +
             "}, bids j/(" + std::to_string(bid_levels) + " m)";
    r.tolerance = 1e-9;
    for (int m : item_counts) {
      for (double b : budgets) {
        for (int j = 1; j <= bid_levels; ++j) {
          const std::vector<double> bids(static_cast<std::size_t>(m),
                                         static_cast<double>(j) / (bid_levels * m));
          const CounterPlan plan = DeterministicCounter(bids, b, m);
          r.points.push_back(Below(m, b, plan.realized_profit,
                                   FBound(b) + 2.0 / std::sqrt(m)));
        }
      }
    }
    return r;
  });
}

SweepReport SweepPureCounter(const std::vector<int>& item_counts,
                             int random_vectors, std::uint64_t seed,
                             double tolerance) {
  return Timed([&] {
    SweepReport r;
    r.name = "pure_counter";
    r.claim = "outbidding a pure adversary vector keeps profit >= 1 - B";
    r.grid = std::to_string(random_vectors) + " random vectors, m in {" +
             Join(item_counts) + "}, seed " + std::to_string(seed);
    r.tolerance = tolerance;
    std::vector<std::vector<SweepPoint>> parts(
        static_cast<std::size_t>(random_vectors));
    ParallelFor(parts.size(), [&](std::size_t i) {
      Rng rng(seed, 700'000 + i);
      const int m = item_counts[i % item_counts.size()];
      const XosValuation v({AdditiveValuation(
          std::vector<double>(static_cast<std::size_t>(m), 1.0 / m))});
      const double b = rng.Uniform(0.0, 1.0);
      const PureCounter counter =
          BidderCounterToPure(v, RandomMass(m, b, rng));
      parts[i].push_back(Above(m, b, counter.profit, 1.0 - b));
    });
    r.points = Flatten(std::move(parts));
    return r;
  });
}

Suite ParseSuite(const std::string& name) {
  if (name == "xos") return Suite::kXos;
  if (name == "si") return Suite::kSi;
  if (name == "simul") return Suite::kSimul;
  if (name == "all") return Suite::kAll;
  throw Error(ErrorCode::kParse,
              "unknown suite '" + name + "' (expected xos, si, simul or all)");
}

std::vector<SweepReport> VerifyAll(Suite suite, const VerifyOptions& options,
                                   UniformAdditiveSolver& solver) {
  if (options.m_max < 2 || !(options.grid_step > 0) ||
      !(options.grid_step < 1) || options.instances < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "verify needs m_max >= 2, 0 < grid_step < 1, instances >= 1");
  }
  const double tol = options.tolerance;
  const std::uint64_t seed = options.seed;
  std::vector<SweepReport> out;
  const bool all = suite == Suite::kAll;
  if (all || suite == Suite::kXos) {
    out.push_back(SweepTables(10'000, seed));
    out.push_back(SweepThreeItemBreakpoints());
    out.push_back(
        SweepUniformBound(options.m_max, options.grid_step, tol, solver));
    out.push_back(SweepAlphaRange(options.m_max, options.grid_step, tol));
    out.push_back(
        SweepAlphaClaims(options.m_max, options.grid_step, tol, solver));
    out.push_back(SweepXosSqrt(options.instances, 10, 5, {0.04, 0.25, 0.49},
                               seed, tol));
  }
  if (all || suite == Suite::kSi) {
    out.push_back(SweepTangency(50, options.grid_step / 10, tol));
    out.push_back(SweepConstantPrice({20, 50, 100}, options.instances, seed,
                                     tol));
    out.push_back(
        SweepSInstance({0.05, 0.10, 0.15, 0.20}, {50, 100, 200}, solver));
    out.push_back(SweepBetaCover(options.instances, 3, 6, seed, 1e-6));
  }
  if (all || suite == Suite::kSimul) {
    const std::vector<double> budgets = Grid(0.05, 0.95, 0.05);
    out.push_back(SweepSecondPrice(options.instances, 12, 10'000, seed, tol));
    out.push_back(SweepQp({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, 20,
                          options.mc_samples, seed));
    out.push_back(SweepRandomizedAdversary({4, 8, 12}, budgets, tol));
    out.push_back(SweepRandomizedGap({4, 8, 12}, budgets));
    out.push_back(SweepConstantBidCounter({100, 400}, budgets, 50));
    out.push_back(SweepPureCounter({100, 400}, 10'000, seed, tol));
  }
  return out;
}

bool AllPass(const std::vector<SweepReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const SweepReport& r) { return r.pass; });
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::ordered_json Number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

nlohmann::ordered_json PointJson(const SweepPoint& p) {
  return nlohmann::ordered_json::array(
      {p.m, Number(p.x), Number(p.value), Number(p.bound), Number(p.margin)});
}

}  // namespace

void WriteReportsJson(const std::vector<SweepReport>& reports,
                      bool include_runtime, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["pass"] = AllPass(reports);
  doc["reports"] = nlohmann::ordered_json::array();
  for (const SweepReport& r : reports) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["claim"] = r.claim;
    j["grid"] = r.grid;
    j["tolerance"] = r.tolerance;
    j["strict"] = r.strict;
    j["judged"] = r.judged;
    j["pass"] = r.pass;
    j["point_count"] = r.points.size();
    j["min_margin"] = Number(r.min_margin);
    j["worst"] = PointJson(r.worst);
    if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
    nlohmann::ordered_json measured = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.measurements) measured[key] = Number(value);
    j["measurements"] = measured;
    j["point_fields"] = {"m", "x", "value", "bound", "margin"};
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const SweepPoint& p : r.points) points.push_back(PointJson(p));
    j["points"] = std::move(points);
    doc["reports"].push_back(std::move(j));
  }
  out << doc.dump(1) << "\n";
}

void WriteReportsText(const std::vector<SweepReport>& reports,
                      bool include_runtime, std::ostream& out) {
  std::size_t width = 4;
  for (const SweepReport& r : reports) width = std::max(width, r.name.size());
  for (const SweepReport& r : reports) {
    const char* status = !r.judged ? "INFO" : (r.pass ? "PASS" : "FAIL");
    std::ostringstream line;
    line.imbue(std::locale::classic());
    line << std::left << std::setw(static_cast<int>(width)) << r.name << "  "
         << status << "  points " << std::right << std::setw(7)
         << r.points.size() << "  min margin " << std::setw(14)
         << FormatNumber(r.min_margin);
    if (include_runtime) {
      line << "  " << std::fixed << std::setprecision(3) << r.runtime_seconds
           << " s";
    }
    out << line.str() << "\n";
    if (r.judged && !r.pass) {
      out << "  worst at m=" << r.worst.m << " x=" << FormatNumber(r.worst.x)
          << ": value " << FormatNumber(r.worst.value) << ", bound "
          << FormatNumber(r.worst.bound) << "\n";
    }
    for (const auto& [key, value] : r.measurements) {
      out << "  " << key << " = " << FormatNumber(value) << "\n";
    }
  }
}

namespace {

struct Series {
  std::string name;
  std::function<double(double)> eval;
};

void WriteSeriesCsv(std::vector<double> xs, const std::vector<Series>& series,
                    std::ostream& out) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return b - a < 1e-12; }),
           xs.end());
  out << "x,series,value\n";
  for (const Series& s : series) {
    for (double x : xs) {
      out << FormatNumber(x) << "," << s.name << "," << FormatNumber(s.eval(x))
          << "\n";
    }
  }
}

}  // namespace

void WriteFigure1Csv(double step, UniformAdditiveSolver& solver,
                     std::ostream& out) {
  const PiecewiseLinear& f2 = solver.Exact(2);
  const PiecewiseLinear& f3 = solver.Exact(3);
  std::vector<double> xs = Grid(0.0, 1.0, step);
  for (const PiecewiseLinear* f : {&f2, &f3}) {
    for (double x : f->breakpoints()) {
      if (x >= 0 && x <= 1) xs.push_back(x);
    }
  }
  WriteSeriesCsv(
      xs,
      {{"f", [](double x) { return FBound(x); }},
       {"f_plus_inv_sqrt2",
        [](double x) { return FBound(x) + 1.0 / std::sqrt(2.0); }},
       {"f2", [&](double x) { return f2(x); }},
       {"f_plus_inv_sqrt3",
        [](double x) { return FBound(x) + 1.0 / std::sqrt(3.0); }},
       {"f3", [&](double x) { return f3(x); }}},
      out);
}

void WriteFigure2Csv(double step, std::ostream& out) {
  std::vector<double> xs = Grid(0.0, 1.0, step);
  xs.pop_back();  // t* is defined on [0, 1)
  for (double x : {0.25, 1.0 / 3, 4.0 / 9, 0.5, 9.0 / 16, 0.6}) xs.push_back(x);
  auto tangent = [](int k) {
    return [k](double x) { return Tangent(k, x).value; };
  };
  WriteSeriesCsv(xs,
                 {{"f", [](double x) { return FBound(x); }},
                  {"t1", tangent(1)},
                  {"t2", tangent(2)},
                  {"t3", tangent(3)},
                  {"t_star", [](double x) { return TStar(x).value; }}},
                 out);
}

std::vector<ProfitabilityRow> ProfitabilityTable(double budget) {
  if (!(budget >= 0)) {
    throw Error(ErrorCode::kOutOfRange, "budget must be non-negative");
  }
  const double b = budget;
  const double f = FBound(b);
  const double star = b < 1 ? TStar(b).value : 0.0;
  const double first_lower =
      b < 1 ? std::max(f, 0.5 * (1 - b) * (1 - b)) : 0.0;
  double first_upper = 0.0;
  if (b == 0) {
    first_upper = 1.0;
  } else if (b < 1) {
    first_upper = RandomizedAdversaryProfit(b);
  }
  const double second = std::max(0.0, 1 - b);
  const std::string seq = "sequential (first and second price)";
  return {
      {seq, "additive", f, f},
      {seq, "submodular", f, f},
      {seq, "xos", f, f},
      {seq, "subadditive identical", star, b < 0.25 ? star : f},
      {"simultaneous first price", "xos", first_lower, first_upper},
      {"simultaneous second price", "xos", second, second},
  };
}

}  // namespace riskfree
