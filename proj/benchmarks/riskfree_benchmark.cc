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

#include <vector>

#include "benchmark/benchmark.h"
#include "riskfree/analysis.h"
#include "riskfree/rng.h"
#include "riskfree/sequential.h"
#include "riskfree/simultaneous.h"
#include "riskfree/uniform_additive.h"
#include "riskfree/valuation.h"

namespace riskfree {
namespace {

// One backward-induction step f_{m-1} -> f_m on exact levels.
void BM_UniformAdditiveStep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PiecewiseLinear prev = UniformAdditiveValue(m - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(UniformAdditiveStep(m, prev));
  }
  state.counters["breakpoints"] = static_cast<double>(prev.size());
}
BENCHMARK(BM_UniformAdditiveStep)->DenseRange(4, 12, 4);

void BM_SolverToThirty(benchmark::State& state) {
  for (auto _ : state) {
    UniformAdditiveSolver solver;
    benchmark::DoNotOptimize(solver.Bounds(30));
  }
}
BENCHMARK(BM_SolverToThirty)->Unit(benchmark::kMillisecond);

void BM_SolveDiscretized(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Valuation v = AdditiveValuation(std::vector<double>(m, 1.0 / m));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SolveDiscretized(v, 0.3, 0.01, PriceRule::kFirst, Leader::kAdversary));
  }
}
BENCHMARK(BM_SolveDiscretized)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_AdversaryQp(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(7);
  const AdditiveValuation gstar = RandomAdditive(m, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AdversaryQp(gstar, 0.4));
  }
}
BENCHMARK(BM_AdversaryQp)->RangeMultiplier(4)->Range(4, 64);

void BM_BestResponseToFixedBids(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(11);
  const Valuation v = RandomXos(m, 5, rng);
  std::vector<double> bids;
  for (double w : GammaStar(std::get<XosValuation>(v)).weights()) {
    bids.push_back(0.5 * w);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BestResponseToFixedBids(v, bids, 0.25, PriceRule::kFirst));
  }
}
BENCHMARK(BM_BestResponseToFixedBids)->DenseRange(8, 16, 4);

}  // namespace
}  // namespace riskfree

BENCHMARK_MAIN();
