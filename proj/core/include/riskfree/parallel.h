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

#ifndef RISKFREE_PARALLEL_H_
#define RISKFREE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace riskfree {

// Runs body(i) for i in [0, n) on up to `workers` threads (0 picks the
// hardware concurrency). Each index runs exactly once; callers write results
// into slot i, so aggregation order never depends on scheduling. The first
// exception thrown by any body is rethrown after all workers stop.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body,
                 unsigned workers = 0);

}  // namespace riskfree

#endif  // RISKFREE_PARALLEL_H_
