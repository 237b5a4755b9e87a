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


#ifndef RISKFREE_TOOLS_SCENARIO_H_
#define RISKFREE_TOOLS_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "riskfree/policy.h"
#include "riskfree/strategies.h"
#include "riskfree/valuation.h"

namespace riskfree::cli {

enum class AuctionKind { kSequential, kSimultaneous };

// A declarative run description, read from a single JSON document:
//
//   {
//     "valuation": {"kind": "xos", "clauses": [[0.5, 0.5], [1, 0]]},
//     "budget": 0.25,
//     "auction": "sequential",          // or "simultaneous"
//     "price_rule": "first",            // or "second"
//     "bidder": "xos_sqrt",
//     "adversary": "best_response",
//     "seed": 1,
//     "mc_samples": 0,
//     "expect_at_least": 0.25,          // optional
//     "expect_at_most": 1.0,            // optional
//     "output": "report.json"           // optional
//   }
//
// Either side may be "best_response"; the adversary of a simultaneous
// auction may also be "qp" (the adversarial QP optimizer) or "randomized"
// (the w1/w2 adversary). Valuations are normalized to v(I) = 1 unless
// "normalize" is false.
struct Scenario {
  Valuation valuation = AdditiveValuation({1.0});
  double scale = 1.0;
  std::optional<SInstanceParams> s_instance;
  double budget = 0.0;
  AuctionKind auction = AuctionKind::kSequential;
  PriceRule rule = PriceRule::kFirst;
  std::string bidder;
  std::string adversary;
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 0;
  std::optional<double> expect_at_least;
  std::optional<double> expect_at_most;
  std::string output;
};

// Throws Error(kParse) naming the offending key for malformed input and the
// library's own errors for out-of-domain values.
Valuation ParseValuation(const nlohmann::json& j,
                         std::optional<SInstanceParams>* s_instance);
Scenario ParseScenario(const nlohmann::json& j);
Scenario LoadScenario(const std::string& path);

// Runs the scenario and returns its report. The report's "pass" field is
// false when an expectation is violated.
nlohmann::ordered_json RunScenario(const Scenario& scenario);

}  // namespace riskfree::cli

#endif  // RISKFREE_TOOLS_SCENARIO_H_
