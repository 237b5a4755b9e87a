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


#include "scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>
#include <vector>

#include "riskfree/error.h"
#include "riskfree/sequential.h"
#include "riskfree/simultaneous.h"

namespace riskfree::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kParse, "malformed scenario: " + what);
}

const json& Require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    Malformed(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

double Number(const json& j, const char* key) {
  const json& v = Require(j, key);
  if (!v.is_number()) Malformed(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::string Text(const json& j, const char* key, const char* fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) {
    Malformed(std::string("'") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

std::vector<double> Numbers(const json& j, const char* key) {
  if (!j.is_array()) Malformed(std::string("'") + key + "' must be an array");
  std::vector<double> out;
  for (const json& x : j) {
    if (!x.is_number()) {
      Malformed(std::string("'") + key + "' must hold numbers only");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::uint64_t Count(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    Malformed(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

const char* RuleName(PriceRule rule) {
  return rule == PriceRule::kFirst ? "first" : "second";
}

template <typename T>
ordered_json Array(const std::vector<T>& values) {
  ordered_json out = ordered_json::array();
  for (const T& v : values) out.push_back(v);
  return out;
}

ordered_json Flags(const std::vector<bool>& values) {
  ordered_json out = ordered_json::array();
  for (bool v : values) out.push_back(v ? 1 : 0);
  return out;
}

std::unique_ptr<Policy> Build(const std::string& name, const Scenario& s) {
  PolicyContext context;
  context.valuation = &s.valuation;
  context.budget = s.budget;
  context.s_instance = s.s_instance;
  return MakePolicy(ParsePolicySpec(name), context);
}

// Warnings of budget-range policies used outside their intended range.
ordered_json PolicyWarnings(const Scenario& s) {
  ordered_json out = ordered_json::array();
  for (const std::string& name : {s.bidder, s.adversary}) {
    if (name != "low_budget" && name != "high_budget") continue;
    const auto policy = Build(name, s);
    std::string warning;
    if (const auto* low = dynamic_cast<const LowBudgetPolicy*>(policy.get())) {
      warning = low->warning();
    } else if (const auto* high =
                   dynamic_cast<const HighBudgetPolicy*>(policy.get())) {
      warning = high->warning();
    }
    if (!warning.empty()) out.push_back(warning);
  }
  return out;
}

XosValuation AsXos(const Valuation& v) {
  if (const auto* a = std::get_if<AdditiveValuation>(&v)) {
    return XosValuation({*a});
  }
  if (const auto* x = std::get_if<XosValuation>(&v)) return *x;
  throw Error(ErrorCode::kInvalidArgument,
              "this scenario needs an additive or XOS valuation");
}

void RecordOutcome(const Outcome& o, ordered_json& r) {
  r["winner"] = Array(o.winner);
  r["bids1"] = Array(o.bids1);
  r["bids2"] = Array(o.bids2);
  r["prices"] = Array(o.prices);
  r["payments1"] = o.payments1;
  r["adversary_spend"] = o.adversary_spend;
  r["profit"] = o.profit;
}

void RunSequential(const Scenario& s, ordered_json& r) {
  const bool bidder_br = s.bidder == "best_response";
  const bool adversary_br = s.adversary == "best_response";
  if (bidder_br && adversary_br) {
    Malformed("'bidder' and 'adversary' cannot both be best_response");
  }
  if (bidder_br) {
    const auto adversary = Build(s.adversary, s);
    const SequentialResponse br =
        BidderBestResponse(s.valuation, s.budget, *adversary, s.rule);
    r["method"] = "exhaustive bidder best response";
    r["won_by_1"] = Flags(br.won_by_1);
    r["profit"] = br.profit;
    return;
  }
  const auto bidder = Build(s.bidder, s);
  if (adversary_br) {
    if (const auto* fixed = dynamic_cast<const FixedBidsPolicy*>(bidder.get())) {
      const FixedBidResponse br =
          BestResponseToFixedBids(s.valuation, fixed->bids(), s.budget, s.rule);
      r["method"] = "adversary best response to fixed bids";
      r["bids1"] = Array(fixed->bids());
      r["adversary_wins"] = Flags(br.adversary_wins);
      r["profit"] = br.min_profit;
      return;
    }
    const SequentialResponse br =
        AdversaryBestResponse(s.valuation, s.budget, *bidder, s.rule);
    r["method"] = "exhaustive adversary best response";
    r["won_by_1"] = Flags(br.won_by_1);
    r["profit"] = br.profit;
    return;
  }
  const auto adversary = Build(s.adversary, s);
  r["method"] = "simulation";
  RecordOutcome(Simulate(s.valuation, s.budget, *bidder, *adversary, s.rule,
                         s.seed),
                r);
}

void RunSimultaneous(const Scenario& s, ordered_json& r) {
  const int m = ItemCount(s.valuation);
  if (s.adversary == "randomized") {
    const auto* a = std::get_if<AdditiveValuation>(&s.valuation);
    if (a == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "the randomized adversary plays uniform additive instances");
    }
    const double closed = RandomizedAdversaryProfit(s.budget);
    r["closed_form"] = closed;
    if (s.bidder == "best_response") {
      const double value = RandomizedAdversaryBestResponse(m, s.budget);
      r["method"] = "exact best response to the randomized adversary";
      r["numeric"] = value;
      r["gap"] = std::abs(value - closed);
      r["profit"] = value;
      return;
    }
    const auto bidder = Build(s.bidder, s);
    const std::uint64_t draws = std::max<std::uint64_t>(1, s.mc_samples);
    Rng rng(s.seed);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
      Rng draw = rng.Split(i);
      Rng own = draw.Split(1);
      Rng adv = draw.Split(2);
      sum += Resolve(s.valuation, bidder->BidVector(m, s.budget, own),
                     RandomizedAdversary(m, s.budget, adv), s.rule)
                 .profit;
    }
    r["method"] = "average over randomized adversary draws";
    r["draws"] = draws;
    r["profit"] = sum / static_cast<double>(draws);
    return;
  }

  std::vector<double> bids2;
  std::optional<QpSolution> qp;
  if (s.adversary == "qp") {
    const XosValuation xos = AsXos(s.valuation);
    qp = AdversaryQp(GammaStar(xos), s.budget);
    const auto& g = GammaStar(xos).weights();
    for (int i = 0; i < m; ++i) bids2.push_back(qp->ratios[i] * g[i]);
    r["qp_value"] = qp->value;
    r["qp_numeric_value"] = qp->numeric_value;
    r["qp_dual_value"] = qp->dual_value;
  } else if (s.adversary != "best_response") {
    Rng rng(s.seed);
    bids2 = Build(s.adversary, s)->BidVector(m, s.budget, rng);
  }

  if (s.bidder == "best_response") {
    if (bids2.empty()) {
      Malformed("'bidder' and 'adversary' cannot both be best_response");
    }
    const PureCounter counter = BidderCounterToPure(AsXos(s.valuation), bids2);
    r["method"] = "bidder counter to a pure adversary vector";
    r["bids1"] = Array(counter.bids1);
    r["bids2"] = Array(bids2);
    r["profit"] = counter.profit;
    return;
  }

  const auto bidder = Build(s.bidder, s);
  if (s.adversary == "best_response") {
    if (dynamic_cast<const UniformRandomPolicy*>(bidder.get()) != nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "use adversary 'qp' against the randomized bidder");
    }
    Rng rng(s.seed);
    const std::vector<double> bids1 = bidder->BidVector(m, s.budget, rng);
    const FixedBidResponse br =
        BestResponseToFixedBids(s.valuation, bids1, s.budget, s.rule,
                                AuctionFormat::kSimultaneous);
    r["method"] = "adversary best response to the bid vector";
    r["bids1"] = Array(bids1);
    r["adversary_wins"] = Flags(br.adversary_wins);
    r["profit"] = br.min_profit;
    return;
  }

  if (dynamic_cast<const UniformRandomPolicy*>(bidder.get()) != nullptr &&
      s.mc_samples > 0) {
    const XosValuation xos = AsXos(s.valuation);
    const AdditiveValuation& g = GammaStar(xos);
    std::vector<double> ratios(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
      ratios[i] = g.weights()[i] > 0 ? std::min(1.0, bids2[i] / g.weights()[i])
                                     : 0.0;
    }
    const double closed = ExpectedProfitUniformRandom(g, ratios);
    const MonteCarloEstimate mc = MonteCarloUniformRandom(
        s.valuation, g, ratios, s.mc_samples, s.seed);
    r["method"] = "Monte Carlo of the randomized bidder";
    r["bids2"] = Array(bids2);
    r["closed_form"] = closed;
    r["numeric"] = mc.mean;
    r["standard_error"] = mc.standard_error;
    r["samples"] = mc.samples;
    r["gap"] = std::abs(mc.mean - closed);
    r["profit"] = mc.mean;
    return;
  }
  Rng rng(s.seed);
  r["method"] = "single resolution";
  RecordOutcome(Resolve(s.valuation, bidder->BidVector(m, s.budget, rng),
                        bids2, s.rule),
                r);
}

}  // namespace

Valuation ParseValuation(const json& j,
                         std::optional<SInstanceParams>* s_instance) {
  const std::string kind = Text(j, "kind", "");
  if (kind == "additive") {
    return AdditiveValuation(Numbers(Require(j, "weights"), "weights"));
  }
  if (kind == "xos") {
    const json& clauses = Require(j, "clauses");
    if (!clauses.is_array()) Malformed("'clauses' must be an array");
    std::vector<AdditiveValuation> out;
    for (const json& c : clauses) out.emplace_back(Numbers(c, "clauses"));
    return XosValuation(std::move(out));
  }
  if (kind == "subadditive_identical") {
    return SubadditiveIdenticalValuation(Numbers(Require(j, "table"), "table"));
  }
  if (kind == "s_instance") {
    const double m = Number(j, "m");
    if (m != std::floor(m)) Malformed("'m' must be an integer");
    auto [v, params] = MakeSInstance(Number(j, "x"), static_cast<int>(m));
    if (s_instance != nullptr) *s_instance = params;
    return v;
  }
  Malformed("unknown valuation kind '" + kind + "'");
}

Scenario ParseScenario(const json& j) {
  if (!j.is_object()) Malformed("the document must be a JSON object");
  static const char* const kKeys[] = {
      "valuation", "budget",          "auction",        "price_rule",
      "bidder",    "adversary",       "seed",           "mc_samples",
      "normalize", "expect_at_least", "expect_at_most", "output"};
  for (const auto& item : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), item.key()) ==
        std::end(kKeys)) {
      Malformed("unknown key '" + item.key() + "'");
    }
  }
  Scenario s;
  s.valuation = ParseValuation(Require(j, "valuation"), &s.s_instance);
  if (!j.contains("normalize") || j.at("normalize").get<bool>()) {
    Normalized n = Normalize(s.valuation);
    s.valuation = std::move(n.valuation);
    s.scale = n.scale;
  }
  s.budget = Number(j, "budget");
  if (!(s.budget >= 0) || !std::isfinite(s.budget)) {
    throw Error(ErrorCode::kInvalidArgument,
                "budget must be finite and non-negative");
  }
  const std::string auction = Text(j, "auction", "sequential");
  if (auction == "sequential") {
    s.auction = AuctionKind::kSequential;
  } else if (auction == "simultaneous") {
    s.auction = AuctionKind::kSimultaneous;
  } else {
    Malformed("'auction' must be sequential or simultaneous");
  }
  const std::string rule = Text(j, "price_rule", "first");
  if (rule == "first") {
    s.rule = PriceRule::kFirst;
  } else if (rule == "second") {
    s.rule = PriceRule::kSecond;
  } else {
    Malformed("'price_rule' must be first or second");
  }
  s.bidder = Text(j, "bidder", "");
  s.adversary = Text(j, "adversary", "best_response");
  if (s.bidder.empty()) Malformed("missing key 'bidder'");
  // Resolve names up front so that typos fail before any work is done.
  for (const std::string* name : {&s.bidder, &s.adversary}) {
    if (*name != "best_response" && *name != "qp" && *name != "randomized") {
      ParsePolicySpec(*name);
    }
  }
  s.seed = Count(j, "seed", 1);
  s.mc_samples = Count(j, "mc_samples", 0);
  if (j.contains("expect_at_least")) {
    s.expect_at_least = Number(j, "expect_at_least");
  }
  if (j.contains("expect_at_most")) {
    s.expect_at_most = Number(j, "expect_at_most");
  }
  s.output = Text(j, "output", "");
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot open scenario file '" + path + "'");
  }
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    Malformed(std::string("not valid JSON (") + e.what() + ")");
  }
  return ParseScenario(j);
}

ordered_json RunScenario(const Scenario& s) {
  ordered_json r;
  r["auction"] =
      s.auction == AuctionKind::kSequential ? "sequential" : "simultaneous";
  r["price_rule"] = RuleName(s.rule);
  r["items"] = ItemCount(s.valuation);
  r["budget"] = s.budget;
  r["scale"] = s.scale;
  r["bidder"] = s.bidder;
  r["adversary"] = s.adversary;
  r["seed"] = s.seed;
  if (s.auction == AuctionKind::kSequential) {
    RunSequential(s, r);
  } else {
    RunSimultaneous(s, r);
  }
  if (ordered_json w = PolicyWarnings(s); !w.empty()) r["warnings"] = w;
  const double profit = r["profit"].get<double>();
  bool pass = true;
  if (s.expect_at_least) {
    r["expect_at_least"] = *s.expect_at_least;
    pass = pass && profit >= *s.expect_at_least - 1e-9;
  }
  if (s.expect_at_most) {
    r["expect_at_most"] = *s.expect_at_most;
    pass = pass && profit <= *s.expect_at_most + 1e-9;
  }
  r["pass"] = pass;
  return r;
}

}  // namespace riskfree::cli
