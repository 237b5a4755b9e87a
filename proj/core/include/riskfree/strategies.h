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

#ifndef RISKFREE_STRATEGIES_H_
#define RISKFREE_STRATEGIES_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riskfree/policy.h"
#include "riskfree/uniform_additive.h"
#include "riskfree/valuation.h"

namespace riskfree {

class FixedBidsPolicy : public Policy {
 public:
  explicit FixedBidsPolicy(std::vector<double> bids);
  std::string Name() const override { return "fixed"; }
  double Bid(const SeqGameState& state, Rng& rng) const override;
  const std::vector<double>& bids() const { return bids_; }

 private:
  std::vector<double> bids_;
};

// Bids sqrt(B) gstar_i on item i, whatever happened before.
class XosSqrtPolicy : public FixedBidsPolicy {
 public:
  XosSqrtPolicy(const AdditiveValuation& gstar, double budget);
  std::string Name() const override { return "xos_sqrt"; }
};

// Outbids the adversary's whole budget on every item. Intended for
// B < 1/m^2 on the uniform additive auction.
class LowBudgetPolicy : public Policy {
 public:
  LowBudgetPolicy(int m, double budget);
  std::string Name() const override { return "low_budget"; }
  double Bid(const SeqGameState& state, Rng& rng) const override;
  // Empty when B is in the intended range, else a human-readable note.
  const std::string& warning() const { return warning_; }

 private:
  double budget_;
  std::string warning_;
};

// Bids (B/m)+ on every item. Intended for B > (m-1)/m.
class HighBudgetPolicy : public Policy {
 public:
  HighBudgetPolicy(int m, double budget);
  std::string Name() const override { return "high_budget"; }
  double Bid(const SeqGameState& state, Rng& rng) const override;
  const std::string& warning() const { return warning_; }

 private:
  double bid_;
  std::string warning_;
};

// Adversary for a uniform additive auction whose items are each worth
// `item_value` to Bidder 1. Each round it rescales the remaining subgame to
// (m', x') with m' items of total value 1 and bids alpha(m', x') times the
// item value. In kAlphaTilde mode alpha is the closed-form alpha_tilde
// (clamped to [0, alpha_max]) on the intermediate budget range and the
// minimizing alpha elsewhere; in kOptimal mode it is always the minimizing
// alpha of the recursion.
class UniformAdditiveAdversary : public Policy {
 public:
  enum class Mode { kAlphaTilde, kOptimal };
  UniformAdditiveAdversary(double item_value, Mode mode,
                           UniformAdditiveSolver* solver = nullptr);
  std::string Name() const override {
    return mode_ == Mode::kAlphaTilde ? "alpha_tilde" : "optimal_uniform";
  }
  double Bid(const SeqGameState& state, Rng& rng) const override;
  // The ratio alpha this policy uses in the normalized subgame (m, x).
  double Alpha(int m, double x) const;

 private:
  double item_value_;
  Mode mode_;
  UniformAdditiveSolver* solver_;
};

struct ConstantPricePlan {
  int k = 2;
  int q = 1;
  double p = 0.0;
  double bound = 0.0;
};
// q = ceil(m/k), p = B/(m - q + 1), bound = t_{k-1}(B) - (1/m) B k/(k-1).
// Throws kInvalidArgument unless 2 <= k <= m.
ConstantPricePlan MakeConstantPricePlan(int m, double budget, int k);

// k in [2, m] maximizing t_{k-1}(B); ties go to the smaller k.
int ChooseK(double budget, int m);

// Bids p+ until it holds q items, then 0.
class ConstantPricePolicy : public Policy {
 public:
  ConstantPricePolicy(const SubadditiveIdenticalValuation& v, double budget,
                      int k);
  std::string Name() const override {
    return "constant_price(" + std::to_string(plan_.k) + ")";
  }
  double Bid(const SeqGameState& state, Rng& rng) const override;
  const ConstantPricePlan& plan() const { return plan_; }

 private:
  ConstantPricePlan plan_;
};

// Three-phase adversary against S_{x,m}: bid 0 until Bidder 1 wins an item;
// then bid (1+sigma)/(d(2+sigma)) until it wins an item; from then on play
// the minimizing uniform additive adversary on the remaining items, each
// worth sigma/(d(2+sigma)) at the margin.
class SInstanceAdversary : public Policy {
 public:
  explicit SInstanceAdversary(const SInstanceParams& params,
                              UniformAdditiveSolver* solver = nullptr);
  std::string Name() const override { return "s_adversary"; }
  double Bid(const SeqGameState& state, Rng& rng) const override;
  const SInstanceParams& params() const { return params_; }

 private:
  SInstanceParams params_;
  UniformAdditiveAdversary phase3_;
};

// Bids X_i gstar_i with X_i ~ U(0,1) independently per item.
class UniformRandomPolicy : public Policy {
 public:
  explicit UniformRandomPolicy(AdditiveValuation gstar);
  std::string Name() const override { return "uniform_random"; }
  double Bid(const SeqGameState& state, Rng& rng) const override;

 private:
  AdditiveValuation gstar_;
};

// Adversary that matches a fixed plan: bids `amount` on the first
// `rounds` items (capped by its budget) and 0 afterwards.
class PrefixAdversary : public Policy {
 public:
  PrefixAdversary(int rounds, double amount);
  std::string Name() const override { return "prefix"; }
  double Bid(const SeqGameState& state, Rng& rng) const override;

 private:
  int rounds_;
  double amount_;
};

// A parsed policy name such as "constant_price(3)" or "fixed(0.1,0.2)".
struct PolicySpec {
  std::string kind;
  std::vector<double> args;
};
// Throws kParse for malformed text or unknown names.
PolicySpec ParsePolicySpec(std::string_view text);

// Everything a policy may need to know about the instance it plays.
struct PolicyContext {
  const Valuation* valuation = nullptr;
  double budget = 0.0;
  std::optional<SInstanceParams> s_instance;
  UniformAdditiveSolver* solver = nullptr;
};
// Builds the named policy. Throws kInvalidArgument when the instance does not
// fit the policy (for example xos_sqrt on an identical-item table).
std::unique_ptr<Policy> MakePolicy(const PolicySpec& spec,
                                   const PolicyContext& context);

}  // namespace riskfree

#endif  // RISKFREE_STRATEGIES_H_
