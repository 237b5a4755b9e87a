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
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "riskfree/closed_forms.h"
#include "riskfree/error.h"

namespace riskfree {
namespace {

std::vector<double> ScaledWeights(const AdditiveValuation& g, double factor) {
  std::vector<double> out = g.weights();
  for (double& w : out) w *= factor;
  return out;
}

void RequireBudget(double budget) {
  if (!(budget >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be non-negative");
  }
}

const AdditiveValuation& GstarOf(const Valuation& v, std::string_view who) {
  if (const auto* a = std::get_if<AdditiveValuation>(&v)) return *a;
  if (const auto* x = std::get_if<XosValuation>(&v)) return GammaStar(*x);
  throw Error(ErrorCode::kInvalidArgument,
              std::string(who) + " needs an additive or XOS valuation");
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

FixedBidsPolicy::FixedBidsPolicy(std::vector<double> bids)
    : bids_(std::move(bids)) {
  for (double b : bids_) {
    if (!(b >= 0) || !std::isfinite(b)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixed bids must be finite and non-negative");
    }
  }
}

double FixedBidsPolicy::Bid(const SeqGameState& state, Rng&) const {
  const auto i = static_cast<std::size_t>(state.round);
  return i < bids_.size() ? bids_[i] : 0.0;
}

XosSqrtPolicy::XosSqrtPolicy(const AdditiveValuation& gstar, double budget)
    : FixedBidsPolicy(ScaledWeights(gstar, std::sqrt(std::max(0.0, budget)))) {
  RequireBudget(budget);
}

LowBudgetPolicy::LowBudgetPolicy(int m, double budget) : budget_(budget) {
  RequireBudget(budget);
  if (budget >= 1.0 / (static_cast<double>(m) * m)) {
    warning_ = "low_budget is meant for B < 1/m^2";
  }
}

double LowBudgetPolicy::Bid(const SeqGameState&, Rng&) const {
  return budget_ + kOutbid;
}

HighBudgetPolicy::HighBudgetPolicy(int m, double budget)
    : bid_(budget / m + kOutbid) {
  RequireBudget(budget);
  if (!(budget > (m - 1.0) / m)) {
    warning_ = "high_budget is meant for B > (m-1)/m";
  }
}

double HighBudgetPolicy::Bid(const SeqGameState&, Rng&) const { return bid_; }

UniformAdditiveAdversary::UniformAdditiveAdversary(double item_value,
                                                   Mode mode,
                                                   UniformAdditiveSolver* solver)
    : item_value_(item_value),
      mode_(mode),
      solver_(solver != nullptr ? solver : &SharedUniformAdditiveSolver()) {
  if (!(item_value > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "item value must be positive");
  }
}

double UniformAdditiveAdversary::Alpha(int m, double x) const {
  if (m <= 0) return 0.0;
  const double alpha_max = std::min(1.0, m * x);
  if (m == 1 || x >= 1.0) return alpha_max;
  if (mode_ == Mode::kAlphaTilde) {
    const AlphaParams p = ComputeAlphaParams(m, x);
    if (p.intermediate) return std::clamp(p.alpha_tilde, 0.0, p.alpha_max);
  }
  return OptimalAlpha(m, x, solver_->Bounds(m - 1).upper).alpha;
}

double UniformAdditiveAdversary::Bid(const SeqGameState& state, Rng&) const {
  const int m = state.remaining();
  if (m <= 0) return 0.0;
  const double x = state.adversary_budget / (m * item_value_);
  return std::min(state.adversary_budget, Alpha(m, x) * item_value_);
}

ConstantPricePlan MakeConstantPricePlan(int m, double budget, int k) {
  if (k < 2 || k > m) {
    throw Error(ErrorCode::kInvalidArgument,
                "constant-price strategy needs 2 <= k <= m");
  }
  RequireBudget(budget);
  ConstantPricePlan plan;
  plan.k = k;
  plan.q = (m + k - 1) / k;
  plan.p = budget / (m - plan.q + 1);
  plan.bound = Tangent(k - 1, budget).value -
               (budget * k / (k - 1.0)) / static_cast<double>(m);
  return plan;
}

int ChooseK(double budget, int m) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "ChooseK needs m >= 2");
  int best = 2;
  double best_value = Tangent(1, budget).value;
  for (int k = 3; k <= m; ++k) {
    const double v = Tangent(k - 1, budget).value;
    if (v > best_value + 1e-12) {
      best = k;
      best_value = v;
    }
  }
  return best;
}

ConstantPricePolicy::ConstantPricePolicy(const SubadditiveIdenticalValuation& v,
                                         double budget, int k)
    : plan_(MakeConstantPricePlan(v.item_count(), budget, k)) {}

double ConstantPricePolicy::Bid(const SeqGameState& state, Rng&) const {
  return state.wins_1 < plan_.q ? plan_.p + kOutbid : 0.0;
}

SInstanceAdversary::SInstanceAdversary(const SInstanceParams& params,
                                       UniformAdditiveSolver* solver)
    : params_(params),
      phase3_(params.sigma / (params.d * (2.0 + params.sigma)),
              UniformAdditiveAdversary::Mode::kOptimal, solver) {}

double SInstanceAdversary::Bid(const SeqGameState& state, Rng& rng) const {
  if (state.wins_1 == 0) return 0.0;
  if (state.wins_2 == 0) {
    return std::min(params_.phase2_bid, state.adversary_budget);
  }
  return phase3_.Bid(state, rng);
}

UniformRandomPolicy::UniformRandomPolicy(AdditiveValuation gstar)
    : gstar_(std::move(gstar)) {}

double UniformRandomPolicy::Bid(const SeqGameState& state, Rng& rng) const {
  const auto i = static_cast<std::size_t>(state.round);
  const double x = rng.Uniform();
  return i < gstar_.weights().size() ? x * gstar_.weights()[i] : 0.0;
}

PrefixAdversary::PrefixAdversary(int rounds, double amount)
    : rounds_(rounds), amount_(amount) {}

double PrefixAdversary::Bid(const SeqGameState& state, Rng&) const {
  if (state.round >= rounds_) return 0.0;
  return std::min(amount_, state.adversary_budget);
}

PolicySpec ParsePolicySpec(std::string_view text) {
  text = Trim(text);
  PolicySpec spec;
  const std::size_t open = text.find('(');
  spec.kind = std::string(Trim(text.substr(0, open)));
  if (open != std::string_view::npos) {
    if (text.back() != ')') {
      throw Error(ErrorCode::kParse,
                  "policy '" + std::string(text) + "' lacks a closing ')'");
    }
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    bool more = !Trim(inner).empty();
    while (more) {
      const std::size_t comma = inner.find(',');
      const std::string_view token = Trim(inner.substr(0, comma));
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::kParse, "policy '" + std::string(text) +
                                           "' has a malformed argument '" +
                                           std::string(token) + "'");
      }
      spec.args.push_back(value);
      more = comma != std::string_view::npos;
      if (more) inner.remove_prefix(comma + 1);
    }
  }
  static const std::vector<std::pair<std::string, int>> kKnown = {
      {"xos_sqrt", 0},     {"low_budget", 0},  {"high_budget", 0},
      {"alpha_tilde", 0},  {"constant_price", 1}, {"s_adversary", 0},
      {"uniform_random", 0}, {"fixed", -1}};
  const auto it = std::find_if(kKnown.begin(), kKnown.end(),
                               [&](const auto& k) { return k.first == spec.kind; });
  if (it == kKnown.end()) {
    throw Error(ErrorCode::kParse, "unknown policy '" + spec.kind + "'");
  }
  const int arity = it->second;
  if ((arity >= 0 && static_cast<int>(spec.args.size()) != arity) ||
      (arity < 0 && spec.args.empty())) {
    throw Error(ErrorCode::kParse, "policy '" + spec.kind +
                                       "' has the wrong number of arguments");
  }
  return spec;
}

std::unique_ptr<Policy> MakePolicy(const PolicySpec& spec,
                                   const PolicyContext& context) {
  if (context.valuation == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "policy context has no valuation");
  }
  const Valuation& v = *context.valuation;
  const int m = ItemCount(v);
  const double budget = context.budget;
  if (spec.kind == "xos_sqrt") {
    return std::make_unique<XosSqrtPolicy>(GstarOf(v, spec.kind), budget);
  }
  if (spec.kind == "low_budget") {
    return std::make_unique<LowBudgetPolicy>(m, budget);
  }
  if (spec.kind == "high_budget") {
    return std::make_unique<HighBudgetPolicy>(m, budget);
  }
  if (spec.kind == "alpha_tilde") {
    const auto* a = std::get_if<AdditiveValuation>(&v);
    if (a == nullptr ||
        std::any_of(a->weights().begin(), a->weights().end(),
                    [&](double w) { return w != a->weights().front(); })) {
      throw Error(ErrorCode::kInvalidArgument,
                  "alpha_tilde plays the uniform additive auction only");
    }
    return std::make_unique<UniformAdditiveAdversary>(
        a->weights().front(), UniformAdditiveAdversary::Mode::kAlphaTilde,
        context.solver);
  }
  if (spec.kind == "constant_price") {
    const auto* si = std::get_if<SubadditiveIdenticalValuation>(&v);
    if (si == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "constant_price needs an identical-item valuation");
    }
    const double k = spec.args.at(0);
    if (k != std::floor(k)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "constant_price(k) needs an integer k");
    }
    return std::make_unique<ConstantPricePolicy>(*si, budget,
                                                 static_cast<int>(k));
  }
  if (spec.kind == "s_adversary") {
    if (!context.s_instance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "s_adversary needs an s_instance valuation");
    }
    return std::make_unique<SInstanceAdversary>(*context.s_instance,
                                                context.solver);
  }
  if (spec.kind == "uniform_random") {
    return std::make_unique<UniformRandomPolicy>(GstarOf(v, spec.kind));
  }
  if (spec.kind == "fixed") {
    if (static_cast<int>(spec.args.size()) != m) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixed(...) needs one bid per item");
    }
    return std::make_unique<FixedBidsPolicy>(spec.args);
  }
  throw Error(ErrorCode::kParse, "unknown policy '" + spec.kind + "'");
}

}  // namespace riskfree
