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
#include <bit>
#include <cmath>
#include <string>

#include "riskfree/closed_forms.h"
#include "riskfree/dense_lp.h"
#include "riskfree/error.h"

namespace riskfree {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Value of a set given by a membership predicate over [0, m) and its size.
template <class Member>
double ValueOf(const Valuation& v, Member member, int size) {
  return std::visit(
      Overloaded{
          [&](const AdditiveValuation& a) {
            double s = 0.0;
            for (int i = 0; i < a.item_count(); ++i) {
              if (member(i)) s += a.weights()[i];
            }
            return s;
          },
          [&](const XosValuation& x) {
            double best = 0.0;
            for (const auto& c : x.clauses()) {
              double s = 0.0;
              for (int i = 0; i < c.item_count(); ++i) {
                if (member(i)) s += c.weights()[i];
              }
              best = std::max(best, s);
            }
            return best;
          },
          [&](const SubadditiveIdenticalValuation& t) {
            return t.table()[static_cast<std::size_t>(size)];
          },
      },
      v);
}

std::vector<double> Scaled(std::vector<double> values, double scale) {
  for (double& x : values) x /= scale;
  return values;
}

}  // namespace

AdditiveValuation::AdditiveValuation(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "additive valuation needs items");
  }
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "additive weights must be finite and non-negative");
    }
    total_ += w;
  }
  if (total_ <= 0) {
    throw Error(ErrorCode::kDegenerateValuation,
                "additive valuation has zero total value");
  }
}

XosValuation::XosValuation(std::vector<AdditiveValuation> clauses)
    : clauses_(std::move(clauses)) {
  if (clauses_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "XOS valuation needs a clause");
  }
  for (const auto& c : clauses_) {
    if (c.item_count() != clauses_.front().item_count()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "XOS clauses must share one item count");
    }
  }
}

bool IsMonotoneSubadditiveTable(std::span<const double> table,
                                double tolerance) {
  if (table.empty() || std::abs(table[0]) > tolerance) return false;
  const std::size_t m = table.size() - 1;
  for (std::size_t k = 1; k <= m; ++k) {
    if (!std::isfinite(table[k]) || table[k] < table[k - 1] - tolerance) {
      return false;
    }
    for (std::size_t i = 1; i + i <= k; ++i) {
      if (table[k] > table[i] + table[k - i] + tolerance) return false;
    }
  }
  return true;
}

SubadditiveIdenticalValuation::SubadditiveIdenticalValuation(
    std::vector<double> table)
    : table_(std::move(table)) {
  if (table_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "identical-item table needs at least one item");
  }
  if (!IsMonotoneSubadditiveTable(table_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "identical-item table must start at 0 and be monotone and "
                "subadditive");
  }
  if (table_.back() <= 0) {
    throw Error(ErrorCode::kDegenerateValuation,
                "identical-item table has zero total value");
  }
}

int ItemCount(const Valuation& v) {
  return std::visit([](const auto& x) { return x.item_count(); }, v);
}

double Value(const Valuation& v, std::span<const int> items) {
  const int m = ItemCount(v);
  std::vector<bool> member(static_cast<std::size_t>(m), false);
  for (int i : items) {
    if (i < 0 || i >= m) {
      throw Error(ErrorCode::kOutOfRange,
                  "item index " + std::to_string(i) + " outside [0, " +
                      std::to_string(m) + ")");
    }
    member[static_cast<std::size_t>(i)] = true;
  }
  return ValueOfMembership(v, member);
}

double ValueOfMembership(const Valuation& v, const std::vector<bool>& member) {
  const int m = ItemCount(v);
  if (static_cast<int>(member.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "membership vector length differs from the item count");
  }
  const int size =
      static_cast<int>(std::count(member.begin(), member.end(), true));
  return ValueOf(
      v, [&](int i) { return member[static_cast<std::size_t>(i)]; }, size);
}

double ValueOfMask(const Valuation& v, std::uint64_t mask) {
  const int m = ItemCount(v);
  if (m > 64) {
    throw Error(ErrorCode::kOutOfRange, "bit-mask values need m <= 64");
  }
  if (m < 64 && (mask >> m) != 0) {
    throw Error(ErrorCode::kOutOfRange, "mask selects items beyond m");
  }
  return ValueOf(
      v, [&](int i) { return ((mask >> i) & 1U) != 0; },
      std::popcount(mask));
}

double TotalValue(const Valuation& v) {
  return std::visit(
      Overloaded{
          [](const AdditiveValuation& a) { return a.total(); },
          [](const XosValuation& x) { return GammaStar(x).total(); },
          [](const SubadditiveIdenticalValuation& t) {
            return t.table().back();
          },
      },
      v);
}

const AdditiveValuation& GammaStar(const XosValuation& v) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < v.clauses().size(); ++j) {
    if (v.clauses()[j].total() > v.clauses()[best].total()) best = j;
  }
  return v.clauses()[best];
}

Normalized Normalize(const Valuation& v) {
  const double scale = TotalValue(v);
  if (!(scale > 0)) {
    throw Error(ErrorCode::kDegenerateValuation,
                "cannot normalize a valuation with v(I) = 0");
  }
  return std::visit(
      Overloaded{
          [&](const AdditiveValuation& a) {
            return Normalized{AdditiveValuation(Scaled(a.weights(), scale)),
                              scale};
          },
          [&](const XosValuation& x) {
            std::vector<AdditiveValuation> clauses;
            for (const auto& c : x.clauses()) {
              clauses.emplace_back(Scaled(c.weights(), scale));
            }
            return Normalized{XosValuation(std::move(clauses)), scale};
          },
          [&](const SubadditiveIdenticalValuation& t) {
            return Normalized{
                SubadditiveIdenticalValuation(Scaled(t.table(), scale)), scale};
          },
      },
      v);
}

std::vector<double> SInstanceTable(double x, int m) {
  if (m < 3) {
    throw Error(ErrorCode::kOutOfRange, "S_{x,m} needs at least three items");
  }
  const double s = Sigma(x);
  const double d = m - 2;
  std::vector<double> table(static_cast<std::size_t>(m) + 1, 0.0);
  for (int i = 1; i < m; ++i) {
    table[static_cast<std::size_t>(i)] =
        1.0 / (2.0 + s) + (i - 1) * s / (d * (2.0 + s));
  }
  table[static_cast<std::size_t>(m)] = 1.0;
  return table;
}

std::pair<SubadditiveIdenticalValuation, SInstanceParams> MakeSInstance(
    double x, int m) {
  const double threshold = LThreshold(x);  // validates x
  if (m < threshold) {
    throw Error(ErrorCode::kInfeasibleInstance,
                "S_{x,m} needs m >= L(x) = " + std::to_string(threshold) +
                    ", got m=" + std::to_string(m));
  }
  SInstanceParams p;
  p.x = x;
  p.m = m;
  p.sigma = Sigma(x);
  p.d = m - 2;
  p.phase2_bid = (1.0 + p.sigma) / (p.d * (2.0 + p.sigma));
  return {SubadditiveIdenticalValuation(SInstanceTable(x, m)), p};
}

double CoverLowerBound(const SubadditiveIdenticalValuation& v, int q) {
  const int m = v.item_count();
  if (q < 1 || q > m) {
    throw Error(ErrorCode::kOutOfRange, "cover size q must lie in [1, m]");
  }
  return v.table().back() / static_cast<double>((m + q - 1) / q);
}

CoverCertificate BetaCover(const Valuation& v) {
  const int m = ItemCount(v);
  if (m > kMaxCoverItems) {
    throw Error(ErrorCode::kOutOfRange,
                "beta cover enumerates 2^m subsets and is capped at m=" +
                    std::to_string(kMaxCoverItems));
  }
  // Variables r_0..r_{m-1}, beta.
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  DenseLp lp;
  lp.c.assign(n, 0.0);
  lp.c[n - 1] = 1.0;
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t s = 1; s <= full; ++s) {
    std::vector<double> row(n, 0.0);
    for (int i = 0; i < m; ++i) {
      if ((s >> i) & 1U) row[static_cast<std::size_t>(i)] = 1.0;
    }
    row[n - 1] = -ValueOfMask(v, s);
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(0.0);
  }
  std::vector<double> eq(n, 1.0);
  eq[n - 1] = 0.0;
  lp.a_eq.push_back(std::move(eq));
  lp.b_eq.push_back(TotalValue(v));
  const LpSolution sol = SolveDenseLp(lp);
  CoverCertificate cert;
  cert.r.assign(sol.x.begin(), sol.x.end() - 1);
  cert.beta = sol.x.back();
  return cert;
}

}  // namespace riskfree
