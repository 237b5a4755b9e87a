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

#ifndef RISKFREE_VALUATION_H_
#define RISKFREE_VALUATION_H_

#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace riskfree {

// v(S) = sum of weights over S.
class AdditiveValuation {
 public:
  // Throws kInvalidArgument for negative or non-finite weights and
  // kDegenerateValuation when every weight is zero.
  explicit AdditiveValuation(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  int item_count() const { return static_cast<int>(weights_.size()); }
  double total() const { return total_; }

  friend bool operator==(const AdditiveValuation&,
                         const AdditiveValuation&) = default;

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

// v(S) = max over clauses of the clause's additive value on S.
class XosValuation {
 public:
  // Throws kInvalidArgument when there are no clauses or their item counts
  // differ.
  explicit XosValuation(std::vector<AdditiveValuation> clauses);

  const std::vector<AdditiveValuation>& clauses() const { return clauses_; }
  int item_count() const { return clauses_.front().item_count(); }

  friend bool operator==(const XosValuation&, const XosValuation&) = default;

 private:
  std::vector<AdditiveValuation> clauses_;
};

// Identical items: every k-subset is worth table[k].
class SubadditiveIdenticalValuation {
 public:
  // Requires table[0] == 0, a non-decreasing table and v(i + j) <= v(i) +
  // v(j); violations throw kInvalidArgument. A zero top entry throws
  // kDegenerateValuation.
  explicit SubadditiveIdenticalValuation(std::vector<double> table);

  const std::vector<double>& table() const { return table_; }
  int item_count() const { return static_cast<int>(table_.size()) - 1; }

  friend bool operator==(const SubadditiveIdenticalValuation&,
                         const SubadditiveIdenticalValuation&) = default;

 private:
  std::vector<double> table_;
};

using Valuation =
    std::variant<AdditiveValuation, XosValuation, SubadditiveIdenticalValuation>;

// True when v(0) = 0, the table is non-decreasing and v(i + j) <= v(i) + v(j)
// within `tolerance`.
bool IsMonotoneSubadditiveTable(std::span<const double> table,
                                double tolerance = 1e-12);

int ItemCount(const Valuation& v);

// Value of the set listed by `items` (duplicates count once). Throws
// kOutOfRange for an index outside [0, m).
double Value(const Valuation& v, std::span<const int> items);
// Value of the set whose membership flags are given; size must equal m.
double ValueOfMembership(const Valuation& v, const std::vector<bool>& member);
// Bit i of `mask` selects item i. Requires m <= 64.
double ValueOfMask(const Valuation& v, std::uint64_t mask);
// v(I).
double TotalValue(const Valuation& v);

// The clause with the largest total; ties go to the lowest index.
const AdditiveValuation& GammaStar(const XosValuation& v);

struct Normalized {
  Valuation valuation;
  double scale = 1.0;
};
// Divides every value by v(I). Throws kDegenerateValuation when v(I) = 0.
Normalized Normalize(const Valuation& v);

struct SInstanceParams {
  double x = 0.0;
  int m = 0;
  double sigma = 0.0;
  int d = 0;
  double phase2_bid = 0.0;
};

// Raw table 0, 1/(2+s), 1/(2+s) + (i-1)s/(d(2+s)), ..., 1 of S_{x,m} with
// no feasibility checks, so that both sides of the subadditivity boundary
// can be inspected. Requires 0 < x < 1/4 and m >= 3.
std::vector<double> SInstanceTable(double x, int m);

// The normalized S_{x,m} instance. Throws kOutOfRange for x outside (0, 1/4)
// and kInfeasibleInstance when m < L(x).
std::pair<SubadditiveIdenticalValuation, SInstanceParams> MakeSInstance(
    double x, int m);

// v(I) / ceil(m / q), a lower bound on the value of any q-subset.
double CoverLowerBound(const SubadditiveIdenticalValuation& v, int q);

struct CoverCertificate {
  std::vector<double> r;
  double beta = 0.0;
};

// Smallest beta such that some r >= 0 with sum r = v(I) satisfies
// r(S) <= beta v(S) for every non-empty S. Exact LP over all 2^m - 1
// subsets, so m is capped at kMaxCoverItems.
inline constexpr int kMaxCoverItems = 8;
CoverCertificate BetaCover(const Valuation& v);

}  // namespace riskfree

#endif  // RISKFREE_VALUATION_H_
