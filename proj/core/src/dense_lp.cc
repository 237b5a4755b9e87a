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

#include "riskfree/dense_lp.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "riskfree/error.h"

namespace riskfree {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasibilityTol = 1e-9;
constexpr double kDriveOutEps = 1e-9;
constexpr double kRatioTol = 1e-12;

// Tableau rows hold [coefficients | rhs]; basis[r] is the basic column of
// row r.
struct Tableau {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;  // excluding the rhs column

  void Pivot(std::size_t r, std::size_t c) {
    auto& pr = rows[r];
    const double p = pr[c];
    for (double& v : pr) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const double f = rows[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * pr[j];
    }
    basis[r] = c;
  }

  // Minimizes cost over columns whose `allowed` flag is set. Returns false
  // when unbounded. Pivots follow Dantzig's rule with the largest pivot
  // element among tied rows; after a long run of degenerate pivots the
  // search switches to Bland's rule, which cannot cycle.
  bool Minimize(const std::vector<double>& cost,
                const std::vector<bool>& allowed) {
    // Columns whose only positive entries are below the pivot tolerance are
    // skipped until the next pivot rather than reported as unbounded.
    std::vector<bool> skipped(cols, false);
    const std::size_t degenerate_limit = 4 * (rows.size() + cols);
    std::size_t degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run > degenerate_limit;
      std::size_t enter = cols;
      double most_negative = -kPivotEps;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!allowed[j] || skipped[j]) continue;
        double reduced = cost[j];
        for (std::size_t r = 0; r < rows.size(); ++r) {
          reduced -= cost[basis[r]] * rows[r][j];
        }
        if (reduced < most_negative) {
          most_negative = reduced;
          enter = j;
          if (bland) break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = rows.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const double a = rows[r][enter];
        if (a <= kPivotEps) continue;
        const double ratio = rows[r][cols] / a;
        bool take = leave == rows.size() || ratio < best - kRatioTol;
        if (!take && ratio <= best + kRatioTol) {
          take = bland ? basis[r] < basis[leave] : a > rows[leave][enter];
        }
        if (take) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == rows.size()) {
        const bool tiny = std::any_of(rows.begin(), rows.end(),
                                      [&](const auto& row) {
                                        return row[enter] > 0;
                                      });
        if (!tiny) return false;
        skipped[enter] = true;
        continue;
      }
      degenerate_run = best <= kRatioTol ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
      std::fill(skipped.begin(), skipped.end(), false);
    }
  }
};

}  // namespace

LpSolution SolveDenseLp(const DenseLp& lp) {
  const std::size_t n = lp.c.size();
  const std::size_t n_ub = lp.a_ub.size();
  const std::size_t n_eq = lp.a_eq.size();
  if (lp.b_ub.size() != n_ub || lp.b_eq.size() != n_eq) {
    throw Error(ErrorCode::kInvalidArgument, "LP row and rhs counts differ");
  }
  for (const auto& row : lp.a_ub) {
    if (row.size() != n) throw Error(ErrorCode::kInvalidArgument, "ragged LP");
  }
  for (const auto& row : lp.a_eq) {
    if (row.size() != n) throw Error(ErrorCode::kInvalidArgument, "ragged LP");
  }

  // Column layout: originals, one slack or surplus per inequality, then one
  // artificial per row that lacks a natural basic column.
  const std::size_t m_rows = n_ub + n_eq;
  std::vector<bool> needs_artificial(m_rows, false);
  for (std::size_t i = 0; i < n_ub; ++i) {
    if (lp.b_ub[i] < 0) needs_artificial[i] = true;
  }
  for (std::size_t i = 0; i < n_eq; ++i) needs_artificial[n_ub + i] = true;
  const std::size_t artificial_count = static_cast<std::size_t>(
      std::count(needs_artificial.begin(), needs_artificial.end(), true));

  const std::size_t first_art = n + n_ub;
  Tableau t;
  t.cols = first_art + artificial_count;
  t.rows.assign(m_rows, std::vector<double>(t.cols + 1, 0.0));
  t.basis.assign(m_rows, 0);
  std::size_t next_art = first_art;
  for (std::size_t i = 0; i < m_rows; ++i) {
    const bool is_ub = i < n_ub;
    const auto& a = is_ub ? lp.a_ub[i] : lp.a_eq[i - n_ub];
    const double b = is_ub ? lp.b_ub[i] : lp.b_eq[i - n_ub];
    const double sign = b < 0 ? -1.0 : 1.0;
    auto& row = t.rows[i];
    for (std::size_t j = 0; j < n; ++j) row[j] = sign * a[j];
    if (is_ub) row[n + i] = sign;
    row[t.cols] = sign * b;
    if (needs_artificial[i]) {
      row[next_art] = 1.0;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = n + i;
    }
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost(t.cols, 0.0);
  for (std::size_t j = first_art; j < t.cols; ++j) cost[j] = 1.0;
  std::vector<bool> allowed(t.cols, true);
  t.Minimize(cost, allowed);
  double infeasibility = 0.0;
  for (std::size_t r = 0; r < m_rows; ++r) {
    if (t.basis[r] >= first_art) infeasibility += t.rows[r][t.cols];
  }
  if (infeasibility > kFeasibilityTol) {
    throw Error(ErrorCode::kInfeasibleLp, "linear program is infeasible");
  }
  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are redundant and dropped.
  for (std::size_t r = 0; r < t.rows.size();) {
    if (t.basis[r] < first_art) {
      ++r;
      continue;
    }
    // Largest entry as pivot, to keep rounding under control.
    std::size_t col = first_art;
    double largest = kDriveOutEps;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (std::abs(t.rows[r][j]) > largest) {
        largest = std::abs(t.rows[r][j]);
        col = j;
      }
    }
    if (col == first_art) {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
    } else {
      t.Pivot(r, col);
      ++r;
    }
  }

  // Phase 2.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
  for (std::size_t j = first_art; j < t.cols; ++j) allowed[j] = false;
  if (!t.Minimize(cost, allowed)) {
    throw Error(ErrorCode::kOutOfRange, "linear program is unbounded");
  }
  LpSolution out;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.basis[r] < n) out.x[t.basis[r]] = t.rows[r][t.cols];
  }
  for (std::size_t j = 0; j < n; ++j) out.objective += lp.c[j] * out.x[j];
  return out;
}

}  // namespace riskfree
