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

#include "riskfree/uniform_additive.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "riskfree/error.h"

namespace riskfree {
namespace {

constexpr double kAlphaSlack = 1e-12;

void RequireLevel(int m, int min_m) {
  if (m < min_m) {
    throw Error(ErrorCode::kOutOfRange,
                "item count must be at least " + std::to_string(min_m));
  }
}

PiecewiseLinear BaseLevel() { return PiecewiseLinear({0.0, 1.0}, {1.0, 0.0}); }

}  // namespace

GhValues GH(int m, double x, double alpha, const PiecewiseLinear& f_prev) {
  RequireLevel(m, 2);
  if (!(x >= 0)) throw Error(ErrorCode::kInvalidArgument, "x must be >= 0");
  const double alpha_max = std::min(1.0, m * x);
  if (alpha < 0 || alpha > alpha_max + kAlphaSlack) {
    throw Error(ErrorCode::kInvalidArgument,
                "alpha must lie in [0, min(1, m x)]");
  }
  const double c = static_cast<double>(m - 1) / m;
  return {(1.0 - alpha) / m + c * f_prev(m * x / (m - 1)),
          c * f_prev(std::max(0.0, m * x - alpha) / (m - 1))};
}

AlphaParams ComputeAlphaParams(int m, double x) {
  RequireLevel(m, 2);
  if (!(x >= 0)) throw Error(ErrorCode::kInvalidArgument, "x must be >= 0");
  const double md = m;
  const double r = 1.0 - std::sqrt(x);
  AlphaParams p;
  p.m = m;
  p.x = x;
  p.alpha_tilde = 1.0 - 2.0 * md * r + 2.0 * std::sqrt(md * (md - 1.0)) * r;
  p.alpha_max = std::min(1.0, md * x);
  p.intermediate = x >= 1.0 / (md * md) && x <= (md - 1.0) / md;
  return p;
}

EqualizedAlpha OptimalAlpha(int m, double x, const PiecewiseLinear& f_prev) {
  RequireLevel(m, 2);
  if (!(x >= 0)) throw Error(ErrorCode::kInvalidArgument, "x must be >= 0");
  const double alpha_max = std::min(1.0, m * x);
  const double c = static_cast<double>(m - 1) / m;
  if (alpha_max <= 0) {
    const GhValues gh = GH(m, x, 0.0, f_prev);
    return {0.0, std::max(gh.g, gh.h), false};
  }
  // As functions of alpha: g is a falling line, h = c f_prev((m x - a)/(m-1)).
  const double g0 = 1.0 / m + c * f_prev(m * x / (m - 1));
  const PiecewiseLinear g =
      PiecewiseLinear::Line(-1.0 / m, g0, 0.0, alpha_max);
  const PiecewiseLinear h =
      f_prev.AffineTransform(c, -1.0 / (m - 1), m * x / (m - 1), 0.0);
  const auto crossing = SolveEqual(g, h, 0.0, alpha_max);
  EqualizedAlpha out;
  if (crossing) {
    out.alpha = *crossing;
    out.interior = true;
  } else {
    // g stays above h on the whole interval (g(0) >= h(0) always holds), so
    // the adversary spends as much as it may.
    out.alpha = alpha_max;
  }
  const GhValues gh = GH(m, x, out.alpha, f_prev);
  out.value = std::max(gh.g, gh.h);
  return out;
}

PiecewiseLinear UniformAdditiveStep(int m, const PiecewiseLinear& f_prev) {
  RequireLevel(m, 2);
  const double md = m;
  const double c = (md - 1.0) / md;
  // G0(x) = c F(m x / (m-1)): Bidder 1's continuation after winning.
  const PiecewiseLinear g0 = f_prev.AffineTransform(c, md / (md - 1.0), 0, 0);
  // At the equalizing alpha, u = (m x - alpha)/(m-1) solves
  // c (F(u) - u) = G0(x) + 1/m - x.
  const PiecewiseLinear rhs =
      Sum(g0, PiecewiseLinear::Line(-1.0, 1.0 / md, 0.0, 1.0));
  const PiecewiseLinear phi = Sum(f_prev.AffineTransform(c, 1, 0, 0),
                                  PiecewiseLinear::Line(-c, 0.0, -2.0, 3.0));
  const PiecewiseLinear u = Compose(Inverse(phi), rhs.Restrict(0.0, 1.0));
  const PiecewiseLinear equalized = Compose(f_prev, u).AffineTransform(c, 1, 0, 0);
  // When the crossing lies beyond alpha_max = min(1, m x), g at alpha_max wins.
  const PiecewiseLinear alpha_max({0.0, 1.0 / md, 1.0}, {0.0, 1.0, 1.0});
  const PiecewiseLinear capped =
      Sum(alpha_max.AffineTransform(-1.0 / md, 1, 0, 1.0 / md), g0);
  return Max(equalized, capped).Restrict(0.0, 1.0);
}

double ValueBounds::Gap() const {
  double gap = 0.0;
  for (double x : upper.breakpoints()) gap = std::max(gap, upper(x) - lower(x));
  for (double x : lower.breakpoints()) gap = std::max(gap, upper(x) - lower(x));
  return gap;
}

UniformAdditiveSolver::UniformAdditiveSolver(double tolerance)
    : tolerance_(tolerance) {
  if (!(tolerance > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
}

void UniformAdditiveSolver::ExtendTo(int m) {
  RequireLevel(m, 1);
  if (levels_.empty()) levels_.push_back({BaseLevel(), BaseLevel(), true});
  while (static_cast<int>(levels_.size()) < m) {
    const int next = static_cast<int>(levels_.size()) + 1;
    const ValueBounds& prev = levels_.back();
    if (prev.exact) {
      try {
        PiecewiseLinear f = UniformAdditiveStep(next, prev.upper);
        levels_.push_back({f, f, true});
        continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCapacityExceeded) throw;
      }
    }
    PiecewiseLinear up_prev = prev.upper;
    PiecewiseLinear lo_prev = prev.lower;
    if (prev.exact) {
      up_prev = SimplifyFromAbove(prev.upper, tolerance_);
      lo_prev = up_prev.AffineTransform(1, 1, 0, -tolerance_);
    }
    PiecewiseLinear up =
        SimplifyFromAbove(UniformAdditiveStep(next, up_prev), tolerance_);
    PiecewiseLinear lo =
        SimplifyFromAbove(UniformAdditiveStep(next, lo_prev), tolerance_)
            .AffineTransform(1, 1, 0, -tolerance_);
    levels_.push_back({std::move(lo), std::move(up), false});
  }
}

const PiecewiseLinear& UniformAdditiveSolver::Exact(int m) {
  const ValueBounds& b = Bounds(m);
  if (!b.exact) {
    throw Error(ErrorCode::kCapacityExceeded,
                "exact f_" + std::to_string(m) +
                    " exceeds the breakpoint cap; use Bounds()");
  }
  return b.upper;
}

const ValueBounds& UniformAdditiveSolver::Bounds(int m) {
  std::lock_guard<std::mutex> lock(mutex_);
  ExtendTo(m);
  return levels_[static_cast<std::size_t>(m - 1)];
}

int UniformAdditiveSolver::exact_levels() {
  std::lock_guard<std::mutex> lock(mutex_);
  int n = 0;
  while (n < static_cast<int>(levels_.size()) &&
         levels_[static_cast<std::size_t>(n)].exact) {
    ++n;
  }
  return n;
}

UniformAdditiveSolver& SharedUniformAdditiveSolver() {
  static UniformAdditiveSolver* solver = new UniformAdditiveSolver();
  return *solver;
}

PiecewiseLinear UniformAdditiveValue(int m) {
  return SharedUniformAdditiveSolver().Exact(m);
}

}  // namespace riskfree
