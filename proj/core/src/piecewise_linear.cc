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

#include "riskfree/piecewise_linear.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>
#include <string>
#include <utility>

#include "riskfree/error.h"

namespace riskfree {
namespace {

// Breakpoints closer than this are the same point.
constexpr double kPointMergeTolerance = 1e-13;
// A point whose distance from the chord of its neighbours is below this is
// dropped as collinear, even when the short segments around it have noisy
// slopes.
constexpr double kChordTolerance = 1e-14;

bool SamePoint(double a, double b) {
  return std::abs(a - b) <= kPointMergeTolerance * std::max(1.0, std::abs(a));
}

// Sorted union of two breakpoint lists, merging near-duplicates.
std::vector<double> UnionOfBreakpoints(std::span<const double> a,
                                       std::span<const double> b) {
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(),
             std::back_inserter(merged));
  std::vector<double> out;
  out.reserve(merged.size());
  for (double x : merged) {
    if (out.empty() || !SamePoint(out.back(), x)) out.push_back(x);
  }
  return out;
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys,
                                 std::size_t max_breakpoints)
    : xs_(std::move(xs)), ys_(std::move(ys)), max_breakpoints_(max_breakpoints) {
  if (xs_.empty() || xs_.size() != ys_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "piecewise-linear function needs matching, non-empty "
                "breakpoint and value lists");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "piecewise-linear breakpoints must be finite");
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "piecewise-linear breakpoints must be strictly increasing");
    }
  }
  Canonicalize();
  CheckCapacity();
}

PiecewiseLinear PiecewiseLinear::Constant(double value) {
  return PiecewiseLinear({0.0}, {value});
}

PiecewiseLinear PiecewiseLinear::Line(double slope, double intercept, double lo,
                                      double hi) {
  if (!(hi > lo)) {
    throw Error(ErrorCode::kInvalidArgument, "Line needs lo < hi");
  }
  return PiecewiseLinear({lo, hi},
                         {slope * lo + intercept, slope * hi + intercept});
}

void PiecewiseLinear::Canonicalize() {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(xs_.size());
  ys.reserve(ys_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!xs.empty() && SamePoint(xs.back(), xs_[i])) {
      // Keep the later point at the end of the list so the last breakpoint
      // is never moved inward.
      if (i + 1 == xs_.size()) {
        xs.back() = xs_[i];
        ys.back() = ys_[i];
      }
      continue;
    }
    while (xs.size() >= 2) {
      const std::size_t n = xs.size();
      const double x0 = xs[n - 2], y0 = ys[n - 2];
      const double x1 = xs[n - 1], y1 = ys[n - 1];
      const double x2 = xs_[i], y2 = ys_[i];
      const double s01 = (y1 - y0) / (x1 - x0);
      const double s12 = (y2 - y1) / (x2 - x1);
      const double chord = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0);
      if (std::abs(s01 - s12) <= kSlopeTolerance ||
          std::abs(y1 - chord) <= kChordTolerance) {
        xs.pop_back();
        ys.pop_back();
      } else {
        break;
      }
    }
    xs.push_back(xs_[i]);
    ys.push_back(ys_[i]);
  }
  xs_ = std::move(xs);
  ys_ = std::move(ys);
}

void PiecewiseLinear::CheckCapacity() const {
  if (xs_.size() > max_breakpoints_) {
    throw Error(ErrorCode::kCapacityExceeded,
                "piecewise-linear function has " + std::to_string(xs_.size()) +
                    " breakpoints, more than the cap of " +
                    std::to_string(max_breakpoints_));
  }
}

double PiecewiseLinear::Eval(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinear::Slope(std::size_t i) const {
  if (i + 1 >= xs_.size()) {
    throw Error(ErrorCode::kOutOfRange, "segment index out of range");
  }
  return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

PiecewiseLinear PiecewiseLinear::AffineTransform(double a, double b, double c,
                                                 double d) const {
  if (b == 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "affine transform needs a non-zero argument scale");
  }
  const std::size_t n = xs_.size();
  PiecewiseLinear out;
  out.max_breakpoints_ = max_breakpoints_;
  out.xs_.resize(n);
  out.ys_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = b > 0 ? i : n - 1 - i;
    out.xs_[j] = (xs_[i] - c) / b;
    out.ys_[j] = a * ys_[i] + d;
  }
  out.Canonicalize();
  return out;
}

PiecewiseLinear PiecewiseLinear::Restrict(double lo, double hi) const {
  if (!(hi > lo)) {
    throw Error(ErrorCode::kInvalidArgument, "Restrict needs lo < hi");
  }
  PiecewiseLinear out;
  out.max_breakpoints_ = max_breakpoints_;
  out.xs_.push_back(lo);
  out.ys_.push_back(Eval(lo));
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] > lo && xs_[i] < hi) {
      out.xs_.push_back(xs_[i]);
      out.ys_.push_back(ys_[i]);
    }
  }
  out.xs_.push_back(hi);
  out.ys_.push_back(Eval(hi));
  out.Canonicalize();
  return out;
}

void PiecewiseLinear::WriteCsv(std::ostream& out) const {
  std::ostringstream buffer;
  buffer.imbue(std::locale::classic());
  buffer << std::setprecision(12);
  buffer << "x,value\n";
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    buffer << xs_[i] << ',' << ys_[i] << '\n';
  }
  out << buffer.str();
}

PiecewiseLinear PointwiseExtreme(const PiecewiseLinear& f,
                                 const PiecewiseLinear& g, Extreme mode) {
  const std::vector<double> grid =
      UnionOfBreakpoints(f.breakpoints(), g.breakpoints());
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(grid.size() * 2);
  ys.reserve(grid.size() * 2);
  const auto pick = [mode](double a, double b) {
    return mode == Extreme::kMax ? std::max(a, b) : std::min(a, b);
  };
  double prev_diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double fx = f(x);
    const double gx = g(x);
    const double diff = fx - gx;
    if (i > 0 && ((prev_diff < 0 && diff > 0) || (prev_diff > 0 && diff < 0))) {
      // Both functions are linear on [grid[i-1], x]; the crossing is where
      // the linear difference vanishes.
      const double x0 = grid[i - 1];
      const double cross = x0 + (x - x0) * prev_diff / (prev_diff - diff);
      if (cross > xs.back() && cross < x) {
        xs.push_back(cross);
        ys.push_back(f(cross));
      }
    }
    xs.push_back(x);
    ys.push_back(pick(fx, gx));
    prev_diff = diff;
  }
  std::vector<double> cx;
  std::vector<double> cy;
  cx.reserve(xs.size());
  cy.reserve(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!cx.empty() && SamePoint(cx.back(), xs[i])) continue;
    cx.push_back(xs[i]);
    cy.push_back(ys[i]);
  }
  return PiecewiseLinear(std::move(cx), std::move(cy));
}

PiecewiseLinear Sum(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  std::vector<double> xs = UnionOfBreakpoints(f.breakpoints(), g.breakpoints());
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]) + g(xs[i]);
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

PiecewiseLinear Compose(const PiecewiseLinear& outer,
                        const PiecewiseLinear& inner) {
  const auto ix = inner.breakpoints();
  const auto iy = inner.values();
  const auto ox = outer.breakpoints();
  const auto oy = outer.values();
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(ix.size() + ox.size());
  ys.reserve(ix.size() + ox.size());
  const auto push = [&](double x, double y) {
    if (!xs.empty() && SamePoint(xs.back(), x)) return;
    xs.push_back(x);
    ys.push_back(y);
  };
  for (std::size_t i = 0; i < ix.size(); ++i) {
    push(ix[i], outer(iy[i]));
    if (i + 1 == ix.size()) break;
    const double y0 = iy[i];
    const double y1 = iy[i + 1];
    if (y0 == y1) continue;
    // Outer breakpoints strictly inside (min(y0,y1), max(y0,y1)) map back to
    // interior points of this inner segment, visited in x order.
    const double lo = std::min(y0, y1);
    const double hi = std::max(y0, y1);
    auto first = std::upper_bound(ox.begin(), ox.end(), lo);
    auto last = std::lower_bound(ox.begin(), ox.end(), hi);
    if (first >= last) continue;
    const double dx = ix[i + 1] - ix[i];
    const auto emit = [&](std::size_t k) {
      const double x = ix[i] + dx * (ox[k] - y0) / (y1 - y0);
      if (x > ix[i] && x < ix[i + 1]) push(x, oy[k]);
    };
    const std::size_t a = static_cast<std::size_t>(first - ox.begin());
    const std::size_t b = static_cast<std::size_t>(last - ox.begin());
    if (y1 > y0) {
      for (std::size_t k = a; k < b; ++k) emit(k);
    } else {
      for (std::size_t k = b; k-- > a;) emit(k);
    }
  }
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

PiecewiseLinear Inverse(const PiecewiseLinear& f) {
  const auto xs = f.breakpoints();
  const auto ys = f.values();
  if (xs.size() < 2) {
    throw Error(ErrorCode::kContractViolation,
                "a constant function has no inverse");
  }
  const bool increasing = ys[1] > ys[0];
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (increasing ? !(ys[i] > ys[i - 1]) : !(ys[i] < ys[i - 1])) {
      throw Error(ErrorCode::kContractViolation,
                  "Inverse needs a strictly monotone function");
    }
  }
  std::vector<double> ix(ys.begin(), ys.end());
  std::vector<double> iy(xs.begin(), xs.end());
  if (!increasing) {
    std::reverse(ix.begin(), ix.end());
    std::reverse(iy.begin(), iy.end());
  }
  return PiecewiseLinear(std::move(ix), std::move(iy));
}

std::optional<double> SolveEqual(const PiecewiseLinear& lhs,
                                 const PiecewiseLinear& rhs, double lo,
                                 double hi) {
  if (hi < lo) {
    throw Error(ErrorCode::kInvalidArgument, "SolveEqual needs lo <= hi");
  }
  std::vector<double> grid{lo};
  for (double x : UnionOfBreakpoints(lhs.breakpoints(), rhs.breakpoints())) {
    if (x > lo && x < hi && !SamePoint(x, grid.back())) grid.push_back(x);
  }
  if (hi > lo) grid.push_back(hi);

  constexpr double kMonotoneSlack = 1e-12;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (lhs(grid[i]) > lhs(grid[i - 1]) + kMonotoneSlack) {
      throw Error(ErrorCode::kContractViolation,
                  "SolveEqual: left-hand side increases inside the interval");
    }
    if (rhs(grid[i]) < rhs(grid[i - 1]) - kMonotoneSlack) {
      throw Error(ErrorCode::kContractViolation,
                  "SolveEqual: right-hand side decreases inside the interval");
    }
  }

  const auto diff = [&](double x) { return lhs(x) - rhs(x); };
  if (diff(lo) < 0 || diff(hi) > 0) return std::nullopt;
  double prev = diff(grid[0]);
  if (prev <= 0) return grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = diff(grid[i]);
    if (cur <= 0) {
      return grid[i - 1] + (grid[i] - grid[i - 1]) * prev / (prev - cur);
    }
    prev = cur;
  }
  return std::nullopt;
}

PiecewiseLinear SimplifyFromAbove(const PiecewiseLinear& f, double tolerance) {
  if (!(tolerance >= 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "SimplifyFromAbove needs a non-negative tolerance");
  }
  const auto xs = f.breakpoints();
  const auto ys = f.values();
  const std::size_t n = xs.size();
  // True when the chord a -> b stays within [0, tolerance] above f at every
  // skipped breakpoint.
  const auto chord_ok = [&](std::size_t a, std::size_t b) {
    const double slope = (ys[b] - ys[a]) / (xs[b] - xs[a]);
    for (std::size_t j = a + 1; j < b; ++j) {
      const double gap = ys[a] + slope * (xs[j] - xs[a]) - ys[j];
      if (gap < 0 || gap > tolerance) return false;
    }
    return true;
  };
  std::vector<double> ox{xs[0]};
  std::vector<double> oy{ys[0]};
  std::size_t a = 0;
  while (a + 1 < n) {
    // Galloping search for the farthest acceptable endpoint.
    std::size_t good = a + 1;
    std::size_t step = 1;
    while (good + step < n && chord_ok(a, good + step)) {
      good += step;
      step *= 2;
    }
    while (step > 1) {
      step /= 2;
      if (good + step < n && chord_ok(a, good + step)) good += step;
    }
    ox.push_back(xs[good]);
    oy.push_back(ys[good]);
    a = good;
  }
  return PiecewiseLinear(std::move(ox), std::move(oy));
}

}  // namespace riskfree
