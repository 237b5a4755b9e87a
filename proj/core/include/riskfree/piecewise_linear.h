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

#ifndef RISKFREE_PIECEWISE_LINEAR_H_
#define RISKFREE_PIECEWISE_LINEAR_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace riskfree {

// A continuous piecewise-linear function of one real variable, stored as
// breakpoints x_0 < ... < x_k with values y_0 ... y_k. Between breakpoints
// the function interpolates linearly; beyond either end it is constant.
//
// Values are kept in canonical form: adjacent collinear segments are merged,
// so two functions that agree everywhere have the same breakpoint lists up to
// rounding. All operations are pure and crossings are computed from segment
// coefficients, never by bisection.
class PiecewiseLinear {
 public:
  static constexpr std::size_t kDefaultMaxBreakpoints = 100000;
  // Two slopes closer than this are treated as one segment.
  static constexpr double kSlopeTolerance = 1e-12;

  // Throws kInvalidArgument unless `xs` is strictly increasing, non-empty and
  // the same length as `ys`; kCapacityExceeded if the canonical form still
  // holds more than `max_breakpoints` points.
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys,
                  std::size_t max_breakpoints = kDefaultMaxBreakpoints);

  static PiecewiseLinear Constant(double value);
  // The line through (lo, y(lo)) and (hi, y(hi)) with y(x) = slope*x +
  // intercept, held constant outside [lo, hi].
  static PiecewiseLinear Line(double slope, double intercept, double lo,
                              double hi);

  double operator()(double x) const { return Eval(x); }
  double Eval(double x) const;

  std::span<const double> breakpoints() const { return xs_; }
  std::span<const double> values() const { return ys_; }
  std::size_t size() const { return xs_.size(); }
  std::size_t segment_count() const { return xs_.size() - 1; }
  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }
  // Slope of segment i, i.e. between breakpoints i and i+1.
  double Slope(std::size_t i) const;

  // x -> a * f(b*x + c) + d. Throws kInvalidArgument when b == 0.
  PiecewiseLinear AffineTransform(double a, double b, double c,
                                  double d) const;

  // The same function with breakpoints outside [lo, hi] removed and explicit
  // breakpoints inserted at lo and hi; constant beyond them.
  PiecewiseLinear Restrict(double lo, double hi) const;

  // Writes `x,value` rows (with header) at 12 significant digits.
  void WriteCsv(std::ostream& out) const;

  friend bool operator==(const PiecewiseLinear&,
                         const PiecewiseLinear&) = default;

 private:
  PiecewiseLinear() = default;
  void Canonicalize();
  void CheckCapacity() const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::size_t max_breakpoints_ = kDefaultMaxBreakpoints;
};

enum class Extreme { kMin, kMax };

// Pointwise min or max. Breakpoints are the union of both inputs plus every
// crossing point.
PiecewiseLinear PointwiseExtreme(const PiecewiseLinear& f,
                                 const PiecewiseLinear& g, Extreme mode);
inline PiecewiseLinear Min(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return PointwiseExtreme(f, g, Extreme::kMin);
}
inline PiecewiseLinear Max(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return PointwiseExtreme(f, g, Extreme::kMax);
}

// Pointwise f + g.
PiecewiseLinear Sum(const PiecewiseLinear& f, const PiecewiseLinear& g);

// outer(inner(x)).
PiecewiseLinear Compose(const PiecewiseLinear& outer,
                        const PiecewiseLinear& inner);

// Inverse of a strictly monotone function on [f.lo(), f.hi()]. The result is
// meaningful on the range of f only. Throws kContractViolation if f is not
// strictly monotone.
PiecewiseLinear Inverse(const PiecewiseLinear& f);

// Leftmost point in [lo, hi] where a non-increasing `lhs` meets a
// non-decreasing `rhs`. Returns nullopt when lhs(lo) < rhs(lo) or
// lhs(hi) > rhs(hi). Throws kContractViolation if either monotonicity
// assumption fails inside the interval.
std::optional<double> SolveEqual(const PiecewiseLinear& lhs,
                                 const PiecewiseLinear& rhs, double lo,
                                 double hi);

// A function u with f <= u <= f + tolerance everywhere on [f.lo(), f.hi()],
// built from a subset of f's breakpoints joined by chords. Endpoints are
// kept. A chord is accepted only when it lies on or above every breakpoint it
// skips, so the bound holds without any convexity assumption. Throws
// kInvalidArgument for a negative tolerance.
PiecewiseLinear SimplifyFromAbove(const PiecewiseLinear& f, double tolerance);

}  // namespace riskfree

#endif  // RISKFREE_PIECEWISE_LINEAR_H_
