// Copyright 2026 The spline2relu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Continuous piecewise linear functions on [0,1].

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace spline2relu {

/// A continuous piecewise linear function on [0,1], stored as strictly
/// increasing breakpoints 0 = x_0 < ... < x_{n+1} = 1 with nodal values.
///
/// Objects are immutable once constructed. Operations return canonical
/// results (no removable nodes) unless documented otherwise.
class Cpwl {
 public:
  /// Validates sortedness, endpoints and finiteness; throws StructureError.
  /// The input is kept as given; call canonicalize() to drop collinear nodes.
  Cpwl(std::vector<double> breakpoints, std::vector<double> values);

  /// The affine function a*x + b.
  [[nodiscard]] static Cpwl affine(double a, double b);
  [[nodiscard]] static Cpwl constant(double c) { return affine(0.0, c); }

  /// Evaluates at x in [0,1]; throws DomainError elsewhere.
  [[nodiscard]] double operator()(double x) const;

  /// Same as operator() but clamps x into [0,1] first.
  [[nodiscard]] double eval_clamped(double x) const;

  [[nodiscard]] std::span<const double> breakpoints() const { return xs_; }
  [[nodiscard]] std::span<const double> values() const { return vs_; }

  /// Number of stored nodes including both endpoints.
  [[nodiscard]] std::size_t node_count() const { return xs_.size(); }
  /// Number of interior breakpoints n.
  [[nodiscard]] std::size_t interior_count() const { return xs_.size() - 2; }

  /// Slope of piece i, i.e. on [x_i, x_{i+1}].
  [[nodiscard]] double slope(std::size_t i) const;

  [[nodiscard]] double min_value() const;
  [[nodiscard]] double max_value() const;
  [[nodiscard]] double sup_norm() const;

  /// True when no interior node is removable under the collinearity test.
  [[nodiscard]] bool is_canonical() const;

 private:
  std::vector<double> xs_;
  std::vector<double> vs_;
};

/// Node budget shared by every CPwL-producing operation. Results that would
/// exceed it raise ResourceError. Default 1 << 22.
void set_node_budget(std::size_t nodes);
[[nodiscard]] std::size_t node_budget();

/// Removes interior nodes whose left and right slopes agree up to a relative
/// difference of 1e-10.
[[nodiscard]] Cpwl canonicalize(const Cpwl& f);

/// Sum of coefficient * term plus bias, on the union of breakpoints.
[[nodiscard]] Cpwl linear_combination(std::span<const Cpwl* const> terms,
                                      std::span<const double> coeffs,
                                      double bias = 0.0);

/// a*f + b*g.
[[nodiscard]] Cpwl add(const Cpwl& f, const Cpwl& g, double a = 1.0,
                       double b = 1.0);

/// a*f + c.
[[nodiscard]] Cpwl scale_shift(const Cpwl& f, double a, double c = 0.0);

/// max(f, 0) with exact zero crossings inserted.
[[nodiscard]] Cpwl relu(const Cpwl& f);

/// f(g(x)). Requires g([0,1]) within [0,1] up to 1e-9; values are clamped.
[[nodiscard]] Cpwl compose(const Cpwl& f, const Cpwl& g);

/// x -> f(lo + (hi - lo) x) for 0 <= lo < hi <= 1.
[[nodiscard]] Cpwl restrict_affine(const Cpwl& f, double lo, double hi);

/// Exact sup distance on [0,1], attained at a breakpoint of f or g.
[[nodiscard]] double sup_diff(const Cpwl& f, const Cpwl& g);

/// Evaluates f at a sorted list of points in one sweep.
[[nodiscard]] std::vector<double> eval_sorted(const Cpwl& f,
                                              std::span<const double> xs);

/// The hat function: 2x on [0,1/2], 2 - 2x on [1/2,1].
[[nodiscard]] Cpwl hat();

/// The identity x.
[[nodiscard]] Cpwl identity();

/// The m-fold self composition of the hat function (2^m pieces).
[[nodiscard]] Cpwl sawtooth(int m);

/// sum_{k=1}^{m} coeffs[k-1] * H^{(k)}, the hat iterated k times.
[[nodiscard]] Cpwl takagi_partial(std::span<const double> coeffs);

}  // namespace spline2relu
