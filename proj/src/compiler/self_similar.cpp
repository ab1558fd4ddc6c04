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

#include <cmath>
#include <string>

#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

constexpr double kEndpointTol = 1e-12;

void check_pattern(const Cpwl& s) {
  const auto v = s.values();
  if (std::fabs(v.front()) > kEndpointTol || std::fabs(v.back()) > kEndpointTol) {
    throw ArgumentError("pattern must vanish at 0 and 1");
  }
}

void check_intervals(std::span<const Interval> intervals) {
  if (intervals.empty()) throw ArgumentError("need at least one interval");
  double prev = 0.0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& j = intervals[i];
    if (!(j.lo >= 0.0 && j.lo < j.hi && j.hi <= 1.0)) {
      throw ArgumentError("interval " + std::to_string(i) +
                          " must satisfy 0 <= a < b <= 1");
    }
    if (j.lo < prev) {
      throw ArgumentError("intervals " + std::to_string(i - 1) + " and " +
                          std::to_string(i) + " overlap or are out of order");
    }
    prev = j.hi;
  }
}

// Appends (x, v) unless it repeats the last node.
void push_node(std::vector<double>& xs, std::vector<double>& vs, double x,
               double v) {
  if (!xs.empty() && x <= xs.back()) return;
  xs.push_back(x);
  vs.push_back(v);
}

Cpwl from_nodes(std::vector<double> xs, std::vector<double> vs) {
  if (xs.empty() || xs.front() > 0.0) {
    xs.insert(xs.begin(), 0.0);
    vs.insert(vs.begin(), 0.0);
  }
  if (xs.back() < 1.0) {
    xs.push_back(1.0);
    vs.push_back(0.0);
  }
  return canonicalize(Cpwl(std::move(xs), std::move(vs)));
}

// T = sum H_i and its companion T^ = sum H^_i for intervals with disjoint
// closed hulls (except that the last may end at 1).
std::pair<Cpwl, Cpwl> hat_sums(std::span<const Interval> iv) {
  std::vector<double> tx, tv, hx, hv;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const double a = iv[i].lo;
    const double b = iv[i].hi;
    const double next = i + 1 < iv.size() ? iv[i + 1].lo : 1.0;
    push_node(tx, tv, a, 0.0);
    push_node(tx, tv, b, 1.0);
    if (b < next) {
      const double c = 0.5 * (b + next);
      push_node(tx, tv, c, 0.0);
      push_node(hx, hv, b, 0.0);
      push_node(hx, hv, c, 1.0);
      push_node(hx, hv, next, 0.0);
    }
  }
  return {from_nodes(std::move(tx), std::move(tv)),
          from_nodes(std::move(hx), std::move(hv))};
}

ReluNetwork plain_spline(const Cpwl& f, std::size_t width) {
  return special_to_standard(compile_spline(f, width).net);
}

// (S o T - S^ o T^) for a nonnegative pattern S on intervals with disjoint
// closed hulls, as a plain network of width W - 2.
ReluNetwork difference_net(const Cpwl& s, std::span<const Interval> iv,
                           std::size_t width) {
  const std::size_t inner = width - 4;
  const auto [t, t_hat] = hat_sums(iv);
  const Cpwl s_hat = compose(s, Cpwl::affine(-1.0, 1.0));
  const ReluNetwork st = compose_nets(plain_spline(t, inner), plain_spline(s, inner));
  const ReluNetwork st_hat =
      compose_nets(plain_spline(t_hat, inner), plain_spline(s_hat, inner));
  const ReluNetwork parts[] = {st, st_hat};
  const double signs[] = {1.0, -1.0};
  return special_to_standard(stack_sum(parts, signs));
}

}  // namespace

Cpwl self_similar_function(const Cpwl& pattern,
                           std::span<const Interval> intervals) {
  check_pattern(pattern);
  check_intervals(intervals);
  const auto px = pattern.breakpoints();
  const auto pv = pattern.values();
  std::vector<double> xs, vs;
  for (const Interval& iv : intervals) {
    const double h = iv.hi - iv.lo;
    for (std::size_t k = 0; k < px.size(); ++k) {
      const double x = k + 1 == px.size() ? iv.hi : iv.lo + h * px[k];
      const double v = k == 0 || k + 1 == px.size() ? 0.0 : pv[k];
      push_node(xs, vs, x, v);
    }
  }
  return from_nodes(std::move(xs), std::move(vs));
}

CompiledSpecial compile_self_similar(const Cpwl& pattern,
                                     std::span<const Interval> intervals,
                                     std::size_t width) {
  if (width < 8) {
    throw ArgumentError("self-similar compilation needs W >= 8, got " +
                        std::to_string(width));
  }
  check_pattern(pattern);
  check_intervals(intervals);
  const Cpwl s = canonicalize(pattern);

  std::vector<ReluNetwork> terms;
  std::vector<double> signs;
  const Cpwl parts[] = {relu(s), relu(scale_shift(s, -1.0))};
  const double part_sign[] = {1.0, -1.0};
  for (int p = 0; p < 2; ++p) {
    if (parts[p].max_value() <= 0.0) continue;
    for (std::size_t parity = 0; parity < 2; ++parity) {
      std::vector<Interval> subset;
      for (std::size_t i = parity; i < intervals.size(); i += 2) {
        subset.push_back(intervals[i]);
      }
      if (subset.empty()) continue;
      terms.push_back(difference_net(parts[p], subset, width));
      signs.push_back(part_sign[p]);
    }
  }
  SpecialNetwork net =
      terms.empty() ? zero_special(width, 2) : stack_relu_sum(terms, signs);

  const std::size_t k = s.interior_count();
  const std::size_t m = intervals.size();
  CompileReport report;
  report.width = width;
  report.depth = net.depth();
  report.params = net.param_count();
  report.target_breakpoints = k + m;
  const double w = static_cast<double>(width);
  report.budget_bound =
      kSelfSimilarC1 * static_cast<double>(k + m) + kSelfSimilarC2 * w * w;
  report.regime = std::to_string(terms.size()) + " rectified difference terms";
  return {std::move(net), report};
}

}  // namespace spline2relu
