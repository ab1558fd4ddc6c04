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

#include "spline2relu/cpwl.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "spline2relu/errors.hpp"
#include "spline2relu/kernels.hpp"

namespace spline2relu {
namespace {

constexpr double kSlopeTol = 1e-10;
constexpr double kSnapTol = 1e-14;
constexpr double kRangeTol = 1e-9;

std::atomic<std::size_t> g_node_budget{std::size_t{1} << 22};

void check_budget(std::size_t nodes) {
  if (nodes > g_node_budget.load(std::memory_order_relaxed)) {
    throw ResourceError("CPwL result needs " + std::to_string(nodes) +
                        " nodes, budget is " +
                        std::to_string(g_node_budget.load()));
  }
}

bool collinear(double x0, double v0, double x1, double v1, double x2,
               double v2) {
  const double sl = (v1 - v0) / (x1 - x0);
  const double sr = (v2 - v1) / (x2 - x1);
  const double scale = std::max({1.0, std::fabs(sl), std::fabs(sr)});
  return std::fabs(sl - sr) <= kSlopeTol * scale;
}

double lerp_at(double x0, double v0, double x1, double v1, double x) {
  if (x == x0) return v0;
  if (x == x1) return v1;
  return v0 + (v1 - v0) * ((x - x0) / (x1 - x0));
}

std::vector<double> merge_breakpoints(std::span<const Cpwl* const> terms) {
  std::vector<double> xs;
  std::size_t total = 0;
  for (const Cpwl* t : terms) total += t->node_count();
  xs.reserve(total);
  for (const Cpwl* t : terms) {
    const auto bp = t->breakpoints();
    const auto mid = xs.end();
    xs.insert(xs.end(), bp.begin(), bp.end());
    std::inplace_merge(xs.begin(), mid, xs.end());
  }
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  check_budget(xs.size());
  return xs;
}

// Canonicalizes without validation of the result; inputs are already valid.
Cpwl canonical_from(std::vector<double> xs, std::vector<double> vs) {
  std::size_t out = 1;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    while (out >= 2 && collinear(xs[out - 2], vs[out - 2], xs[out - 1],
                                 vs[out - 1], xs[i], vs[i])) {
      --out;
    }
    xs[out] = xs[i];
    vs[out] = vs[i];
    ++out;
  }
  xs.resize(out);
  vs.resize(out);
  return Cpwl(std::move(xs), std::move(vs));
}

}  // namespace

Cpwl::Cpwl(std::vector<double> breakpoints, std::vector<double> values)
    : xs_(std::move(breakpoints)), vs_(std::move(values)) {
  if (xs_.size() != vs_.size()) {
    throw StructureError("breakpoint and value counts differ");
  }
  if (xs_.size() < 2) throw StructureError("need at least two nodes");
  if (xs_.front() != 0.0 || xs_.back() != 1.0) {
    throw StructureError("breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(vs_[i])) {
      throw StructureError("non-finite node at index " + std::to_string(i));
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw StructureError("breakpoints not strictly increasing at index " +
                           std::to_string(i));
    }
  }
}

Cpwl Cpwl::affine(double a, double b) { return Cpwl({0.0, 1.0}, {b, a + b}); }

double Cpwl::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("evaluation point outside [0,1]: " + std::to_string(x));
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (i + 1 == xs_.size()) return vs_.back();
  return lerp_at(xs_[i], vs_[i], xs_[i + 1], vs_[i + 1], x);
}

double Cpwl::eval_clamped(double x) const {
  if (std::isnan(x)) throw DomainError("evaluation point is NaN");
  return (*this)(std::clamp(x, 0.0, 1.0));
}

double Cpwl::slope(std::size_t i) const {
  return (vs_[i + 1] - vs_[i]) / (xs_[i + 1] - xs_[i]);
}

double Cpwl::min_value() const { return *std::min_element(vs_.begin(), vs_.end()); }
double Cpwl::max_value() const { return *std::max_element(vs_.begin(), vs_.end()); }

double Cpwl::sup_norm() const {
  return std::max(std::fabs(min_value()), std::fabs(max_value()));
}

bool Cpwl::is_canonical() const {
  for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
    if (collinear(xs_[i - 1], vs_[i - 1], xs_[i], vs_[i], xs_[i + 1],
                  vs_[i + 1])) {
      return false;
    }
  }
  return true;
}

void set_node_budget(std::size_t nodes) {
  if (nodes < 2) throw ArgumentError("node budget must be at least 2");
  g_node_budget.store(nodes, std::memory_order_relaxed);
}

std::size_t node_budget() {
  return g_node_budget.load(std::memory_order_relaxed);
}

Cpwl canonicalize(const Cpwl& f) {
  const auto xs = f.breakpoints();
  const auto vs = f.values();
  return canonical_from({xs.begin(), xs.end()}, {vs.begin(), vs.end()});
}

std::vector<double> eval_sorted(const Cpwl& f, std::span<const double> xs) {
  const auto fx = f.breakpoints();
  const auto fv = f.values();
  std::vector<double> out(xs.size());
  std::size_t piece = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("evaluation point outside [0,1]: " + std::to_string(x));
    }
    if (i > 0 && x < xs[i - 1]) throw ArgumentError("points must be sorted");
    while (piece + 2 < fx.size() && fx[piece + 1] <= x) ++piece;
    out[i] = lerp_at(fx[piece], fv[piece], fx[piece + 1], fv[piece + 1], x);
  }
  return out;
}

Cpwl linear_combination(std::span<const Cpwl* const> terms,
                        std::span<const double> coeffs, double bias) {
  if (terms.size() != coeffs.size()) {
    throw ArgumentError("term and coefficient counts differ");
  }
  std::vector<const Cpwl*> used;
  std::vector<double> used_coeffs;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (coeffs[t] == 0.0) continue;
    used.push_back(terms[t]);
    used_coeffs.push_back(coeffs[t]);
  }
  if (used.empty()) return Cpwl::constant(bias);
  std::vector<double> xs = merge_breakpoints(used);
  std::vector<double> vs(xs.size(), bias);
  const auto& k = kernels::active_kernels();
  for (std::size_t t = 0; t < used.size(); ++t) {
    const std::vector<double> tv = eval_sorted(*used[t], xs);
    k.axpy(used_coeffs[t], tv.data(), vs.data(), vs.size());
  }
  return canonical_from(std::move(xs), std::move(vs));
}

Cpwl add(const Cpwl& f, const Cpwl& g, double a, double b) {
  const Cpwl* terms[] = {&f, &g};
  const double coeffs[] = {a, b};
  return linear_combination(terms, coeffs);
}

Cpwl scale_shift(const Cpwl& f, double a, double c) {
  const Cpwl* terms[] = {&f};
  const double coeffs[] = {a};
  return linear_combination(terms, coeffs, c);
}

Cpwl relu(const Cpwl& f) {
  const auto fx = f.breakpoints();
  const auto fv = f.values();
  std::vector<double> xs{fx[0]};
  std::vector<double> vs{std::max(fv[0], 0.0)};
  for (std::size_t i = 0; i + 1 < fx.size(); ++i) {
    const double va = fv[i];
    const double vb = fv[i + 1];
    if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
      const double xa = fx[i];
      const double xb = fx[i + 1];
      const double xz = xa + (xb - xa) * (va / (va - vb));
      if (xz - xa > kSnapTol && xb - xz > kSnapTol) {
        xs.push_back(xz);
        vs.push_back(0.0);
      }
    }
    xs.push_back(fx[i + 1]);
    vs.push_back(std::max(vb, 0.0));
    check_budget(xs.size());
  }
  return canonical_from(std::move(xs), std::move(vs));
}

Cpwl compose(const Cpwl& f, const Cpwl& g) {
  const auto gx = g.breakpoints();
  const auto gv = g.values();
  if (g.min_value() < -kRangeTol || g.max_value() > 1.0 + kRangeTol) {
    throw DomainError("inner function leaves [0,1]: range [" +
                      std::to_string(g.min_value()) + ", " +
                      std::to_string(g.max_value()) + "]");
  }
  const auto fx = f.breakpoints();
  const auto fv = f.values();

  std::vector<double> xs{0.0};
  std::vector<double> vs{f.eval_clamped(gv[0])};
  std::vector<double> piece_x;
  std::vector<double> piece_v;
  for (std::size_t i = 0; i + 1 < gx.size(); ++i) {
    const double xa = gx[i];
    const double xb = gx[i + 1];
    const double ya = std::clamp(gv[i], 0.0, 1.0);
    const double yb = std::clamp(gv[i + 1], 0.0, 1.0);
    piece_x.clear();
    piece_v.clear();
    if (ya != yb) {
      const double lo = std::min(ya, yb);
      const double hi = std::max(ya, yb);
      auto first = std::upper_bound(fx.begin(), fx.end(), lo);
      auto last = std::lower_bound(fx.begin(), fx.end(), hi);
      for (auto it = first; it < last; ++it) {
        const double xi = xa + (xb - xa) * ((*it - ya) / (yb - ya));
        piece_x.push_back(xi);
        piece_v.push_back(fv[static_cast<std::size_t>(it - fx.begin())]);
      }
      if (yb < ya) {
        std::reverse(piece_x.begin(), piece_x.end());
        std::reverse(piece_v.begin(), piece_v.end());
      }
    }
    for (std::size_t k = 0; k < piece_x.size(); ++k) {
      if (piece_x[k] > xs.back() && piece_x[k] < xb) {
        xs.push_back(piece_x[k]);
        vs.push_back(piece_v[k]);
      }
    }
    xs.push_back(xb);
    vs.push_back(f(yb));
    check_budget(xs.size());
  }
  return canonical_from(std::move(xs), std::move(vs));
}

Cpwl restrict_affine(const Cpwl& f, double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw ArgumentError("restriction interval must satisfy 0 <= lo < hi <= 1");
  }
  return compose(f, Cpwl({0.0, 1.0}, {lo, hi}));
}

double sup_diff(const Cpwl& f, const Cpwl& g) {
  const Cpwl* terms[] = {&f, &g};
  const std::vector<double> xs = merge_breakpoints(terms);
  const std::vector<double> a = eval_sorted(f, xs);
  const std::vector<double> b = eval_sorted(g, xs);
  return kernels::active_kernels().max_abs_diff(a.data(), b.data(), a.size());
}

Cpwl hat() { return Cpwl({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}); }

Cpwl identity() { return Cpwl({0.0, 1.0}, {0.0, 1.0}); }

Cpwl sawtooth(int m) {
  if (m < 0 || m > 60) throw ArgumentError("sawtooth order out of range");
  const std::size_t pieces = std::size_t{1} << m;
  check_budget(pieces + 1);
  std::vector<double> xs(pieces + 1);
  std::vector<double> vs(pieces + 1);
  const double h = std::ldexp(1.0, -m);
  for (std::size_t k = 0; k <= pieces; ++k) {
    xs[k] = static_cast<double>(k) * h;
    vs[k] = m == 0 ? static_cast<double>(k) : static_cast<double>(k % 2);
  }
  return Cpwl(std::move(xs), std::move(vs));
}

Cpwl takagi_partial(std::span<const double> coeffs) {
  const int m = static_cast<int>(coeffs.size());
  if (m == 0) return Cpwl::constant(0.0);
  if (m > 60) throw ArgumentError("Takagi order out of range");
  const std::size_t pieces = std::size_t{1} << m;
  check_budget(pieces + 1);
  std::vector<double> xs(pieces + 1);
  std::vector<double> vs(pieces + 1, 0.0);
  const double h = std::ldexp(1.0, -m);
  for (std::size_t j = 0; j <= pieces; ++j) {
    double y = static_cast<double>(j) * h;
    xs[j] = y;
    // Dyadic arguments keep every iterate exact in binary floating point.
    for (int k = 0; k < m; ++k) {
      y = y <= 0.5 ? 2.0 * y : 2.0 - 2.0 * y;
      vs[j] += coeffs[static_cast<std::size_t>(k)] * y;
    }
  }
  return canonical_from(std::move(xs), std::move(vs));
}

}  // namespace spline2relu
