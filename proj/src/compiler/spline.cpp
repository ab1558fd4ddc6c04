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

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"
#include "spline_internal.hpp"

namespace spline2relu {
namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Interior nodes of t padded with `extra` equispaced points in (x_n, 1).
std::vector<double> padded_nodes(const Cpwl& t, std::size_t extra) {
  const auto xs = t.breakpoints();
  std::vector<double> out(xs.begin() + 1, xs.end() - 1);
  const double last = xs[xs.size() - 2];
  for (std::size_t i = 1; i <= extra; ++i) {
    out.push_back(last + (1.0 - last) * static_cast<double>(i) /
                             static_cast<double>(extra + 1));
  }
  return out;
}

// One row of the second layer of a core block: the coefficients of
// S(x) = b + sigma_0 x + sum_r m_r (x - xi_r)_+ with [S]_+ equal to the
// class's part of the residual.
struct ClassRow {
  double lin = 0.0;
  double bias = 0.0;
  std::vector<double> kinks;  // m_1..m_P
  double sign = 0.0;          // output weight: +1, -1 or 0 for an empty class
};

ClassRow class_row(std::span<const double> nodes, std::span<const double> xi,
                   std::span<const double> coeffs,
                   std::span<const std::size_t> members, std::size_t q) {
  const std::size_t p = xi.size();
  ClassRow row;
  row.kinks.assign(p, 0.0);
  if (members.empty()) return row;
  row.sign = coeffs[members.front()] > 0.0 ? 1.0 : -1.0;

  // Values at principal points (0-based r for xi_{r+1}).
  std::vector<std::optional<double>> s(p);
  std::optional<double> left_slope;
  std::optional<double> right_slope;
  for (std::size_t k0 : members) {
    const std::size_t j = k0 / q + 1;  // principal index, 1-based
    const double c = std::fabs(coeffs[k0]);
    const double peak = xi[j - 1];
    const double l = nodes[k0];           // X_{k-1} with k = k0 + 1
    const double r = nodes[j * q + 1];    // X_{jq+1}
    s[j - 1] = c;
    const double sl = c / (peak - l);
    const double sr = -c / (r - peak);
    if (j >= 2) {
      s[j - 2] = c - sl * (peak - xi[j - 2]);
    } else {
      left_slope = sl;
    }
    if (j < p) {
      s[j] = c + sr * (xi[j] - peak);
    } else {
      right_slope = sr;
    }
  }

  // Fill unconstrained principal values: interpolate between constraints,
  // hold constant beyond the outermost ones.
  std::vector<double> v(p);
  std::optional<std::size_t> prev;
  for (std::size_t r = 0; r < p; ++r) {
    if (!s[r]) continue;
    v[r] = *s[r];
    if (prev) {
      const std::size_t a = *prev;
      for (std::size_t u = a + 1; u < r; ++u) {
        const double t = (xi[u] - xi[a]) / (xi[r] - xi[a]);
        v[u] = v[a] + t * (v[r] - v[a]);
      }
    } else {
      for (std::size_t u = 0; u < r; ++u) v[u] = v[r];
    }
    prev = r;
  }
  for (std::size_t u = *prev + 1; u < p; ++u) v[u] = v[*prev];

  std::vector<double> sigma(p + 1);
  sigma[0] = left_slope.value_or(0.0);
  for (std::size_t r = 1; r < p; ++r) {
    sigma[r] = (v[r] - v[r - 1]) / (xi[r] - xi[r - 1]);
  }
  sigma[p] = right_slope.value_or(0.0);

  row.lin = sigma[0];
  row.bias = v[0] - sigma[0] * xi[0];
  for (std::size_t r = 0; r < p; ++r) row.kinks[r] = sigma[r + 1] - sigma[r];
  return row;
}

}  // namespace

namespace detail {

SpecialNetwork core_block(std::span<const double> nodes,
                          std::span<const double> values, std::size_t width) {
  const std::size_t q = hats_per_principal(width);
  const std::size_t p = width - 2;
  const std::vector<double> c = hat_coefficients(nodes, values, q);
  const auto classes = partition_indices(c, q, width);
  std::vector<double> xi(p);
  for (std::size_t r = 0; r < p; ++r) xi[r] = nodes[(r + 1) * q];

  AffineLayer in = AffineLayer::zeros(width, 1);
  in.weights[0] = 1.0;
  for (std::size_t r = 0; r < p; ++r) {
    in.weights[r + 1] = 1.0;
    in.bias[r + 1] = -xi[r];
  }
  AffineLayer mid = AffineLayer::zeros(width, width);
  mid.at(0, 0) = 1.0;
  mid.at(width - 1, width - 1) = 1.0;
  AffineLayer out = AffineLayer::zeros(1, width);
  out.at(0, width - 1) = 1.0;
  for (std::size_t k = 0; k < p; ++k) {
    const ClassRow row = class_row(nodes, xi, c, classes[k], q);
    if (row.sign == 0.0) continue;
    mid.at(k + 1, 0) = row.lin;
    for (std::size_t r = 0; r < p; ++r) mid.at(k + 1, r + 1) = row.kinks[r];
    mid.bias[k + 1] = row.bias;
    out.at(0, k + 1) = row.sign;
  }
  return SpecialNetwork(ReluNetwork({in, mid, out}));
}

SpecialNetwork add_affine_output(const SpecialNetwork& s, double a, double b) {
  const auto src = s.layers();
  std::vector<AffineLayer> layers(src.begin(), src.end());
  layers.back().at(0, 0) += a;
  layers.back().bias[0] += b;
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

}  // namespace detail

std::size_t hats_per_principal(std::size_t width) {
  if (width < 4) throw ArgumentError("unsupported width " + std::to_string(width));
  return width >= 8 ? (width - 2) / 6 : 2;
}

std::size_t block_capacity(std::size_t width) {
  return hats_per_principal(width) * (width - 2);
}

std::size_t spline_depth(std::size_t width, std::size_t n) {
  const std::size_t cap = block_capacity(width);
  return 2 * std::max<std::size_t>(1, ceil_div(n, cap));
}

double spline_budget(std::size_t width, std::size_t n) {
  const double small = static_cast<double>(width * width + 4 * width + 1);
  const double dn = static_cast<double>(n);
  if (width >= 8) return n >= block_capacity(width) ? 61.0 * dn : small;
  if (width == 4) return n >= 4 ? 19.0 * dn : small;
  return n >= 2 * (width - 2) ? 25.0 * dn : small;
}

std::vector<double> hat_coefficients(std::span<const double> nodes,
                                     std::span<const double> values,
                                     std::size_t q) {
  const std::size_t n = values.size();
  if (q == 0 || n % q != 0 || nodes.size() != n + 2) {
    throw ArgumentError("hat_coefficients: need N = q(W-2) values, N+2 nodes");
  }
  std::vector<double> c(n);
  for (std::size_t m = 1; m <= n; ++m) {
    const std::size_t j = (m + q - 1) / q;
    const double peak = nodes[j * q];
    const double x = nodes[m];
    double acc = values[m - 1];
    for (std::size_t k = (j - 1) * q + 1; k < m; ++k) {
      const double l = nodes[k - 1];
      acc -= c[k - 1] * (x - l) / (peak - l);
    }
    const double l = nodes[m - 1];
    c[m - 1] = m == j * q ? acc : acc * (peak - l) / (x - l);
  }
  return c;
}

std::vector<std::vector<std::size_t>> partition_indices(
    std::span<const double> coeffs, std::size_t q, std::size_t width) {
  if (width < 4 || q == 0 || coeffs.size() != q * (width - 2) ||
      6 * q > width - 2) {
    throw ArgumentError("partition_indices: need |coeffs| = q(W-2), 6q <= W-2");
  }
  std::vector<std::vector<std::size_t>> classes(width - 2);
  for (std::size_t k0 = 0; k0 < coeffs.size(); ++k0) {
    const double c = coeffs[k0];
    if (c == 0.0) continue;
    const std::size_t j = k0 / q + 1;
    const std::size_t i = j * q - k0;  // 1..q
    const std::size_t sign = c > 0.0 ? 0 : 1;
    classes[(sign * 3 + j % 3) * q + (i - 1)].push_back(k0);
  }
  return classes;
}

CompiledSpecial compile_spline(const Cpwl& target, std::size_t width) {
  if (width < 4) {
    throw ArgumentError("unsupported width " + std::to_string(width) +
                        " (need W >= 4)");
  }
  const Cpwl t = canonicalize(target);
  const std::size_t n = t.interior_count();
  const auto tv = t.values();
  const std::size_t depth = spline_depth(width, n);
  const std::size_t blocks = depth / 2;
  const std::size_t cap = block_capacity(width);
  const std::vector<double> xs = padded_nodes(t, blocks * cap - n);

  CompileReport report;
  report.width = width;
  report.depth = depth;
  report.params = param_count(width, depth);
  report.target_breakpoints = n;
  report.budget_bound = spline_budget(width, n);

  if (width <= 7) {
    const std::size_t g = width - 2;
    report.regime = "direct, " + std::to_string(g) + " breakpoints per layer";
    if (width == 7) {
      report.note =
          "width 7 uses the direct construction with q = 2; the main bound "
          "is stated for 4 <= W < 7";
    }
    // Slope jumps at real nodes; artificial nodes carry none.
    std::vector<double> jump(xs.size(), 0.0);
    for (std::size_t i = 1; i <= n; ++i) jump[i - 1] = t.slope(i) - t.slope(i - 1);
    std::vector<AffineLayer> layers;
    AffineLayer in = AffineLayer::zeros(width, 1);
    in.weights[0] = 1.0;
    for (std::size_t r = 0; r < g; ++r) {
      in.weights[r + 1] = 1.0;
      in.bias[r + 1] = -xs[r];
    }
    layers.push_back(std::move(in));
    for (std::size_t h = 1; h < depth; ++h) {
      AffineLayer mid = AffineLayer::zeros(width, width);
      mid.at(0, 0) = 1.0;
      mid.at(width - 1, width - 1) = 1.0;
      for (std::size_t r = 0; r < g; ++r) {
        mid.at(r + 1, 0) = 1.0;
        mid.bias[r + 1] = -xs[h * g + r];
        mid.at(width - 1, r + 1) = jump[(h - 1) * g + r];
      }
      layers.push_back(std::move(mid));
    }
    AffineLayer out = AffineLayer::zeros(1, width);
    out.at(0, 0) = t.slope(0);
    for (std::size_t r = 0; r < g; ++r) {
      out.at(0, r + 1) = jump[(depth - 1) * g + r];
    }
    out.at(0, width - 1) = 1.0;
    out.bias[0] = tv[0];
    layers.push_back(std::move(out));
    return {SpecialNetwork(ReluNetwork(std::move(layers))), report};
  }

  report.regime = "hat blocks, q = " + std::to_string(hats_per_principal(width));
  const double a = tv.back() - tv.front();
  const double b = tv.front();
  // Residual after removing the line through the endpoint values.
  std::vector<double> nodes{0.0};
  nodes.insert(nodes.end(), xs.begin(), xs.end());
  nodes.push_back(1.0);
  std::vector<double> resid(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    resid[i] = (i < n ? tv[i + 1] : t(xs[i])) - (a * xs[i] + b);
  }
  std::optional<SpecialNetwork> acc;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const std::span<const double> local(nodes.data() + blk * cap, cap + 2);
    const std::span<const double> vals(resid.data() + blk * cap, cap);
    SpecialNetwork block = detail::core_block(local, vals, width);
    acc = acc ? concat_sum(*acc, block) : std::move(block);
  }
  return {detail::add_affine_output(*acc, a, b), report};
}

CompiledStandard compile_one_layer(const Cpwl& target, std::size_t width) {
  const Cpwl t = canonicalize(target);
  const std::size_t n = t.interior_count();
  if (width < 2 || n + 1 > width) {
    throw ArgumentError("one-layer compiler needs W >= n + 1 (n = " +
                        std::to_string(n) + ")");
  }
  const auto xs = t.breakpoints();
  AffineLayer in = AffineLayer::zeros(width, 1);
  AffineLayer out = AffineLayer::zeros(1, width);
  in.weights[0] = 1.0;
  out.weights[0] = t.slope(0);
  out.bias[0] = t.values()[0];
  for (std::size_t j = 1; j <= n; ++j) {
    in.weights[j] = 1.0;
    in.bias[j] = -xs[j];
    out.weights[j] = t.slope(j) - t.slope(j - 1);
  }
  CompileReport report;
  report.width = width;
  report.depth = 1;
  report.params = param_count(width, 1);
  report.target_breakpoints = n;
  report.budget_bound = static_cast<double>(3 * width + 1);
  report.regime = "one hidden layer";
  return {ReluNetwork({in, out}), report};
}

}  // namespace spline2relu
