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
#include <set>
#include <string>

#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

int ceil_log2(int j) {
  int m = 0;
  while ((1 << m) < j) ++m;
  return m;
}

// H(scale * x + shift) as a width-2, depth-1 network.
ReluNetwork scaled_hat(double scale, double shift) {
  AffineLayer in = AffineLayer::zeros(2, 1);
  in.weights = {scale, scale};
  in.bias = {shift, shift - 0.5};
  AffineLayer out = AffineLayer::zeros(1, 2);
  out.weights = {2.0, -4.0};
  return ReluNetwork({in, out});
}

// C = 1 - 2H.
ReluNetwork cosine_net(double scale) {
  AffineLayer in = AffineLayer::zeros(2, 1);
  in.weights = {scale, scale};
  in.bias = {0.0, -0.5};
  AffineLayer out = AffineLayer::zeros(1, 2);
  out.weights = {-4.0, 8.0};
  out.bias = {1.0};
  return ReluNetwork({in, out});
}

}  // namespace

Cpwl fourier_basis(AtomKind kind, int j) {
  if (j < 1) throw ArgumentError("frequency index must be >= 1");
  // Nodes at (4i + s) / (4j), s = 0..3, written exactly.
  const double denom = 4.0 * j;
  std::vector<double> xs{0.0};
  std::vector<double> vs{kind == AtomKind::kCosine ? 1.0 : 0.0};
  for (int i = 0; i < j; ++i) {
    if (kind == AtomKind::kCosine) {
      xs.push_back((4.0 * i + 2.0) / denom);
      vs.push_back(-1.0);
      xs.push_back(i + 1 == j ? 1.0 : (4.0 * i + 4.0) / denom);
      vs.push_back(1.0);
    } else {
      xs.push_back((4.0 * i + 1.0) / denom);
      vs.push_back(1.0);
      xs.push_back((4.0 * i + 3.0) / denom);
      vs.push_back(-1.0);
      if (i + 1 == j) {
        xs.push_back(1.0);
        vs.push_back(0.0);
      }
    }
  }
  return Cpwl(std::move(xs), std::move(vs));
}

ReluNetwork fourier_atom(AtomKind kind, int j) {
  if (j < 1) throw ArgumentError("frequency index must be >= 1");
  const int m = ceil_log2(j);
  std::optional<ReluNetwork> net;
  auto append = [&net](ReluNetwork next) {
    net = net ? compose_nets(*net, next) : std::move(next);
  };
  if (kind == AtomKind::kCosine) {
    // C_j(x) = C(H^{(m)}(j 2^-m x)).
    const double s = std::ldexp(static_cast<double>(j), -m);
    if (m == 0) return cosine_net(s);
    append(scaled_hat(s, 0.0));
    for (int i = 1; i < m; ++i) append(scaled_hat(1.0, 0.0));
  } else {
    // S_j(x) = C(H^{(m+1)}((j x + 3/4) 2^-(m+1))).
    const double s = std::ldexp(1.0, -(m + 1));
    append(scaled_hat(j * s, 0.75 * s));
    for (int i = 0; i < m; ++i) append(scaled_hat(1.0, 0.0));
  }
  append(cosine_net(1.0));
  return std::move(*net);
}

std::size_t fourier_depth(std::size_t terms, int max_index, std::size_t width) {
  if (width < 6) throw ArgumentError("Fourier sums need W >= 6");
  const std::size_t g = (width - 2) / 4;
  const std::size_t p = 2 * (static_cast<std::size_t>(ceil_log2(max_index)) + 2);
  return ((terms + g - 1) / g) * p;
}

CompiledSpecial compile_fourier_sum(std::span<const FourierTerm> terms,
                                    std::size_t width) {
  if (width < 6) {
    throw ArgumentError("Fourier sums need W >= 6, got " + std::to_string(width));
  }
  if (terms.empty()) throw ArgumentError("no Fourier terms");
  std::set<int> seen;
  int lambda = 1;
  for (const FourierTerm& t : terms) {
    if (t.index < 1) throw ArgumentError("frequency index must be >= 1");
    if (!seen.insert(t.index).second) {
      throw ArgumentError("duplicate frequency index " + std::to_string(t.index));
    }
    lambda = std::max(lambda, t.index);
  }
  const std::size_t p = 2 * (static_cast<std::size_t>(ceil_log2(lambda)) + 2);
  const std::size_t g = (width - 2) / 4;

  std::vector<ReluNetwork> pairs;
  for (const FourierTerm& t : terms) {
    const ReluNetwork atoms[] = {fourier_atom(AtomKind::kCosine, t.index),
                                 fourier_atom(AtomKind::kSine, t.index)};
    const double coeffs[] = {t.a, t.b};
    pairs.push_back(special_to_standard(embed_deeper(stack_sum(atoms, coeffs), p)));
  }
  std::vector<ReluNetwork> groups;
  for (std::size_t i = 0; i < pairs.size(); i += g) {
    const std::size_t end = std::min(pairs.size(), i + g);
    const std::span<const ReluNetwork> chunk(pairs.data() + i, end - i);
    groups.push_back(widen(parallel_sum(chunk), width - 2));
  }
  SpecialNetwork net = stack_sum(groups);

  CompileReport report;
  report.width = width;
  report.depth = net.depth();
  report.params = net.param_count();
  report.target_breakpoints = terms.size();
  report.budget_bound = static_cast<double>(
      param_count(width, fourier_depth(terms.size(), lambda, width)));
  report.regime = std::to_string(groups.size()) + " groups of up to " +
                  std::to_string(g) + " terms";
  return {std::move(net), report};
}

SpecialNetwork takagi_network(std::span<const double> coeffs) {
  if (coeffs.empty()) throw ArgumentError("Takagi network needs m >= 1");
  return iterate_sum(hat_network(), coeffs);
}

}  // namespace spline2relu
