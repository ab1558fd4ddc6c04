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

#include "spline2relu/network.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

std::string where(std::size_t layer) {
  return "layer " + std::to_string(layer) + ": ";
}

void check_special(const ReluNetwork& net) {
  const std::size_t w = net.width();
  const std::size_t depth = net.depth();
  const auto layers = net.layers();
  if (w < 4) throw StructureError("special network needs width >= 4");
  const AffineLayer& first = layers[0];
  if (first.at(0, 0) != 1.0 || first.at(w - 1, 0) != 0.0 ||
      first.bias[0] != 0.0 || first.bias[w - 1] != 0.0) {
    throw StructureError(where(0) + "source/collation entries not (1,0;0,0)");
  }
  for (std::size_t l = 1; l < depth; ++l) {
    const AffineLayer& a = layers[l];
    if (a.bias[0] != 0.0) throw StructureError(where(l) + "source bias not 0");
    for (std::size_t c = 0; c < w; ++c) {
      if (a.at(0, c) != (c == 0 ? 1.0 : 0.0)) {
        throw StructureError(where(l) + "source row is not (1,0,...,0)");
      }
    }
    for (std::size_t r = 0; r < w; ++r) {
      if (a.at(r, w - 1) != (r == w - 1 ? 1.0 : 0.0)) {
        throw StructureError(where(l) + "collation column is not e_W");
      }
    }
  }
  if (layers[depth].at(0, w - 1) != 1.0) {
    throw StructureError(where(depth) + "collation output weight is not 1");
  }
}

// Which hidden channels pass through ReLU.
std::vector<std::uint8_t> relu_mask(std::size_t width, bool special) {
  std::vector<std::uint8_t> mask(width, 1);
  if (special && width >= 2) {
    mask[0] = 0;
    mask[width - 1] = 0;
  }
  return mask;
}

double forward_impl(const ReluNetwork& net, bool special, double x) {
  const std::size_t w = net.width();
  const auto layers = net.layers();
  std::vector<double> cur(w);
  std::vector<double> next(w);
  for (std::size_t r = 0; r < w; ++r) {
    cur[r] = std::fma(layers[0].weights[r], x, layers[0].bias[r]);
  }
  for (std::size_t l = 1; l < layers.size(); ++l) {
    for (std::size_t r = 0; r < w; ++r) {
      const bool linear = special && (r == 0 || r + 1 == w);
      if (!linear) cur[r] = cur[r] > 0.0 ? cur[r] : 0.0;
    }
    const AffineLayer& a = layers[l];
    for (std::size_t r = 0; r < a.rows; ++r) {
      double acc = a.bias[r];
      for (std::size_t c = 0; c < a.cols; ++c) {
        acc = std::fma(a.at(r, c), cur[c], acc);
      }
      next[r] = acc;
    }
    cur.swap(next);
  }
  return cur[0];
}

void forward_batch_impl(const ReluNetwork& net, bool special,
                        std::span<const double> xs, std::span<double> out,
                        const kernels::KernelTable& k) {
  if (xs.size() != out.size()) {
    throw ArgumentError("forward_batch: input and output sizes differ");
  }
  const std::size_t batch = xs.size();
  if (batch == 0) return;
  const std::size_t w = net.width();
  const auto layers = net.layers();
  const std::vector<std::uint8_t> hidden_mask = relu_mask(w, special);
  const std::vector<std::uint8_t> output_mask(1, 0);
  std::vector<double> cur(w * batch);
  std::vector<double> next(w * batch);
  k.affine_batch(layers[0].weights.data(), layers[0].bias.data(), w, 1,
                 hidden_mask.data(), xs.data(), cur.data(), batch);
  for (std::size_t l = 1; l + 1 < layers.size(); ++l) {
    k.affine_batch(layers[l].weights.data(), layers[l].bias.data(), w, w,
                   hidden_mask.data(), cur.data(), next.data(), batch);
    cur.swap(next);
  }
  const AffineLayer& last = layers.back();
  k.affine_batch(last.weights.data(), last.bias.data(), 1, w,
                 output_mask.data(), cur.data(), out.data(), batch);
}

// Pushes CPwL values through the network. When `collation` is non-null it
// receives the last channel after every hidden layer.
Cpwl extract_impl(const ReluNetwork& net, bool special,
                  std::vector<Cpwl>* collation) {
  const std::size_t w = net.width();
  const auto layers = net.layers();
  const Cpwl x = identity();
  std::vector<Cpwl> cur;
  cur.reserve(w);
  for (std::size_t r = 0; r < w; ++r) {
    cur.push_back(Cpwl::affine(layers[0].weights[r], layers[0].bias[r]));
  }
  std::vector<const Cpwl*> ptrs(w);
  std::vector<double> row(w);
  for (std::size_t l = 1; l < layers.size(); ++l) {
    for (std::size_t r = 0; r < w; ++r) {
      const bool linear = special && (r == 0 || r + 1 == w);
      if (!linear) cur[r] = relu(cur[r]);
      ptrs[r] = &cur[r];
    }
    if (collation != nullptr) collation->push_back(cur.back());
    const AffineLayer& a = layers[l];
    std::vector<Cpwl> next;
    next.reserve(a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) {
      for (std::size_t c = 0; c < w; ++c) row[c] = a.at(r, c);
      next.push_back(linear_combination(ptrs, row, a.bias[r]));
    }
    cur = std::move(next);
  }
  return cur.front();
}

// The breakpoints found by propagation, with nodal values from a forward
// pass. Between consecutive breakpoints the network is affine, and the
// forward pass does not accumulate interpolation error across layers.
template <class Net>
Cpwl revalue(const Net& net, const Cpwl& f) {
  const auto xs = f.breakpoints();
  std::vector<double> vs(xs.size());
  forward_batch(net, xs, vs);
  return canonicalize(Cpwl(std::vector<double>(xs.begin(), xs.end()), std::move(vs)));
}

}  // namespace

AffineLayer AffineLayer::zeros(std::size_t rows, std::size_t cols) {
  AffineLayer a;
  a.rows = rows;
  a.cols = cols;
  a.weights.assign(rows * cols, 0.0);
  a.bias.assign(rows, 0.0);
  return a;
}

ReluNetwork::ReluNetwork(std::vector<AffineLayer> layers)
    : layers_(std::move(layers)) {
  if (layers_.size() < 2) {
    throw StructureError("network needs at least one hidden layer");
  }
  const std::size_t w = layers_.front().rows;
  if (w == 0) throw StructureError("network width must be positive");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const AffineLayer& a = layers_[l];
    const std::size_t want_rows = l + 1 == layers_.size() ? 1 : w;
    const std::size_t want_cols = l == 0 ? 1 : w;
    if (a.rows != want_rows || a.cols != want_cols) {
      throw StructureError(where(l) + "shape " + std::to_string(a.rows) + "x" +
                           std::to_string(a.cols) + ", expected " +
                           std::to_string(want_rows) + "x" +
                           std::to_string(want_cols));
    }
    if (a.weights.size() != a.rows * a.cols || a.bias.size() != a.rows) {
      throw StructureError(where(l) + "storage size does not match shape");
    }
    for (double v : a.weights) {
      if (!std::isfinite(v)) throw StructureError(where(l) + "non-finite weight");
    }
    for (double v : a.bias) {
      if (!std::isfinite(v)) throw StructureError(where(l) + "non-finite bias");
    }
  }
}

std::size_t ReluNetwork::param_count() const {
  return spline2relu::param_count(width(), depth());
}

SpecialNetwork::SpecialNetwork(ReluNetwork net) : net_(std::move(net)) {
  check_special(net_);
}

std::size_t param_count(std::size_t width, std::size_t depth) {
  if (width < 1 || depth < 1) {
    throw ArgumentError("param_count needs W >= 1 and L >= 1");
  }
  return width * (width + 1) * depth + 2 - (width - 1) * (width - 1);
}

double forward(const ReluNetwork& net, double x) {
  return forward_impl(net, false, x);
}
double forward(const SpecialNetwork& net, double x) {
  return forward_impl(net.inner(), true, x);
}
double forward(const AnyNetwork& net, double x) {
  return std::visit([x](const auto& n) { return forward(n, x); }, net);
}

void forward_batch(const ReluNetwork& net, std::span<const double> xs,
                   std::span<double> out, const kernels::KernelTable& k) {
  forward_batch_impl(net, false, xs, out, k);
}
void forward_batch(const SpecialNetwork& net, std::span<const double> xs,
                   std::span<double> out, const kernels::KernelTable& k) {
  forward_batch_impl(net.inner(), true, xs, out, k);
}
void forward_batch(const AnyNetwork& net, std::span<const double> xs,
                   std::span<double> out, const kernels::KernelTable& k) {
  std::visit([&](const auto& n) { forward_batch(n, xs, out, k); }, net);
}

Cpwl extract_cpwl(const ReluNetwork& net) {
  return revalue(net, extract_impl(net, false, nullptr));
}
Cpwl extract_cpwl(const SpecialNetwork& net) {
  return revalue(net, extract_impl(net.inner(), true, nullptr));
}
Cpwl extract_cpwl(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return extract_cpwl(n); }, net);
}

std::vector<Cpwl> collation_values(const SpecialNetwork& net) {
  std::vector<Cpwl> out;
  out.reserve(net.depth());
  (void)extract_impl(net.inner(), true, &out);
  return out;
}

std::size_t width_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return n.width(); }, net);
}
std::size_t depth_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return n.depth(); }, net);
}
std::size_t param_count_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return n.param_count(); }, net);
}

}  // namespace spline2relu
