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

#include "spline2relu/combinators.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

constexpr double kRangeTol = 1e-9;

std::vector<double> weights_or_ones(std::span<const double> weights,
                                    std::size_t n) {
  if (weights.empty()) return std::vector<double>(n, 1.0);
  if (weights.size() != n) {
    throw ArgumentError("weight count does not match network count");
  }
  return {weights.begin(), weights.end()};
}

std::size_t common_width(std::span<const ReluNetwork> nets) {
  if (nets.empty()) throw ArgumentError("need at least one network");
  const std::size_t w = nets.front().width();
  for (const ReluNetwork& n : nets) {
    if (n.width() != w) throw StructureError("network widths differ");
  }
  return w;
}

void check_unit_range(const ReluNetwork& t) {
  const Cpwl f = extract_cpwl(t);
  if (f.min_value() < -kRangeTol || f.max_value() > 1.0 + kRangeTol) {
    throw DomainError("iterated network must map [0,1] into [0,1]");
  }
}

// Copies a block of `src` into `dst` at row/column offsets.
void put_block(AffineLayer& dst, const AffineLayer& src, std::size_t row0,
               std::size_t col0, double scale = 1.0) {
  for (std::size_t r = 0; r < src.rows; ++r) {
    for (std::size_t c = 0; c < src.cols; ++c) {
      dst.at(row0 + r, col0 + c) += scale * src.at(r, c);
    }
  }
}

void put_bias(AffineLayer& dst, const AffineLayer& src, std::size_t row0,
              double scale = 1.0) {
  for (std::size_t r = 0; r < src.rows; ++r) dst.bias[row0 + r] += scale * src.bias[r];
}

// Rows [row0, row0 + first.rows) receive first * (out . block + b_out),
// i.e. the input layer of one network fed by the output of another that
// lives in columns [col0, col0 + out.cols).
void put_fused(AffineLayer& dst, const AffineLayer& out, const AffineLayer& first,
               std::size_t row0, std::size_t col0) {
  for (std::size_t r = 0; r < first.rows; ++r) {
    const double f = first.weights[r];
    for (std::size_t c = 0; c < out.cols; ++c) {
      dst.at(row0 + r, col0 + c) += f * out.weights[c];
    }
    dst.bias[row0 + r] += f * out.bias[0] + first.bias[r];
  }
}

// Output row `out` (1 x w) scaled by a, placed in row `row` at column col0.
void put_output(AffineLayer& dst, const AffineLayer& out, std::size_t row,
                std::size_t col0, double a) {
  for (std::size_t c = 0; c < out.cols; ++c) dst.at(row, col0 + c) += a * out.weights[c];
  dst.bias[row] += a * out.bias[0];
}

AffineLayer special_hidden(std::size_t width) {
  AffineLayer a = AffineLayer::zeros(width, width);
  a.at(0, 0) = 1.0;
  a.at(width - 1, width - 1) = 1.0;
  return a;
}

AffineLayer special_input(std::size_t width) {
  AffineLayer a = AffineLayer::zeros(width, 1);
  a.weights[0] = 1.0;
  return a;
}

AffineLayer special_output(std::size_t width) {
  AffineLayer a = AffineLayer::zeros(1, width);
  a.at(0, width - 1) = 1.0;
  return a;
}

}  // namespace

ReluNetwork hat_network() {
  AffineLayer in = AffineLayer::zeros(2, 1);
  in.weights = {1.0, 1.0};
  in.bias = {0.0, -0.5};
  AffineLayer out = AffineLayer::zeros(1, 2);
  out.weights = {2.0, -4.0};
  return ReluNetwork({in, out});
}

ReluNetwork identity_network(std::size_t width, std::size_t depth) {
  if (width < 1 || depth < 1) throw ArgumentError("identity net needs W, L >= 1");
  std::vector<AffineLayer> layers;
  AffineLayer in = AffineLayer::zeros(width, 1);
  in.weights[0] = 1.0;
  layers.push_back(in);
  for (std::size_t l = 1; l < depth; ++l) {
    AffineLayer h = AffineLayer::zeros(width, width);
    h.at(0, 0) = 1.0;
    layers.push_back(h);
  }
  AffineLayer out = AffineLayer::zeros(1, width);
  out.weights[0] = 1.0;
  layers.push_back(out);
  return ReluNetwork(std::move(layers));
}

SpecialNetwork zero_special(std::size_t width, std::size_t depth) {
  if (width < 4 || depth < 1) {
    throw ArgumentError("special network needs W >= 4 and L >= 1");
  }
  std::vector<AffineLayer> layers{special_input(width)};
  for (std::size_t l = 1; l < depth; ++l) layers.push_back(special_hidden(width));
  layers.push_back(special_output(width));
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

ReluNetwork widen(const ReluNetwork& net, std::size_t width) {
  if (width < net.width()) throw ArgumentError("cannot narrow a network");
  std::vector<AffineLayer> layers;
  const auto src = net.layers();
  for (std::size_t l = 0; l < src.size(); ++l) {
    const std::size_t rows = l + 1 == src.size() ? 1 : width;
    const std::size_t cols = l == 0 ? 1 : width;
    AffineLayer a = AffineLayer::zeros(rows, cols);
    put_block(a, src[l], 0, 0);
    put_bias(a, src[l], 0);
    layers.push_back(std::move(a));
  }
  return ReluNetwork(std::move(layers));
}

SpecialNetwork concat_sum(const SpecialNetwork& s1, const SpecialNetwork& s2) {
  const std::size_t w = s1.width();
  if (s2.width() != w) throw StructureError("concat_sum: widths differ");
  const auto a = s1.layers();
  const auto b = s2.layers();
  std::vector<AffineLayer> layers(a.begin(), a.end() - 1);
  AffineLayer mid = special_hidden(w);
  mid.at(w - 1, w - 1) = 0.0;
  // Computational rows: first layer of s2 fed from the source channel.
  for (std::size_t r = 1; r + 1 < w; ++r) {
    mid.at(r, 0) = b[0].weights[r];
    mid.bias[r] = b[0].bias[r];
  }
  // Collation row: the output of s1.
  put_output(mid, a.back(), w - 1, 0, 1.0);
  layers.push_back(std::move(mid));
  layers.insert(layers.end(), b.begin() + 1, b.end());
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

SpecialNetwork embed_deeper(const SpecialNetwork& s, std::size_t depth) {
  if (depth <= s.depth()) {
    throw ArgumentError("embed_deeper: target depth " + std::to_string(depth) +
                        " must exceed current depth " +
                        std::to_string(s.depth()));
  }
  return concat_sum(s, zero_special(s.width(), depth - s.depth()));
}

ReluNetwork compose_nets(const ReluNetwork& n1, const ReluNetwork& n2) {
  const std::size_t w = n1.width();
  if (n2.width() != w) throw StructureError("compose_nets: widths differ");
  const auto a = n1.layers();
  const auto b = n2.layers();
  std::vector<AffineLayer> layers(a.begin(), a.end() - 1);
  AffineLayer mid = AffineLayer::zeros(w, w);
  put_fused(mid, a.back(), b[0], 0, 0);
  layers.push_back(std::move(mid));
  layers.insert(layers.end(), b.begin() + 1, b.end());
  return ReluNetwork(std::move(layers));
}

SpecialNetwork stack_sum(std::span<const ReluNetwork> nets,
                         std::span<const double> weights) {
  const std::size_t w = common_width(nets);
  const std::vector<double> a = weights_or_ones(weights, nets.size());
  const std::size_t big = w + 2;
  const std::size_t cc = big - 1;
  std::vector<AffineLayer> layers;

  AffineLayer in = special_input(big);
  put_block(in, nets[0].layers()[0], 1, 0);
  put_bias(in, nets[0].layers()[0], 1);
  layers.push_back(std::move(in));

  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto src = nets[i].layers();
    for (std::size_t l = 1; l + 1 < src.size(); ++l) {
      AffineLayer h = special_hidden(big);
      put_block(h, src[l], 1, 1);
      put_bias(h, src[l], 1);
      layers.push_back(std::move(h));
    }
    if (i + 1 < nets.size()) {
      AffineLayer h = special_hidden(big);
      const AffineLayer& next_in = nets[i + 1].layers()[0];
      put_block(h, next_in, 1, 0);
      put_bias(h, next_in, 1);
      put_output(h, src.back(), cc, 1, a[i]);
      layers.push_back(std::move(h));
    } else {
      AffineLayer out = special_output(big);
      put_output(out, src.back(), 0, 1, a[i]);
      layers.push_back(std::move(out));
    }
  }
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

SpecialNetwork stack_relu_sum(std::span<const ReluNetwork> nets,
                              std::span<const double> weights) {
  const std::size_t w = common_width(nets);
  const std::vector<double> a = weights_or_ones(weights, nets.size());
  const std::size_t big = w + 2;
  const std::size_t cc = big - 1;
  std::vector<AffineLayer> layers;

  AffineLayer in = special_input(big);
  put_block(in, nets[0].layers()[0], 1, 0);
  put_bias(in, nets[0].layers()[0], 1);
  layers.push_back(std::move(in));

  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto src = nets[i].layers();
    for (std::size_t l = 1; l + 1 < src.size(); ++l) {
      AffineLayer h = special_hidden(big);
      put_block(h, src[l], 1, 1);
      put_bias(h, src[l], 1);
      layers.push_back(std::move(h));
    }
    // Extra layer: channel 1 holds ReLU(Y_i).
    AffineLayer r = special_hidden(big);
    put_output(r, src.back(), 1, 1, 1.0);
    layers.push_back(std::move(r));
    if (i + 1 < nets.size()) {
      AffineLayer h = special_hidden(big);
      const AffineLayer& next_in = nets[i + 1].layers()[0];
      put_block(h, next_in, 1, 0);
      put_bias(h, next_in, 1);
      h.at(cc, 1) = a[i];
      layers.push_back(std::move(h));
    } else {
      AffineLayer out = special_output(big);
      out.at(0, 1) = a[i];
      layers.push_back(std::move(out));
    }
  }
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

SpecialNetwork iterate_sum(const ReluNetwork& t, std::span<const double> a) {
  if (a.empty()) throw ArgumentError("iterate_sum needs at least one weight");
  check_unit_range(t);
  const std::size_t w = t.width();
  const std::size_t big = w + 2;
  const std::size_t cc = big - 1;
  const auto src = t.layers();
  std::vector<AffineLayer> layers;

  AffineLayer in = special_input(big);
  put_block(in, src[0], 1, 0);
  put_bias(in, src[0], 1);
  layers.push_back(std::move(in));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t l = 1; l + 1 < src.size(); ++l) {
      AffineLayer h = special_hidden(big);
      put_block(h, src[l], 1, 1);
      put_bias(h, src[l], 1);
      layers.push_back(std::move(h));
    }
    if (i + 1 < a.size()) {
      AffineLayer h = special_hidden(big);
      put_fused(h, src.back(), src[0], 1, 1);
      put_output(h, src.back(), cc, 1, a[i]);
      layers.push_back(std::move(h));
    } else {
      AffineLayer out = special_output(big);
      put_output(out, src.back(), 0, 1, a[i]);
      layers.push_back(std::move(out));
    }
  }
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

SpecialNetwork iterate_apply_sum(const ReluNetwork& t, const ReluNetwork& g,
                                 std::span<const double> a) {
  if (a.empty()) throw ArgumentError("iterate_apply_sum needs a weight");
  if (t.depth() != g.depth()) {
    throw StructureError("iterate_apply_sum: depths differ (" +
                         std::to_string(t.depth()) + " vs " +
                         std::to_string(g.depth()) + ")");
  }
  check_unit_range(t);
  const std::size_t m = a.size();
  const std::size_t ell = t.depth();
  const std::size_t wt = t.width();
  const std::size_t wg = g.width();
  const std::size_t big = wt + wg + 2;
  const std::size_t t0 = 1;
  const std::size_t g0 = 1 + wt;
  const std::size_t cc = big - 1;
  const auto tl = t.layers();
  const auto gl = g.layers();
  const std::size_t total = ell * (m + 1);

  std::vector<AffineLayer> layers;
  AffineLayer in = special_input(big);
  put_block(in, tl[0], t0, 0);
  put_bias(in, tl[0], t0);
  layers.push_back(std::move(in));

  // Map producing hidden layer h (2 <= h <= total).
  for (std::size_t h = 2; h <= total; ++h) {
    AffineLayer map = special_hidden(big);
    if (h <= m * ell) {
      const std::size_t step = (h - 1) % ell;
      if (step == 0) {
        put_fused(map, tl.back(), tl[0], t0, t0);
      } else {
        put_block(map, tl[step], t0, t0);
        put_bias(map, tl[step], t0);
      }
    }
    if (h > ell) {
      const std::size_t copy = (h - 1) / ell;  // g copy fed by T^{copy}
      const std::size_t step = (h - 1) % ell;
      if (step == 0) {
        put_fused(map, tl.back(), gl[0], g0, t0);
        if (copy >= 2) put_output(map, gl.back(), cc, g0, a[copy - 2]);
      } else {
        put_block(map, gl[step], g0, g0);
        put_bias(map, gl[step], g0);
      }
    }
    layers.push_back(std::move(map));
  }
  AffineLayer out = special_output(big);
  put_output(out, gl.back(), 0, g0, a[m - 1]);
  layers.push_back(std::move(out));
  return SpecialNetwork(ReluNetwork(std::move(layers)));
}

ReluNetwork parallel_sum(std::span<const ReluNetwork> nets,
                         std::span<const double> weights) {
  if (nets.empty()) throw ArgumentError("parallel_sum needs a network");
  const std::vector<double> a = weights_or_ones(weights, nets.size());
  const std::size_t depth = nets.front().depth();
  std::size_t width = 0;
  for (const ReluNetwork& n : nets) {
    if (n.depth() != depth) throw StructureError("parallel_sum: depths differ");
    width += n.width();
  }
  std::vector<AffineLayer> layers;
  for (std::size_t l = 0; l <= depth; ++l) {
    const std::size_t rows = l == depth ? 1 : width;
    const std::size_t cols = l == 0 ? 1 : width;
    AffineLayer map = AffineLayer::zeros(rows, cols);
    std::size_t off = 0;
    for (std::size_t i = 0; i < nets.size(); ++i) {
      const AffineLayer& src = nets[i].layers()[l];
      if (l == depth) {
        put_output(map, src, 0, off, a[i]);
      } else {
        put_block(map, src, off, l == 0 ? 0 : off);
        put_bias(map, src, off);
      }
      off += nets[i].width();
    }
    layers.push_back(std::move(map));
  }
  return ReluNetwork(std::move(layers));
}

ReluNetwork special_to_standard(const SpecialNetwork& s) {
  const std::size_t w = s.width();
  const std::vector<Cpwl> coll = collation_values(s);
  std::vector<double> offset(coll.size() + 1, 0.0);  // offset[h], h = 1..L
  for (std::size_t h = 1; h <= coll.size(); ++h) {
    offset[h] = std::max(0.0, -coll[h - 1].min_value());
  }
  const auto src = s.layers();
  std::vector<AffineLayer> layers(src.begin(), src.end());
  // The collation row of map h-1 produces hidden layer h and reads hidden
  // layer h-1 with weight 1, so it adds the change in offset.
  for (std::size_t h = 1; h < layers.size(); ++h) {
    layers[h - 1].bias[w - 1] += offset[h] - offset[h - 1];
  }
  layers.back().bias[0] -= offset.back();
  return ReluNetwork(std::move(layers));
}

}  // namespace spline2relu
