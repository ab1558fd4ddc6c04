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

// Fully connected univariate ReLU networks and special networks with a
// ReLU-free source channel (first row) and collation channel (last row).

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "spline2relu/cpwl.hpp"
#include "spline2relu/kernels.hpp"

namespace spline2relu {

/// y = M x + b with M stored row-major.
struct AffineLayer {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  [[nodiscard]] static AffineLayer zeros(std::size_t rows, std::size_t cols);

  [[nodiscard]] double& at(std::size_t r, std::size_t c) {
    return weights[r * cols + c];
  }
  [[nodiscard]] double at(std::size_t r, std::size_t c) const {
    return weights[r * cols + c];
  }
};

/// A width-W depth-L network A^(L) o ReLU o ... o ReLU o A^(0) with
/// A^(0): W x 1, A^(l): W x W for 1 <= l < L, and A^(L): 1 x W.
class ReluNetwork {
 public:
  /// Throws StructureError on shape or finiteness violations.
  explicit ReluNetwork(std::vector<AffineLayer> layers);

  [[nodiscard]] std::size_t width() const { return layers_.front().rows; }
  /// Number of hidden layers L.
  [[nodiscard]] std::size_t depth() const { return layers_.size() - 1; }
  [[nodiscard]] std::span<const AffineLayer> layers() const { return layers_; }
  [[nodiscard]] std::size_t param_count() const;

 private:
  std::vector<AffineLayer> layers_;
};

/// A ReluNetwork whose first and last hidden channels are ReLU-free and
/// obey the source/collation structure. Width at least 4.
class SpecialNetwork {
 public:
  /// Throws StructureError when the matrices do not have the special shape.
  explicit SpecialNetwork(ReluNetwork net);

  [[nodiscard]] const ReluNetwork& inner() const { return net_; }
  [[nodiscard]] std::size_t width() const { return net_.width(); }
  [[nodiscard]] std::size_t depth() const { return net_.depth(); }
  [[nodiscard]] std::span<const AffineLayer> layers() const {
    return net_.layers();
  }
  [[nodiscard]] std::size_t param_count() const { return net_.param_count(); }

 private:
  ReluNetwork net_;
};

using AnyNetwork = std::variant<ReluNetwork, SpecialNetwork>;

/// W(W+1)L - (W-1)^2 + 2. Throws ArgumentError unless W >= 1 and L >= 1.
[[nodiscard]] std::size_t param_count(std::size_t width, std::size_t depth);

[[nodiscard]] double forward(const ReluNetwork& net, double x);
[[nodiscard]] double forward(const SpecialNetwork& net, double x);
[[nodiscard]] double forward(const AnyNetwork& net, double x);

/// Evaluates many inputs at once with the given kernel table (the runtime
/// selected one by default). out.size() must equal xs.size().
void forward_batch(const ReluNetwork& net, std::span<const double> xs,
                   std::span<double> out,
                   const kernels::KernelTable& k = kernels::active_kernels());
void forward_batch(const SpecialNetwork& net, std::span<const double> xs,
                   std::span<double> out,
                   const kernels::KernelTable& k = kernels::active_kernels());
void forward_batch(const AnyNetwork& net, std::span<const double> xs,
                   std::span<double> out,
                   const kernels::KernelTable& k = kernels::active_kernels());

/// The exact CPwL function computed on [0,1], obtained by pushing CPwL
/// values through every layer.
[[nodiscard]] Cpwl extract_cpwl(const ReluNetwork& net);
[[nodiscard]] Cpwl extract_cpwl(const SpecialNetwork& net);
[[nodiscard]] Cpwl extract_cpwl(const AnyNetwork& net);

/// Collation-channel value after each hidden layer 1..L (index 0 holds
/// layer 1).
[[nodiscard]] std::vector<Cpwl> collation_values(const SpecialNetwork& net);

[[nodiscard]] std::size_t width_of(const AnyNetwork& net);
[[nodiscard]] std::size_t depth_of(const AnyNetwork& net);
[[nodiscard]] std::size_t param_count_of(const AnyNetwork& net);

}  // namespace spline2relu
