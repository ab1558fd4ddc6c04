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

// Structural operations that assemble larger networks from smaller ones.
// Each result computes a known combination of the input functions on [0,1].

#pragma once

#include <cstddef>
#include <span>

#include "spline2relu/network.hpp"

namespace spline2relu {

/// ReLU([1;1]x + [0;-1/2]) followed by [2,-4]: the hat function.
[[nodiscard]] ReluNetwork hat_network();

/// Width W, depth L network computing x on [0,1] (x = ReLU(x) there).
[[nodiscard]] ReluNetwork identity_network(std::size_t width,
                                           std::size_t depth);

/// Width W (>= 4), depth L special network computing 0.
[[nodiscard]] SpecialNetwork zero_special(std::size_t width,
                                          std::size_t depth);

/// Appends zero rows and columns; the function is unchanged.
[[nodiscard]] ReluNetwork widen(const ReluNetwork& net, std::size_t width);

/// Sum of two special networks of equal width; depth adds up.
[[nodiscard]] SpecialNetwork concat_sum(const SpecialNetwork& s1,
                                        const SpecialNetwork& s2);

/// Same function at depth P > depth(s), padded with a zero summand.
[[nodiscard]] SpecialNetwork embed_deeper(const SpecialNetwork& s,
                                          std::size_t depth);

/// The composition n2(n1(x)) with a fused interface layer; equal widths.
[[nodiscard]] ReluNetwork compose_nets(const ReluNetwork& n1,
                                       const ReluNetwork& n2);

/// sum_i weights[i] * nets[i] in a special network of width W + 2 and
/// depth sum L_i. Empty weights mean all ones.
[[nodiscard]] SpecialNetwork stack_sum(std::span<const ReluNetwork> nets,
                                       std::span<const double> weights = {});

/// sum_i weights[i] * ReLU(nets[i]) with one extra layer per summand:
/// width W + 2 and depth k + sum L_i. Empty weights mean all ones.
[[nodiscard]] SpecialNetwork stack_relu_sum(
    std::span<const ReluNetwork> nets, std::span<const double> weights = {});

/// sum_{i=1}^m a_i T^{(i)}: width W + 2, depth L m. The function of T must
/// map [0,1] into [0,1] (DomainError otherwise).
[[nodiscard]] SpecialNetwork iterate_sum(const ReluNetwork& t,
                                         std::span<const double> a);

/// sum_{i=1}^m a_i g(T^{(i)}): width W_T + W_g + 2, depth l (m + 1), where
/// T and g share depth l (StructureError otherwise).
[[nodiscard]] SpecialNetwork iterate_apply_sum(const ReluNetwork& t,
                                               const ReluNetwork& g,
                                               std::span<const double> a);

/// Block-diagonal network computing sum_i weights[i] * nets[i]; all nets
/// share one depth. Width is the sum of widths.
[[nodiscard]] ReluNetwork parallel_sum(std::span<const ReluNetwork> nets,
                                       std::span<const double> weights = {});

/// A plain ReLU network computing the same function on [0,1]. The collation
/// channel is lifted by the exact offset max(0, -min) of its value at each
/// layer, and the output bias absorbs the final offset.
[[nodiscard]] ReluNetwork special_to_standard(const SpecialNetwork& s);

}  // namespace spline2relu
