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

// Constructive compilers from CPwL descriptions to explicit networks.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spline2relu/cpwl.hpp"
#include "spline2relu/network.hpp"

namespace spline2relu {

struct CompileReport {
  std::size_t width = 0;
  std::size_t depth = 0;
  std::size_t params = 0;
  /// Complexity of the target (breakpoints, or k + m for self-similar).
  std::size_t target_breakpoints = 0;
  /// Parameter bound of the construction.
  double budget_bound = 0.0;
  /// False when the bound's hypotheses do not hold for this input.
  bool budget_applies = true;
  /// Short description of the construction used.
  std::string regime;
  /// Free-form remarks, empty when there is nothing to flag.
  std::string note;

  [[nodiscard]] bool within_budget() const {
    return !budget_applies || static_cast<double>(params) <= budget_bound;
  }
};

template <class Net>
struct Compiled {
  Net net;
  CompileReport report;
};

using CompiledSpecial = Compiled<SpecialNetwork>;
using CompiledStandard = Compiled<ReluNetwork>;

// --- free-knot splines ------------------------------------------------------

/// q = floor((W-2)/6) for W >= 8 and 2 for 4 <= W <= 7.
[[nodiscard]] std::size_t hats_per_principal(std::size_t width);

/// Breakpoints handled by one two-layer block: q (W - 2).
[[nodiscard]] std::size_t block_capacity(std::size_t width);

/// Depth used by compile_spline for n interior breakpoints.
[[nodiscard]] std::size_t spline_depth(std::size_t width, std::size_t n);

/// The parameter bound for n breakpoints at width W (61n, 19n, 25n or
/// W^2 + 4W + 1 depending on the regime).
[[nodiscard]] double spline_budget(std::size_t width, std::size_t n);

/// Special network computing T exactly. Widths 4..7 use the direct
/// (x - xi)_+ accumulation with 2(W-2) breakpoints per two layers, widths
/// >= 8 use the hat-basis blocks with q(W-2) breakpoints per two layers.
[[nodiscard]] CompiledSpecial compile_spline(const Cpwl& t, std::size_t width);

/// One-hidden-layer network for T with at most W - 1 interior breakpoints:
/// a x + b + sum_j m_j (x - x_j)_+ with x carried as ReLU(x).
[[nodiscard]] CompiledStandard compile_one_layer(const Cpwl& t,
                                                 std::size_t width);

/// Coefficients c_k of the residual in the hat basis phi_k of one block.
/// `nodes` holds X_0..X_{N+1}, `values` the residual at X_1..X_N.
[[nodiscard]] std::vector<double> hat_coefficients(
    std::span<const double> nodes, std::span<const double> values,
    std::size_t q);

/// Splits the (0-based) coefficient indices into W - 2 classes of constant
/// sign whose principal breakpoints are at least 3 apart. Zero coefficients
/// are left out. Class order: (sign, j mod 3, i) with sign + before -.
[[nodiscard]] std::vector<std::vector<std::size_t>> partition_indices(
    std::span<const double> coeffs, std::size_t q, std::size_t width);

// --- compositions -----------------------------------------------------------

/// Affine renormalization of a chain S_k o ... o S_1 (chain[0] = S_1) so that
/// every inner factor maps [0,1] onto [0,1] and the composition is unchanged.
/// Throws StructureError on a factor that is constant on its input range.
[[nodiscard]] std::vector<Cpwl> representative_chain(
    std::span<const Cpwl> chain);

/// The composition chain[k-1] o ... o chain[0] as a plain network.
[[nodiscard]] CompiledStandard compile_composition(std::span<const Cpwl> chain,
                                                   std::size_t width);

struct CompositionTerm {
  double weight = 1.0;
  std::vector<Cpwl> chain;  // innermost factor first
};

/// sum_i a_i (S_{i,l_i} o ... o S_{i,1}); requires W >= 10.
[[nodiscard]] CompiledSpecial compile_sum_of_compositions(
    std::span<const CompositionTerm> terms, std::size_t width);

// --- self-similar functions -------------------------------------------------

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Recorded constants of the self-similar bound C1 (k + m) + C2 W^2.
inline constexpr double kSelfSimilarC1 = 896.0;
inline constexpr double kSelfSimilarC2 = 45.0;

/// sum_i S((x - a_i) / (b_i - a_i)) over the given intervals, as a CPwL.
[[nodiscard]] Cpwl self_similar_function(const Cpwl& pattern,
                                         std::span<const Interval> intervals);

/// Network for the self-similar function with the given pattern
/// (S(0) = S(1) = 0) replicated on ordered intervals with disjoint
/// interiors. Requires W >= 8.
[[nodiscard]] CompiledSpecial compile_self_similar(
    const Cpwl& pattern, std::span<const Interval> intervals,
    std::size_t width);

// --- Fourier-like sums and the Takagi class ---------------------------------

enum class AtomKind { kCosine, kSine };

/// C(x) = 1 - 4x on [0,1/2], 4x - 3 on [1/2,1] and
/// S(x) = 4x, 2 - 4x, 4x - 4 on [0,1/4], [1/4,3/4], [3/4,1], repeated
/// j times: C_j(x) = C(jx - floor(jx)), S_j likewise. Built directly.
[[nodiscard]] Cpwl fourier_basis(AtomKind kind, int j);

/// Width-2 network for C_j (depth ceil(log2 j) + 1) or S_j (depth
/// ceil(log2 j) + 2), built from composed hat networks.
[[nodiscard]] ReluNetwork fourier_atom(AtomKind kind, int j);

struct FourierTerm {
  int index = 1;
  double a = 0.0;  // cosine coefficient
  double b = 0.0;  // sine coefficient
};

/// Depth 2 ceil(k / floor((W-2)/4)) (ceil(log2 lambda) + 2), lambda the
/// largest index.
[[nodiscard]] std::size_t fourier_depth(std::size_t terms, int max_index,
                                        std::size_t width);

/// sum_j a_j C_j + b_j S_j for distinct indices; requires W >= 6.
[[nodiscard]] CompiledSpecial compile_fourier_sum(
    std::span<const FourierTerm> terms, std::size_t width);

/// sum_k coeffs[k-1] H^{(k)} with width 4 and depth m.
[[nodiscard]] SpecialNetwork takagi_network(std::span<const double> coeffs);

}  // namespace spline2relu
