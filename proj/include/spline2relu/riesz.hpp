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


// Numerics for the CPwL trigonometric-like system C_k, S_k.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spline2relu/compiler.hpp"
#include "spline2relu/cpwl.hpp"

namespace spline2relu {

/// mu^2 = 96 / pi^4.
[[nodiscard]] double riesz_mu_squared();

/// C_k or S_k as an exact CPwL.
[[nodiscard]] Cpwl basis_fn(AtomKind kind, int k);

/// Exact integral of f g over [0,1].
[[nodiscard]] double inner_product(const Cpwl& f, const Cpwl& g);

/// 2K x 2K Gram matrix, ordering C_1..C_K, S_1..S_K.
struct GramTruncation {
  int K = 0;
  std::vector<double> entries;  // row-major

  [[nodiscard]] std::size_t size() const { return 2 * static_cast<std::size_t>(K); }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const {
    return entries[i * size() + j];
  }
  /// c^T G c.
  [[nodiscard]] double quadratic_form(std::span<const double> c) const;
};

/// Gram matrix of sqrt(3) C_k, sqrt(3) S_k when `normalized`, of C_k, S_k
/// otherwise.
[[nodiscard]] GramTruncation gram_truncation(int K, bool normalized = true);

struct FrameBounds {
  int K = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of the unnormalized Gram matrix.
[[nodiscard]] FrameBounds frame_bounds(int K);

inline constexpr int kOddSumCap = 500;

/// sum_{k != l} u_k u_l sum_{m,n <= M} (2m+1)^-2 (2n+1)^-2 [(2m+1)k = (2n+1)l]
/// with u indexed from k = 1. Throws ContractError on negative entries.
[[nodiscard]] double lemsum_lhs(std::span<const double> u, int M = kOddSumCap);

/// sum_{m > M} (2m+1)^-2, the dropped tail of the odd-multiplier sums.
[[nodiscard]] double odd_sum_tail(int M = kOddSumCap);

enum class GapKind {
  kTstarT,  // || T*T - I || with the column index k <= K
  kTTstar,  // || T T* - I || on the section j <= K
};

/// Spectral norm of the truncated T*T - I or T T* - I for the cosine or
/// sine operator.
[[nodiscard]] double operator_gap(AtomKind kind, int K, GapKind gap,
                                  int M = kOddSumCap);

/// Eigenvalues (ascending) of a symmetric n x n row-major matrix.
[[nodiscard]] std::vector<double> symmetric_eigenvalues(std::span<const double> a,
                                                        std::size_t n);

}  // namespace spline2relu
