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

// Dense numeric kernels with a scalar reference and SIMD variants.
//
// Every variant accumulates with fused multiply-add in the same order as the
// scalar reference, so results are bit-identical across instruction sets.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace spline2relu::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

/// out[i*batch + p] = bias[i] + sum_j weights[i*cols + j] * in[j*batch + p],
/// followed by max(., 0) for every row with relu_rows[i] != 0.
/// Activations are channel-major: each channel holds `batch` contiguous lanes.
using AffineBatchFn = void (*)(const double* weights, const double* bias,
                               std::size_t rows, std::size_t cols,
                               const std::uint8_t* relu_rows, const double* in,
                               double* out, std::size_t batch);

/// y[i] = fma(a, x[i], y[i]).
using AxpyFn = void (*)(double a, const double* x, double* y, std::size_t n);

/// max_i |x[i] - y[i]|, 0 for n == 0. NaN inputs propagate as NaN.
using MaxAbsDiffFn = double (*)(const double* x, const double* y,
                                std::size_t n);

struct KernelTable {
  Isa isa;
  AffineBatchFn affine_batch;
  AxpyFn axpy;
  MaxAbsDiffFn max_abs_diff;
};

/// Whether the running CPU can execute the given variant.
[[nodiscard]] bool isa_available(Isa isa);

/// Kernel table for a specific variant. Throws ArgumentError when the
/// variant is not compiled in or not supported by the CPU.
[[nodiscard]] const KernelTable& kernels_for(Isa isa);

/// Kernel table chosen once per process: the widest supported variant,
/// unless SPLINE2RELU_SIMD=scalar|avx2|neon overrides it.
[[nodiscard]] const KernelTable& active_kernels();

[[nodiscard]] std::string_view isa_name(Isa isa);

/// All variants usable on this machine, scalar first.
[[nodiscard]] std::vector<Isa> available_isas();

namespace detail {
extern const KernelTable kScalarTable;
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace spline2relu::kernels
