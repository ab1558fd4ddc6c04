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

#include "spline2relu/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define SPLINE2RELU_HAVE_AVX2 1
#include <immintrin.h>

#include <cmath>
#include <limits>
#endif

namespace spline2relu::kernels {

#ifdef SPLINE2RELU_HAVE_AVX2
namespace {

constexpr std::size_t kLanes = 4;

__attribute__((target("avx2,fma"))) void affine_batch_avx2(
    const double* weights, const double* bias, std::size_t rows,
    std::size_t cols, const std::uint8_t* relu_rows, const double* in,
    double* out, std::size_t batch) {
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t vec_end = batch - batch % kLanes;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* w = weights + i * cols;
    double* o = out + i * batch;
    const bool relu = relu_rows[i] != 0;
    const __m256d b = _mm256_set1_pd(bias[i]);
    for (std::size_t p = 0; p < vec_end; p += kLanes) {
      __m256d acc = b;
      for (std::size_t j = 0; j < cols; ++j) {
        acc = _mm256_fmadd_pd(_mm256_set1_pd(w[j]),
                              _mm256_loadu_pd(in + j * batch + p), acc);
      }
      if (relu) acc = _mm256_max_pd(acc, zero);
      _mm256_storeu_pd(o + p, acc);
    }
    for (std::size_t p = vec_end; p < batch; ++p) {
      double acc = bias[i];
      for (std::size_t j = 0; j < cols; ++j) {
        acc = std::fma(w[j], in[j * batch + p], acc);
      }
      if (relu) acc = acc > 0.0 ? acc : 0.0;
      o[p] = acc;
    }
  }
}

__attribute__((target("avx2,fma"))) void axpy_avx2(double a, const double* x,
                                                   double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  const std::size_t vec_end = n - n % kLanes;
  for (std::size_t i = 0; i < vec_end; i += kLanes) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (std::size_t i = vec_end; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

__attribute__((target("avx2,fma"))) double max_abs_diff_avx2(const double* x,
                                                             const double* y,
                                                             std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  __m256d nan = _mm256_setzero_pd();
  const std::size_t vec_end = n - n % kLanes;
  for (std::size_t i = 0; i < vec_end; i += kLanes) {
    const __m256d d = _mm256_andnot_pd(
        sign, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    nan = _mm256_or_pd(nan, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    m = _mm256_max_pd(d, m);
  }
  if (_mm256_movemask_pd(nan) != 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, m);
  double r = 0.0;
  for (double v : lanes) r = v > r ? v : r;
  for (std::size_t i = vec_end; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    if (std::isnan(d)) return d;
    if (d > r) r = d;
  }
  return r;
}

const KernelTable kAvx2Table{Isa::kAvx2, affine_batch_avx2, axpy_avx2,
                             max_abs_diff_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2Table; }
}  // namespace detail

#else

namespace detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace detail

#endif

}  // namespace spline2relu::kernels
