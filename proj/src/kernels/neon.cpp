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

#if defined(__aarch64__)
#define SPLINE2RELU_HAVE_NEON 1
#include <arm_neon.h>

#include <cmath>
#include <limits>
#endif

namespace spline2relu::kernels {

#ifdef SPLINE2RELU_HAVE_NEON
namespace {

constexpr std::size_t kLanes = 2;

void affine_batch_neon(const double* weights, const double* bias,
                       std::size_t rows, std::size_t cols,
                       const std::uint8_t* relu_rows, const double* in,
                       double* out, std::size_t batch) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const std::size_t vec_end = batch - batch % kLanes;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* w = weights + i * cols;
    double* o = out + i * batch;
    const bool relu = relu_rows[i] != 0;
    for (std::size_t p = 0; p < vec_end; p += kLanes) {
      float64x2_t acc = vdupq_n_f64(bias[i]);
      for (std::size_t j = 0; j < cols; ++j) {
        acc = vfmaq_f64(acc, vdupq_n_f64(w[j]), vld1q_f64(in + j * batch + p));
      }
      // vmaxq maps NaN to NaN; mirror the scalar "acc > 0 ? acc : 0".
      if (relu) acc = vbslq_f64(vcgtq_f64(acc, zero), acc, zero);
      vst1q_f64(o + p, acc);
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

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  const std::size_t vec_end = n - n % kLanes;
  for (std::size_t i = 0; i < vec_end; i += kLanes) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  }
  for (std::size_t i = vec_end; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

double max_abs_diff_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  uint64x2_t nan = vdupq_n_u64(0);
  const std::size_t vec_end = n - n % kLanes;
  for (std::size_t i = 0; i < vec_end; i += kLanes) {
    const float64x2_t d = vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    nan = vorrq_u64(nan, vreinterpretq_u64_u32(vmvnq_u32(
                               vreinterpretq_u32_u64(vceqq_f64(d, d)))));
    m = vmaxnmq_f64(m, d);
  }
  if ((vgetq_lane_u64(nan, 0) | vgetq_lane_u64(nan, 1)) != 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double r = vmaxvq_f64(m);
  for (std::size_t i = vec_end; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    if (std::isnan(d)) return d;
    if (d > r) r = d;
  }
  return r;
}

const KernelTable kNeonTable{Isa::kNeon, affine_batch_neon, axpy_neon,
                             max_abs_diff_neon};

}  // namespace

namespace detail {
const KernelTable* neon_table() { return &kNeonTable; }
}  // namespace detail

#else

namespace detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace detail

#endif

}  // namespace spline2relu::kernels
