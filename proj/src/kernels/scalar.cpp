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

#include <cmath>

#include "spline2relu/kernels.hpp"

namespace spline2relu::kernels {
namespace {

void affine_batch_scalar(const double* weights, const double* bias,
                         std::size_t rows, std::size_t cols,
                         const std::uint8_t* relu_rows, const double* in,
                         double* out, std::size_t batch) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* w = weights + i * cols;
    double* o = out + i * batch;
    for (std::size_t p = 0; p < batch; ++p) o[p] = bias[i];
    for (std::size_t j = 0; j < cols; ++j) {
      const double* x = in + j * batch;
      for (std::size_t p = 0; p < batch; ++p) o[p] = std::fma(w[j], x[p], o[p]);
    }
    if (relu_rows[i] != 0) {
      for (std::size_t p = 0; p < batch; ++p) o[p] = o[p] > 0.0 ? o[p] : 0.0;
    }
  }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    if (std::isnan(d)) return d;
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{Isa::kScalar, affine_batch_scalar, axpy_scalar,
                               max_abs_diff_scalar};
}  // namespace detail

}  // namespace spline2relu::kernels
