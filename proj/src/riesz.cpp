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


#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "spline2relu/errors.hpp"
#include "spline2relu/riesz.hpp"

namespace spline2relu {
namespace {

double odd_sign(AtomKind kind, int m) {
  return kind == AtomKind::kSine && (m % 2 == 1) ? -1.0 : 1.0;
}

double inv_odd_sq(int m) {
  const double o = 2.0 * m + 1.0;
  return 1.0 / (o * o);
}

// Entry <C~_k, c_j> / mu (or the sine analogue), zero unless j = (2m+1) k
// with m <= M.
double t_entry(AtomKind kind, int j, int k, int M) {
  if (j % k != 0) return 0.0;
  const int q = j / k;
  if (q % 2 == 0) return 0.0;
  const int m = (q - 1) / 2;
  return m <= M ? odd_sign(kind, m) * inv_odd_sq(m) : 0.0;
}

double gap_of(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::fabs(ev.minCoeff() - 1.0), std::fabs(ev.maxCoeff() - 1.0));
}

}  // namespace

double riesz_mu_squared() {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 96.0 / (pi2 * pi2);
}

Cpwl basis_fn(AtomKind kind, int k) { return fourier_basis(kind, k); }

double inner_product(const Cpwl& f, const Cpwl& g) {
  const auto fx = f.breakpoints();
  const auto gx = g.breakpoints();
  std::vector<double> xs;
  xs.reserve(fx.size() + gx.size());
  std::merge(fx.begin(), fx.end(), gx.begin(), gx.end(), std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const std::vector<double> fv = eval_sorted(f, xs);
  const std::vector<double> gv = eval_sorted(g, xs);
  double acc = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double fa = fv[i - 1], fb = fv[i], ga = gv[i - 1], gb = gv[i];
    acc += (xs[i] - xs[i - 1]) / 6.0 *
           (2.0 * fa * ga + fa * gb + fb * ga + 2.0 * fb * gb);
  }
  return acc;
}

double GramTruncation::quadratic_form(std::span<const double> c) const {
  const std::size_t n = size();
  if (c.size() != n) throw ArgumentError("coefficient vector has wrong length");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += at(i, j) * c[j];
    acc += c[i] * row;
  }
  return acc;
}

GramTruncation gram_truncation(int K, bool normalized) {
  if (K < 1) throw ArgumentError("K must be >= 1");
  std::vector<Cpwl> fns;
  fns.reserve(2 * K);
  const double s = normalized ? std::sqrt(3.0) : 1.0;
  for (AtomKind kind : {AtomKind::kCosine, AtomKind::kSine}) {
    for (int k = 1; k <= K; ++k) fns.push_back(scale_shift(basis_fn(kind, k), s));
  }
  GramTruncation g;
  g.K = K;
  const std::size_t n = fns.size();
  g.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = inner_product(fns[i], fns[j]);
      g.entries[i * n + j] = v;
      g.entries[j * n + i] = v;
    }
  }
  return g;
}

std::vector<double> symmetric_eigenvalues(std::span<const double> a, std::size_t n) {
  if (a.size() != n * n) throw ArgumentError("matrix has wrong size");
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ContractError("eigenvalue solver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

FrameBounds frame_bounds(int K) {
  const GramTruncation g = gram_truncation(K, false);
  const std::vector<double> ev = symmetric_eigenvalues(g.entries, g.size());
  return {K, ev.front(), ev.back()};
}

double lemsum_lhs(std::span<const double> u, int M) {
  if (M < 0) throw ArgumentError("M must be >= 0");
  for (double v : u) {
    if (v < 0.0) throw ContractError("lemsum_lhs needs a nonnegative sequence");
  }
  const int n = static_cast<int>(u.size());
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    if (u[k - 1] == 0.0) continue;
    for (int l = 1; l <= n; ++l) {
      if (l == k || u[l - 1] == 0.0) continue;
      double inner = 0.0;
      for (int m = 0; m <= M; ++m) {
        const long a = static_cast<long>(2 * m + 1) * k;
        if (a % l != 0) continue;
        const long q = a / l;
        if (q % 2 == 0) continue;
        const long nn = (q - 1) / 2;
        if (nn > M) continue;
        inner += inv_odd_sq(m) * inv_odd_sq(static_cast<int>(nn));
      }
      acc += u[k - 1] * u[l - 1] * inner;
    }
  }
  return acc;
}

double odd_sum_tail(int M) {
  const double pi = std::numbers::pi;
  double head = 0.0;
  for (int m = M; m >= 0; --m) head += inv_odd_sq(m);
  return pi * pi / 8.0 - head;
}

double operator_gap(AtomKind kind, int K, GapKind gap, int M) {
  if (K < 1) throw ArgumentError("K must be >= 1");
  if (M < 0) throw ArgumentError("M must be >= 0");
  const double mu2 = riesz_mu_squared();
  Eigen::MatrixXd a(K, K);
  if (gap == GapKind::kTstarT) {
    // (T*T)_{kl} = mu^2 sum over j of T_jk T_jl, all j.
    for (int k = 1; k <= K; ++k) {
      for (int l = k; l <= K; ++l) {
        double acc = 0.0;
        for (int m = 0; m <= M; ++m) {
          const long j = static_cast<long>(2 * m + 1) * k;
          if (j % l != 0) continue;
          const long q = j / l;
          if (q % 2 == 0 || (q - 1) / 2 > M) continue;
          const int n = static_cast<int>((q - 1) / 2);
          acc += odd_sign(kind, m) * inv_odd_sq(m) * odd_sign(kind, n) * inv_odd_sq(n);
        }
        a(k - 1, l - 1) = a(l - 1, k - 1) = mu2 * acc;
      }
    }
  } else {
    Eigen::MatrixXd t(K, K);
    for (int j = 1; j <= K; ++j) {
      for (int k = 1; k <= K; ++k) t(j - 1, k - 1) = t_entry(kind, j, k, M);
    }
    a = mu2 * (t * t.transpose());
  }
  return gap_of(a);
}

}  // namespace spline2relu
