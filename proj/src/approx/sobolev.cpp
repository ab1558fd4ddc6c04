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
#include <memory>

#include "spline2relu/approx.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {
namespace {

// Midpoint sum of fn over [0, x] with kQuadraturePanels panels.
template <class Fn>
double midpoint(const Fn& fn, double x) {
  if (x <= 0.0) return 0.0;
  const double h = x / kQuadraturePanels;
  double acc = 0.0;
  for (int i = 0; i < kQuadraturePanels; ++i) acc += fn((i + 0.5) * h);
  return acc * h;
}

}  // namespace

double integrate_derivative(const std::function<double(double)>& fprime,
                            double x, double f_at_zero) {
  if (x < 0.0 || x > 1.0) throw DomainError("x outside [0,1]");
  return f_at_zero + midpoint(fprime, x);
}

SobolevSplit sobolev_split(std::function<double(double)> fprime, double p,
                           double t, double f_at_zero) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw ArgumentError("sobolev_split needs 1 < p < infinity");
  }
  if (!(t > 0.0)) throw ArgumentError("sobolev_split needs t > 0");
  auto fp = std::make_shared<const std::function<double(double)>>(std::move(fprime));

  SobolevSplit out;
  out.lp_norm = std::pow(
      midpoint([&](double x) { return std::pow(std::fabs((*fp)(x)), p); }, 1.0),
      1.0 / p);
  const double lambda = std::pow(t, -1.0 / p) * out.lp_norm;
  out.lambda = lambda;

  auto f0p = [fp, lambda](double x) { return std::clamp((*fp)(x), -lambda, lambda); };
  auto f1p = [fp, lambda](double x) {
    const double v = (*fp)(x);
    return v - std::clamp(v, -lambda, lambda);
  };
  out.l1_f1prime = midpoint([&](double x) { return std::fabs(f1p(x)); }, 1.0);
  const double h = 1.0 / kQuadraturePanels;
  for (int i = 0; i < kQuadraturePanels; ++i) {
    out.linf_f0prime = std::max(out.linf_f0prime, std::fabs(f0p((i + 0.5) * h)));
  }
  const double scale = out.lp_norm * std::pow(t, 1.0 - 1.0 / p);
  out.realized_constant =
      scale > 0.0 ? (out.l1_f1prime + t * out.linf_f0prime) / scale : 0.0;

  out.f0.eval = [f0p, f_at_zero](double x) { return f_at_zero + midpoint(f0p, x); };
  out.f0.name = "f0";
  out.f1.eval = [f1p](double x) { return midpoint(f1p, x); };
  out.f1.name = "f1";
  return out;
}

}  // namespace spline2relu
