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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "spline2relu/approx.hpp"
#include "spline2relu/errors.hpp"

namespace spline2relu {

double measure_sigma(const TargetFunction& f, const AnyNetwork& net,
                     std::size_t grid_n) {
  if (grid_n < 2) throw ArgumentError("grid_n must be >= 2");
  const Cpwl g = extract_cpwl(net);
  const auto bp = g.breakpoints();
  std::vector<double> xs(bp.begin(), bp.end());
  xs.reserve(xs.size() + grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    xs.push_back(i + 1 == grid_n ? 1.0
                                 : static_cast<double>(i) / static_cast<double>(grid_n - 1));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> ys(xs.size());
  forward_batch(net, xs, ys);
  double err = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = std::fabs(f(xs[i]) - ys[i]);
    if (std::isnan(d)) return d;
    err = std::max(err, d);
  }
  return err;
}

unsigned default_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPLINE2RELU_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<ExperimentRecord> rate_experiment(const TargetFunction& f,
                                              const NetworkBuilder& builder,
                                              std::span<const int> ms,
                                              std::size_t grid_n, unsigned threads,
                                              bool timing) {
  if (ms.empty()) throw ArgumentError("rate_experiment needs at least one m");
  for (std::size_t i = 1; i < ms.size(); ++i) {
    if (ms[i] <= ms[i - 1]) throw ArgumentError("m values must be ascending");
  }
  std::vector<ExperimentRecord> rows(ms.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ms.size(); i = next++) {
      ExperimentRecord& r = rows[i];
      r.m = ms[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        const AnyNetwork net = builder(ms[i]);
        r.params = param_count_of(net);
        r.sup_error = measure_sigma(f, net, grid_n);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      if (timing) {
        r.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      }
    }
  };
  const unsigned n = std::min<unsigned>(threads == 0 ? default_threads() : threads,
                                        static_cast<unsigned>(ms.size()));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

double empirical_ar_seminorm(std::span<const ExperimentRecord> rows, double r) {
  double best = 0.0;
  for (const ExperimentRecord& row : rows) {
    if (!row.error.empty()) continue;
    best = std::max(best, std::pow(row.m + 1.0, r) * row.sup_error);
  }
  return best;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ArgumentError("loglog_slope needs two equal-length series of >= 2 points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) {
      throw DomainError("loglog_slope needs positive data");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw DomainError("loglog_slope needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

std::string records_to_csv(std::span<const ExperimentRecord> rows) {
  std::string out = "m,params,sup_error,wall_ms\n";
  char buf[128];
  for (const ExperimentRecord& r : rows) {
    if (r.error.empty()) {
      std::snprintf(buf, sizeof buf, "%d,%zu,%.17g,%.3f\n", r.m, r.params,
                    r.sup_error, r.wall_ms);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%zu,nan,%.3f\n", r.m, r.params, r.wall_ms);
    }
    out += buf;
  }
  return out;
}

}  // namespace spline2relu
