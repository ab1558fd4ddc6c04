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


#include "spline2relu/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "spline2relu/approx.hpp"
#include "spline2relu/combinators.hpp"
#include "spline2relu/compiler.hpp"
#include "spline2relu/errors.hpp"
#include "spline2relu/io.hpp"
#include "spline2relu/report.hpp"
#include "spline2relu/riesz.hpp"

namespace spline2relu {
namespace {

constexpr double kExactTol = 1e-9;

// sum_{k=1}^{terms} ratio^k H^{(k)}(x), evaluated pointwise.
double hat_series(double x, double ratio, int terms) {
  double h = x, scale = 1.0, acc = 0.0;
  for (int k = 1; k <= terms; ++k) {
    h = h <= 0.5 ? 2.0 * h : 2.0 - 2.0 * h;
    scale *= ratio;
    acc += scale * h;
  }
  return acc;
}

std::vector<double> geometric(double ratio, int m) {
  std::vector<double> a(m);
  double s = 1.0;
  for (double& v : a) v = (s *= ratio);
  return a;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ArgumentError("cannot write " + cfg.out.string());
  f << text;
}

void write_svg(const std::filesystem::path& path, const std::string& svg) {
  std::ofstream f(path);
  if (!f) throw ArgumentError("cannot write " + path.string());
  f << svg;
}

std::string kv(const char* key, double v) {
  return std::string(key) + "=" + format_double(v) + "\n";
}

int cmd_compile(const RunConfig& cfg, std::ostream& out) {
  const Cpwl t = load_spline(cfg.input);
  const CompiledSpecial c = compile_spline(t, cfg.width);
  const double dev = sup_diff(extract_cpwl(c.net), t);
  if (!cfg.out.empty()) save_network(cfg.out, AnyNetwork(c.net));
  out << format_compile_report(c.report, dev);
  return c.report.within_budget() && dev <= kExactTol ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const AnyNetwork net = load_network(cfg.input);
  const Cpwl t = load_spline(cfg.reference);
  const double dev = sup_diff(extract_cpwl(net), t);
  out << "width=" << width_of(net) << "\ndepth=" << depth_of(net)
      << "\nparams=" << param_count_of(net) << '\n'
      << kv("max_deviation", dev);
  return dev <= cfg.tolerance ? 0 : 1;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const AnyNetwork net = load_network(cfg.input);
  std::vector<double> xs = cfg.points;
  if (xs.empty()) {
    for (std::size_t i = 0; i < cfg.grid_n; ++i) {
      xs.push_back(i + 1 == cfg.grid_n ? 1.0
                                       : static_cast<double>(i) / (cfg.grid_n - 1));
    }
  }
  std::vector<double> ys(xs.size());
  forward_batch(net, xs, ys);
  std::string text;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    text += format_double(xs[i]) + " " + format_double(ys[i]) + "\n";
  }
  emit(cfg, out, text);
  return 0;
}

int cmd_rates(const RunConfig& cfg, std::ostream& out) {
  TargetFunction f;
  NetworkBuilder builder;
  std::vector<int> ms = cfg.ms;
  switch (cfg.family) {
    case RateFamily::kTakagi:
    case RateFamily::kSquare: {
      const double ratio = cfg.family == RateFamily::kTakagi ? 0.5 : 0.25;
      if (ms.empty()) {
        for (int m = 1; m <= 12; ++m) ms.push_back(m);
      }
      const int terms = ms.back() + 20;
      f.eval = [ratio, terms](double x) { return hat_series(x, ratio, terms); };
      builder = [ratio](int m) { return AnyNetwork(takagi_network(geometric(ratio, m))); };
      break;
    }
    case RateFamily::kLip: {
      const double alpha = cfg.alpha;
      if (ms.empty()) ms = {9, 17, 33, 65, 129, 257};
      f.eval = [alpha](double x) { return std::pow(std::fabs(x - 0.5), alpha); };
      // |x - 1/2|^alpha has Lip-alpha seminorm 2^(1 - alpha).
      f.lip = LipBound{alpha, std::pow(2.0, 1.0 - alpha)};
      const std::size_t width = cfg.width;
      const std::size_t grid = cfg.grid_n;
      builder = [f, alpha, width, grid](int m) {
        return AnyNetwork(lip_alpha_approximant(f, alpha, m, width, grid).net);
      };
      break;
    }
  }
  const std::vector<ExperimentRecord> rows =
      rate_experiment(f, builder, ms, cfg.grid_n, cfg.threads, cfg.timing);
  emit(cfg, out, records_to_csv(rows));
  if (!cfg.out.empty()) {
    out << "rows=" << rows.size() << '\n'
        << kv("ar_seminorm", empirical_ar_seminorm(rows, cfg.ar_exponent));
  }
  if (!cfg.svg.empty()) {
    PlotSeries vs_m{"error vs m", {}, {}};
    PlotSeries vs_mlogm{"error vs m ln m", {}, {}};
    for (const ExperimentRecord& r : rows) {
      if (!r.error.empty()) continue;
      vs_m.x.push_back(r.m);
      vs_m.y.push_back(r.sup_error);
      vs_mlogm.x.push_back(r.m * std::log(static_cast<double>(r.m)));
      vs_mlogm.y.push_back(r.sup_error);
    }
    const PlotSeries series[] = {vs_m, vs_mlogm};
    write_svg(cfg.svg, loglog_svg(series, "approximation rate", "m", "sup error"));
  }
  for (const ExperimentRecord& r : rows) {
    if (!r.error.empty()) return 1;
  }
  return 0;
}

int cmd_riesz(const RunConfig& cfg, std::ostream& out) {
  const FrameBounds fb = frame_bounds(cfg.frame_k);
  const double gaps[] = {
      operator_gap(AtomKind::kCosine, cfg.gap_k, GapKind::kTstarT),
      operator_gap(AtomKind::kSine, cfg.gap_k, GapKind::kTstarT),
      operator_gap(AtomKind::kCosine, cfg.gap_k, GapKind::kTTstar),
      operator_gap(AtomKind::kSine, cfg.gap_k, GapKind::kTTstar)};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  const double c = std::pow(std::acos(-1.0), 4) / 192.0;
  for (std::size_t s = 0; s < cfg.lemsum_samples; ++s) {
    std::vector<double> u(cfg.frame_k);
    double norm2 = 0.0;
    for (double& v : u) {
      v = unit(rng);
      norm2 += v * v;
    }
    worst = std::max(worst, lemsum_lhs(u) / (c * norm2));
  }
  std::ostringstream os;
  os << "quantity,K,value\n"
     << "lambda_min," << fb.K << ',' << format_double(fb.lambda_min) << '\n'
     << "lambda_max," << fb.K << ',' << format_double(fb.lambda_max) << '\n'
     << "gap_cos_TstarT," << cfg.gap_k << ',' << format_double(gaps[0]) << '\n'
     << "gap_sin_TstarT," << cfg.gap_k << ',' << format_double(gaps[1]) << '\n'
     << "gap_cos_TTstar," << cfg.gap_k << ',' << format_double(gaps[2]) << '\n'
     << "gap_sin_TTstar," << cfg.gap_k << ',' << format_double(gaps[3]) << '\n'
     << "lemsum_worst_ratio," << cfg.frame_k << ',' << format_double(worst) << '\n'
     << "odd_sum_tail," << kOddSumCap << ',' << format_double(odd_sum_tail()) << '\n';
  emit(cfg, out, os.str());
  const bool ok = fb.lambda_min >= 1.0 / 6.0 - 1e-6 && fb.lambda_max <= 0.5 + 1e-6 &&
                  gaps[0] <= 0.5 + 1e-6 && gaps[1] <= 0.5 + 1e-6 &&
                  gaps[2] <= 0.5145 + 1e-6 && gaps[3] <= 0.5145 + 1e-6 && worst <= 1.0;
  return ok ? 0 : 1;
}

int cmd_takagi(const RunConfig& cfg, std::ostream& out) {
  if (cfg.order < 1) throw ArgumentError("--order must be >= 1");
  const double ratio = cfg.square ? 0.25 : 0.5;
  const SpecialNetwork net = takagi_network(geometric(ratio, cfg.order));
  if (!cfg.out.empty()) save_network(cfg.out, AnyNetwork(net));
  TargetFunction f;
  const int terms = cfg.order + 20;
  f.eval = [ratio, terms](double x) { return hat_series(x, ratio, terms); };
  const double err = measure_sigma(f, AnyNetwork(net), cfg.grid_n);
  const double bound = cfg.square ? std::pow(4.0, -cfg.order) / 3.0
                                  : std::ldexp(1.0, -cfg.order);
  out << "width=" << net.width() << "\ndepth=" << net.depth()
      << "\nparams=" << net.param_count() << '\n'
      << kv("max_error", err) << kv("bound", bound);
  return err <= bound ? 0 : 1;
}

FourierTerm parse_term(const std::string& s) {
  FourierTerm t;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d:%lf:%lf%c", &t.index, &t.a, &t.b, &tail) != 3) {
    throw ArgumentError("Fourier term must look like j:a:b, got '" + s + "'");
  }
  return t;
}

int cmd_fourier(const RunConfig& cfg, std::ostream& out) {
  std::vector<FourierTerm> terms;
  for (const std::string& s : cfg.terms) terms.push_back(parse_term(s));
  const CompiledSpecial c = compile_fourier_sum(terms, cfg.width);
  std::vector<Cpwl> parts;
  std::vector<double> coeffs;
  for (const FourierTerm& t : terms) {
    parts.push_back(fourier_basis(AtomKind::kCosine, t.index));
    coeffs.push_back(t.a);
    parts.push_back(fourier_basis(AtomKind::kSine, t.index));
    coeffs.push_back(t.b);
  }
  std::vector<const Cpwl*> ptrs;
  for (const Cpwl& p : parts) ptrs.push_back(&p);
  const Cpwl target = linear_combination(ptrs, coeffs, 0.0);
  const double dev = sup_diff(extract_cpwl(c.net), target);
  if (!cfg.out.empty()) save_network(cfg.out, AnyNetwork(c.net));
  out << format_compile_report(c.report, dev);
  return c.report.within_budget() && dev <= kExactTol ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.grid_n < 2) throw ArgumentError("--grid must be >= 2");
    switch (cfg.command) {
      case Command::kCompile: return cmd_compile(cfg, out);
      case Command::kVerify: return cmd_verify(cfg, out);
      case Command::kEval: return cmd_eval(cfg, out);
      case Command::kRates: return cmd_rates(cfg, out);
      case Command::kRiesz: return cmd_riesz(cfg, out);
      case Command::kTakagi: return cmd_takagi(cfg, out);
      case Command::kFourier: return cmd_fourier(cfg, out);
    }
    throw ArgumentError("unknown command");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace spline2relu
