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


#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "spline2relu/cli.hpp"

using spline2relu::Command;
using spline2relu::RateFamily;
using spline2relu::RunConfig;

namespace {

void common_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--width", cfg.width, "network width W")->check(CLI::Range(2, 1 << 16));
  sub->add_option("--grid", cfg.grid_n, "uniform grid size")->check(CLI::Range(2, 1 << 26));
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile piecewise linear functions into ReLU networks and check them"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* compile = app.add_subcommand("compile", "compile a spline file into a network");
  common_flags(compile, cfg);
  compile->add_option("input", cfg.input, "spline file")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "max deviation of a network from a spline");
  common_flags(verify, cfg);
  verify->add_option("network", cfg.input, "network file")->required()->check(CLI::ExistingFile);
  verify->add_option("spline", cfg.reference, "spline file")->required()->check(CLI::ExistingFile);
  verify->add_option("--tol", cfg.tolerance, "accepted deviation");

  auto* eval = app.add_subcommand("eval", "evaluate a network");
  common_flags(eval, cfg);
  eval->add_option("network", cfg.input, "network file")->required()->check(CLI::ExistingFile);
  eval->add_option("-x,--x", cfg.points, "points in [0,1] (uniform grid when omitted)");

  auto* rates = app.add_subcommand("rates", "approximation-rate experiment as CSV");
  common_flags(rates, cfg);
  const std::map<std::string, RateFamily> families{
      {"takagi", RateFamily::kTakagi}, {"square", RateFamily::kSquare}, {"lip", RateFamily::kLip}};
  rates->add_option("--family", cfg.family, "takagi, square or lip")
      ->transform(CLI::CheckedTransformer(families, CLI::ignore_case));
  rates->add_option("--m", cfg.ms, "ascending list of m");
  rates->add_option("--alpha", cfg.alpha, "Lipschitz exponent for --family lip");
  rates->add_option("--r", cfg.ar_exponent, "exponent of the reported A^r seminorm");
  rates->add_option("--svg", cfg.svg, "log-log plot of the errors");
  rates->add_option("--threads", cfg.threads, "worker cap (0: SPLINE2RELU_THREADS or all)");
  rates->add_flag("--timing", cfg.timing, "fill wall_ms (makes the CSV non-reproducible)");

  auto* riesz = app.add_subcommand("riesz", "frame bounds, operator gaps and LemSum ratios");
  common_flags(riesz, cfg);
  riesz->add_option("--frame-k", cfg.frame_k, "truncation for the frame bounds")
      ->check(CLI::PositiveNumber);
  riesz->add_option("--gap-k", cfg.gap_k, "truncation for the operator gaps")
      ->check(CLI::PositiveNumber);
  riesz->add_option("--samples", cfg.lemsum_samples, "random sequences for LemSum");

  auto* takagi = app.add_subcommand("takagi", "Takagi-class network and its error");
  common_flags(takagi, cfg);
  takagi->add_option("--order", cfg.order, "number of terms m")->check(CLI::Range(1, 40));
  takagi->add_flag("--square", cfg.square, "use 4^-k coefficients, i.e. x(1-x)");

  auto* fourier = app.add_subcommand("fourier", "network for sum a_j C_j + b_j S_j");
  common_flags(fourier, cfg);
  fourier->add_option("terms", cfg.terms, "terms as j:a:b")->required();

  const std::map<CLI::App*, Command> commands{
      {compile, Command::kCompile}, {verify, Command::kVerify}, {eval, Command::kEval},
      {rates, Command::kRates},     {riesz, Command::kRiesz},   {takagi, Command::kTakagi},
      {fourier, Command::kFourier}};
  CLI11_PARSE(app, argc, argv);
  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) cfg.command = cmd;
  }
  return spline2relu::run(cfg, std::cout, std::cerr);
}
