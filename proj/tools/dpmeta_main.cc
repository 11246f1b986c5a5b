// Copyright 2026 The dpmeta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dpmeta: calibrate, run and sweep differentially private meta-learning
// experiments on synthetic convex tasks.
//
//   dpmeta calibrate --config exp.cfg
//   dpmeta run       --config exp.cfg --out results.csv [--seed N]
//   dpmeta sweep     --config exp.cfg --axis V --values 0,0.25,0.5
//
// Seed precedence: --seed, then DPMETA_SEED, then master_seed in the config.
// Exit codes: 0 ok, 2 invalid config, 3 I/O failure, 4 internal error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpmeta/config.h"
#include "dpmeta/errors.h"
#include "dpmeta/harness.h"
#include "dpmeta/report_csv.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::string axis;
  std::vector<double> values;
};

dpmeta::ExperimentConfig LoadWithOverrides(const Options& opts) {
  dpmeta::ExperimentConfig config = dpmeta::LoadConfigFile(opts.config_path);
  if (const char* env = std::getenv("DPMETA_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      config.master_seed = seed;
    } catch (const std::exception&) {
      throw dpmeta::ConfigError(
          {"DPMETA_SEED: '" + std::string(env) + "' is not a seed"});
    }
  }
  if (opts.seed) config.master_seed = *opts.seed;
  if (!opts.out_path.empty()) config.output_path = opts.out_path;
  return config;
}

void PrintSummary(const dpmeta::MetricsReport& report) {
  std::cout << report.run_id;
  if (report.axis_value) {
    std::cout << " (axis value " << dpmeta::FormatReal(*report.axis_value)
              << ")";
  }
  std::cout << ": n=" << report.calibration.plan.steps
            << " sigma_sq=" << report.calibration.plan.noise_variance
            << " gamma=" << report.calibration.gamma
            << " eta=" << report.calibration.eta
            << " v_bar_sq=" << report.v_bar_sq_realized << "\n";
  for (const dpmeta::ArmResult& arm : report.arms) {
    std::cout << "  " << arm.arm << ": mean excess risk "
              << arm.summary.mean << " (se " << arm.summary.std_error
              << ", " << arm.excess_risks.size() << " tasks)\n";
  }
  for (const std::string& warning : report.warnings) {
    std::cout << "  warning: " << warning << "\n";
  }
}

int Calibrate(const Options& opts) {
  const dpmeta::ExperimentConfig config = LoadWithOverrides(opts);
  std::cout << dpmeta::FormatCalibration(dpmeta::Calibrate(config));
  return 0;
}

int Run(const Options& opts) {
  dpmeta::ExperimentConfig config = LoadWithOverrides(opts);
  if (config.output_path.empty()) {
    throw dpmeta::ConfigError({"no output path: pass --out or set output_path"});
  }
  PrintSummary(dpmeta::RunExperiment(config));
  std::cout << "wrote " << config.output_path << "\n";
  return 0;
}

int Sweep(const Options& opts) {
  dpmeta::ExperimentConfig config = LoadWithOverrides(opts);
  if (config.output_path.empty()) {
    throw dpmeta::ConfigError({"no output path: pass --out or set output_path"});
  }
  const dpmeta::SweepAxis axis = dpmeta::ParseSweepAxis(opts.axis);
  for (const dpmeta::MetricsReport& report :
       dpmeta::Sweep(config, axis, opts.values)) {
    PrintSummary(report);
  }
  std::cout << "wrote " << config.output_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private meta-learning experiments"};
  app.require_subcommand(1);
  Options opts;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "Experiment config file")
        ->required();
    sub->add_option("--seed", opts.seed, "Master seed override");
  };
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Print calibrated constants");
  add_common(calibrate);
  CLI::App* run = app.add_subcommand("run", "Meta-train and evaluate");
  add_common(run);
  run->add_option("--out", opts.out_path, "Output CSV path");
  CLI::App* sweep = app.add_subcommand("sweep", "Run one experiment per value");
  add_common(sweep);
  sweep->add_option("--out", opts.out_path, "Output CSV path");
  sweep->add_option("--axis", opts.axis, "V, m, T_train or epsilon")
      ->required();
  sweep->add_option("--values", opts.values, "Comma-separated values")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*calibrate) return Calibrate(opts);
    if (*run) return Run(opts);
    return Sweep(opts);
  } catch (const dpmeta::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const dpmeta::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
