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

// Experiment orchestration: calibration, the meta-train / meta-test pipeline
// with its baselines, and parameter sweeps.

#ifndef DPMETA_HARNESS_H_
#define DPMETA_HARNESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpmeta/config.h"
#include "dpmeta/geometry.h"
#include "dpmeta/learners.h"
#include "dpmeta/losses.h"
#include "dpmeta/privacy.h"

namespace dpmeta {

inline constexpr std::string_view kArmTrain = "train";
inline constexpr std::string_view kArmMeta = "meta";
inline constexpr std::string_view kArmNoMeta = "no_meta";
inline constexpr std::string_view kArmNonprivateMeta = "nonprivate_meta";

struct CalibrationRecord {
  std::int64_t samples_per_task = 0;
  int dim = 0;
  RegularityProfile regularity;
  NoisySgdPlan plan;
  double gamma = 0.0;
  GammaVariant gamma_variant = GammaVariant::kSqrtM;
  // OGD step size for both the training-time inference path and transfer.
  double eta = 0.0;
  double smoothness_bound = 0.0;
  bool smoothness_certified = false;
  DpBudget per_task;
  int visits_per_task = 1;
  // Composition of visits_per_task copies of per_task.
  DpBudget per_task_total;
  int group_size = 1;
  GroupGuarantee group;
};

// Derives every calibrated constant from the config without training.
// Throws ConfigError on an invalid config.
CalibrationRecord Calibrate(const ExperimentConfig& config);

// Human-readable calibration block (also the `.calibration` sidecar).
std::string FormatCalibration(const CalibrationRecord& record);

struct RiskSummary {
  double mean = 0.0;
  double std_dev = 0.0;
  double std_error = 0.0;
};

RiskSummary Summarize(std::span<const double> values);

struct ArmResult {
  std::string arm;
  // Per evaluation task, ordered by task index.
  std::vector<double> excess_risks;
  RiskSummary summary;
};

struct MetricsReport {
  std::string run_id = "run";
  std::optional<double> axis_value;
  std::uint64_t seed = 0;
  CalibrationRecord calibration;
  // Per training task, ordered by task index.
  std::vector<double> train_surrogate_losses;
  std::vector<double> train_excess_risks;
  double mean_surrogate_loss = 0.0;
  double v_bar_sq_realized = 0.0;
  std::vector<ArmResult> arms;
  ParamVector phi_hat;
  std::vector<std::string> warnings;
  double wall_clock_s = 0.0;

  // nullptr when the arm was not run.
  const ArmResult* Arm(std::string_view name) const;
};

// Meta-trains on t_train tasks, evaluates transfer on t_eval fresh tasks for
// the meta arm and every enabled baseline, and writes the CSV (plus the
// `.calibration` sidecar) when config.output_path is set. Deterministic given
// master_seed apart from wall_clock_s.
MetricsReport RunExperiment(const ExperimentConfig& config);

// Seed used for the i-th value of a sweep.
std::uint64_t SweepSeed(std::uint64_t master_seed, std::size_t value_index);

// One RunExperiment per value (ascending) with per-value derived seeds; writes
// one combined CSV when base.output_path is set.
std::vector<MetricsReport> Sweep(const ExperimentConfig& base, SweepAxis axis,
                                 std::span<const double> values);

}  // namespace dpmeta

#endif  // DPMETA_HARNESS_H_
