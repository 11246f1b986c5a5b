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

#include "dpmeta/harness.h"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dpmeta/errors.h"
#include "dpmeta/evaluation.h"
#include "dpmeta/meta.h"
#include "dpmeta/report_csv.h"
#include "dpmeta/rng.h"
#include "dpmeta/task_env.h"

namespace dpmeta {
namespace {

// Logistic gaps are estimates; anything below this many standard errors
// under zero means the evaluation itself is broken.
constexpr double kMonteCarloSlack = 6.0;

void CheckGap(const RiskGap& gap, std::string_view arm, std::size_t index) {
  const double floor = -kMonteCarloSlack * gap.std_error - 1e-12;
  if (!std::isfinite(gap.gap) || gap.gap < floor) {
    std::ostringstream msg;
    msg << "arm " << arm << " task " << index
        << ": excess risk " << gap.gap << " below tolerance " << floor;
    throw InvariantViolation(msg.str());
  }
}

ArmResult EvaluateArm(std::string_view arm, std::span<const TaskInstance> tasks,
                      const ParamVector& init, const ParamDomain& dom,
                      const TransferEvalOptions& options) {
  ArmResult result;
  result.arm = std::string(arm);
  const std::vector<RiskGap> gaps =
      EvaluateTransferParallel(tasks, init, dom, options);
  result.excess_risks.reserve(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    CheckGap(gaps[i], arm, i);
    result.excess_risks.push_back(gaps[i].gap);
  }
  result.summary = Summarize(result.excess_risks);
  return result;
}

MetricsReport RunOne(const ExperimentConfig& config, std::string run_id,
                     std::optional<double> axis_value) {
  const auto start = std::chrono::steady_clock::now();
  MetricsReport report;
  report.run_id = std::move(run_id);
  report.axis_value = axis_value;
  report.seed = config.master_seed;
  report.calibration = Calibrate(config);
  const CalibrationRecord& cal = report.calibration;

  if (!cal.smoothness_certified) {
    std::ostringstream msg;
    msg << "smoothness beta = " << cal.regularity.smoothness_beta
        << " exceeds the certified bound " << cal.smoothness_bound;
    report.warnings.push_back(msg.str());
  }
  if (cal.group.vacuous) {
    report.warnings.push_back("group privacy delta >= 1: guarantee is vacuous");
  }
  if (cal.plan.steps == 1) {
    report.warnings.push_back(
        "noisy SGD budget is a single step: released parameters equal the "
        "meta-initialization and meta-training cannot move");
  }

  const ParamDomain& dom = config.env.domain;
  const std::int64_t mc_samples =
      config.env.family == LossFamily::kLogistic ? config.eval_mc_samples : 0;

  MetaTrainingOptions options;
  options.domain = dom;
  options.phi1 = config.Phi1();
  options.ogd = OgdConfig{cal.eta, 0};
  options.plan = cal.plan;
  options.seed = config.master_seed;
  options.mc_samples = mc_samples;

  const SyntheticTaskSource train_source(config.env, config.master_seed,
                                         StreamTag::kTrainTask,
                                         StreamTag::kTrainLosses);
  const MetaTrainingResult trained =
      RunMetaTraining(train_source, config.t_train, options);
  if (!dom.Contains(trained.phi_hat)) {
    throw InvariantViolation("meta-initialization left the domain");
  }
  report.phi_hat = trained.phi_hat;

  std::vector<ParamVector> theta_stars;
  theta_stars.reserve(trained.records.size());
  double surrogate_total = 0.0;
  for (const TaskRecord& record : trained.records) {
    report.train_surrogate_losses.push_back(record.surrogate_loss);
    report.train_excess_risks.push_back(
        record.excess_risk_hat.value_or(std::nan("")));
    surrogate_total += record.surrogate_loss;
    theta_stars.push_back(*record.theta_star);
  }
  report.mean_surrogate_loss =
      surrogate_total / static_cast<double>(trained.records.size());
  report.v_bar_sq_realized =
      EmpiricalTaskVariance(theta_stars, config.env.planted_center);

  const SyntheticTaskSource eval_source(config.env, config.master_seed,
                                        StreamTag::kEvalTask,
                                        StreamTag::kEvalLosses);
  const std::vector<TaskInstance> eval_tasks = DrawTasksParallel(
      eval_source, static_cast<std::size_t>(config.t_eval));
  const TransferEvalOptions eval_options{OgdConfig{cal.eta, 0}, mc_samples,
                                         config.master_seed};

  report.arms.push_back(
      EvaluateArm(kArmMeta, eval_tasks, trained.phi_hat, dom, eval_options));
  if (config.baseline_no_meta) {
    report.arms.push_back(EvaluateArm(kArmNoMeta, eval_tasks, config.Phi1(),
                                      dom, eval_options));
  }
  if (config.baseline_nonprivate_meta) {
    MetaTrainingOptions nonprivate = options;
    nonprivate.plan.noise_variance = 0.0;
    nonprivate.mc_samples = 0;
    const MetaTrainingResult baseline =
        RunMetaTraining(train_source, config.t_train, nonprivate);
    report.arms.push_back(EvaluateArm(kArmNonprivateMeta, eval_tasks,
                                      baseline.phi_hat, dom, eval_options));
  }

  report.wall_clock_s = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

}  // namespace

CalibrationRecord Calibrate(const ExperimentConfig& config) {
  config.Validate();
  CalibrationRecord record;
  record.samples_per_task = config.env.samples_per_task;
  record.dim = config.env.dim();
  record.regularity = ResolveRegularity(config);
  record.gamma_variant = config.gamma_variant;
  const RegularityProfile& reg = record.regularity;
  record.gamma =
      MetaGamma(reg.lipschitz_g, reg.growth_alpha, record.dim,
                record.samples_per_task, config.privacy, config.gamma_variant);
  record.plan = MakeNoisySgdPlan(record.samples_per_task, config.privacy,
                                 record.dim, reg.lipschitz_g, record.gamma);
  record.eta = TestTimeEta(config.env.similarity_v, reg.growth_alpha,
                           reg.lipschitz_g, record.samples_per_task);
  record.smoothness_bound =
      SmoothnessBound(reg, config.env.domain, record.samples_per_task,
                      config.privacy, record.plan.steps);
  record.smoothness_certified =
      CertifySmoothness(reg, config.env.domain, record.samples_per_task,
                        config.privacy, record.plan.steps);
  record.per_task = DpBudget{config.privacy.epsilon, config.privacy.delta};
  record.visits_per_task = config.visits_per_task;
  const std::vector<DpBudget> visits(
      static_cast<std::size_t>(config.visits_per_task), record.per_task);
  record.per_task_total = ComposeSequential(visits);
  record.group_size = config.privacy.group_size;
  record.group = GroupDp(config.privacy);
  return record;
}

std::string FormatCalibration(const CalibrationRecord& record) {
  std::ostringstream out;
  out << "m = " << record.samples_per_task << "\n"
      << "d = " << record.dim << "\n"
      << "G = " << FormatReal(record.regularity.lipschitz_g) << "\n"
      << "beta = " << FormatReal(record.regularity.smoothness_beta) << "\n"
      << "alpha = " << FormatReal(record.regularity.growth_alpha) << "\n"
      << "n = " << record.plan.steps << "\n"
      << "noisy_sgd_step_size = " << FormatReal(record.plan.step_size) << "\n"
      << "sigma_sq = " << FormatReal(record.plan.noise_variance) << "\n"
      << "clip_bound = " << FormatReal(record.plan.clip_bound) << "\n"
      << "gamma = " << FormatReal(record.gamma) << "\n"
      << "gamma_variant = " << GammaVariantName(record.gamma_variant) << "\n"
      << "eta = " << FormatReal(record.eta) << "\n"
      << "smoothness_bound = " << FormatReal(record.smoothness_bound) << "\n"
      << "smoothness_certified = "
      << (record.smoothness_certified ? "true" : "false") << "\n"
      << "epsilon_per_task = " << FormatReal(record.per_task.epsilon) << "\n"
      << "delta_per_task = " << FormatReal(record.per_task.delta) << "\n"
      << "visits_per_task = " << record.visits_per_task << "\n"
      << "epsilon_total = " << FormatReal(record.per_task_total.epsilon) << "\n"
      << "delta_total = " << FormatReal(record.per_task_total.delta) << "\n"
      << "group_size = " << record.group_size << "\n"
      << "epsilon_group = " << FormatReal(record.group.epsilon) << "\n"
      << "delta_group = " << FormatReal(record.group.delta) << "\n"
      << "group_vacuous = " << (record.group.vacuous ? "true" : "false")
      << "\n";
  return out.str();
}

RiskSummary Summarize(std::span<const double> values) {
  RiskSummary summary;
  if (values.empty()) return summary;
  double total = 0.0;
  for (double v : values) total += v;
  const double n = static_cast<double>(values.size());
  summary.mean = total / n;
  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - summary.mean) * (v - summary.mean);
    summary.std_dev = std::sqrt(squares / (n - 1.0));
    summary.std_error = summary.std_dev / std::sqrt(n);
  }
  return summary;
}

const ArmResult* MetricsReport::Arm(std::string_view name) const {
  for (const ArmResult& arm : arms) {
    if (arm.arm == name) return &arm;
  }
  return nullptr;
}

MetricsReport RunExperiment(const ExperimentConfig& config) {
  MetricsReport report = RunOne(config, "run", std::nullopt);
  if (!config.output_path.empty()) {
    WriteReportFiles(config.output_path, std::span(&report, 1));
  }
  return report;
}

std::uint64_t SweepSeed(std::uint64_t master_seed, std::size_t value_index) {
  return DeriveSeed(master_seed, value_index, StreamTag::kSweep);
}

std::vector<MetricsReport> Sweep(const ExperimentConfig& base, SweepAxis axis,
                                 std::span<const double> values) {
  if (values.empty()) throw ConfigError({"sweep needs at least one value"});
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i - 1] < values[i])) {
      throw ConfigError({"sweep values must be strictly ascending"});
    }
  }
  // Validate every point before spending time on any of them.
  std::vector<ExperimentConfig> configs;
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig config = ApplyAxis(base, axis, values[i]);
    config.master_seed = SweepSeed(base.master_seed, i);
    config.output_path.clear();
    for (const std::string& v : config.Violations()) {
      violations.push_back(std::string(SweepAxisName(axis)) + "=" +
                           FormatReal(values[i]) + ": " + v);
    }
    configs.push_back(std::move(config));
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));

  std::vector<MetricsReport> reports;
  reports.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    reports.push_back(RunOne(configs[i],
                             std::string(SweepAxisName(axis)) + "-" +
                                 std::to_string(i),
                             values[i]));
  }
  if (!base.output_path.empty()) WriteReportFiles(base.output_path, reports);
  return reports;
}

}  // namespace dpmeta
