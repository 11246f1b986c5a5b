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

// Experiment configuration and its flat `key = value` file format.

#ifndef DPMETA_CONFIG_H_
#define DPMETA_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpmeta/geometry.h"
#include "dpmeta/learners.h"
#include "dpmeta/losses.h"
#include "dpmeta/privacy.h"
#include "dpmeta/task_env.h"

namespace dpmeta {

struct ExperimentConfig {
  EnvSpec env;
  // Meta-initialization phi_1; the domain center when unset.
  std::optional<ParamVector> phi1;
  std::int64_t t_train = 400;
  std::int64_t t_eval = 500;
  PrivacyParams privacy;
  // Times each task's data is used; the privacy ledger composes this many
  // copies of the per-task budget.
  int visits_per_task = 1;
  // Explicit regularity constants. Unset values are derived analytically
  // from the loss family (growth_alpha is mandatory for logistic tasks).
  std::optional<double> lipschitz_g;
  std::optional<double> smoothness_beta;
  std::optional<double> growth_alpha;
  GammaVariant gamma_variant = GammaVariant::kSqrtM;
  std::uint64_t master_seed = 0;
  bool baseline_no_meta = true;
  bool baseline_nonprivate_meta = true;
  std::int64_t eval_mc_samples = 2000;
  std::string output_path;

  ParamVector Phi1() const { return phi1.value_or(env.domain.center()); }

  // All violated constraints, empty when the config is usable.
  std::vector<std::string> Violations() const;
  // Throws ConfigError carrying Violations() if there are any.
  void Validate() const;
};

// Regularity constants in force for `config`: explicit overrides win, then
// the analytic values of the loss family.
RegularityProfile ResolveRegularity(const ExperimentConfig& config);

// Parses the key-value format. Throws ConfigError listing every unknown key,
// malformed value and violated constraint.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig ParseConfigString(std::string_view text);

// Throws IoError if the file cannot be read.
ExperimentConfig LoadConfigFile(const std::string& path);

enum class SweepAxis { kSimilarity, kSamples, kTaskCount, kEpsilon };

std::string_view SweepAxisName(SweepAxis axis);
// Accepts V, m, T_train, epsilon. Throws ConfigError otherwise.
SweepAxis ParseSweepAxis(std::string_view name);

// `config` with the axis parameter replaced by `value`.
ExperimentConfig ApplyAxis(const ExperimentConfig& config, SweepAxis axis,
                           double value);

}  // namespace dpmeta

#endif  // DPMETA_CONFIG_H_
