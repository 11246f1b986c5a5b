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

// Meta-learner: follow-the-leader over the surrogate losses
// l_t(phi) = 0.5 ||theta_bar_t - phi||^2, which reduces to the running mean
// phi_{t+1} = (1 - 1/t) phi_t + theta_bar_t / t.
//
// Only the privatized task outputs theta_bar_t enter MetaState; theta_hat_t
// and theta*_t live in TaskRecord for reporting.

#ifndef DPMETA_META_H_
#define DPMETA_META_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpmeta/geometry.h"
#include "dpmeta/learners.h"
#include "dpmeta/privacy.h"
#include "dpmeta/task_env.h"

namespace dpmeta {

class MetaState {
 public:
  // State before any task has run, with phi_1 = phi1.
  static MetaState Initial(ParamVector phi1);

  // phi_{t+1} after t updates.
  const ParamVector& phi() const { return phi_; }
  std::int64_t task_count() const { return task_count_; }
  // sum_{s <= t} phi_s, the meta-initializations handed to tasks 1..t.
  const ParamVector& phi_sum() const { return phi_sum_; }
  // sum_{s <= t} theta_bar_s.
  const ParamVector& theta_bar_sum() const { return theta_bar_sum_; }

  // (1/t) sum_{s <= t} phi_s. Returns phi_1 before any update.
  ParamVector AveragedPhi() const;

 private:
  MetaState() = default;
  friend MetaState MetaStep(const MetaState&, const ParamVector&);

  ParamVector phi_;
  std::int64_t task_count_ = 0;
  ParamVector phi_sum_;
  ParamVector theta_bar_sum_;
};

// Returns the state after one update with theta_bar; `state` is unchanged.
// Throws std::invalid_argument on dimension mismatch.
MetaState MetaStep(const MetaState& state, const ParamVector& theta_bar);

// One logical update with the batch mean. Throws on an empty batch.
MetaState MetaStepBatched(const MetaState& state,
                          std::span<const ParamVector> theta_bars);

// 0.5 ||theta_bar - phi||^2.
double SurrogateLoss(const ParamVector& phi, const ParamVector& theta_bar);

struct TaskRecord {
  std::size_t task_index = 0;
  ParamVector phi;        // meta-initialization handed to the task
  ParamVector theta_bar;  // released to the meta-learner
  ParamVector theta_hat;  // kept by the task
  std::optional<ParamVector> theta_star;
  double surrogate_loss = 0.0;
  std::optional<double> excess_risk_hat;
  std::optional<double> excess_risk_bar;
};

struct MetaTrainingOptions {
  ParamDomain domain = ParamDomain::Ball(1, 1.0);
  // Defaults to the domain center when unset.
  std::optional<ParamVector> phi1;
  OgdConfig ogd;
  NoisySgdPlan plan;
  // Drives the noisy SGD stream of task t via DeriveSeed(seed, t, kTrainNoise).
  std::uint64_t seed = 0;
  // Budget for logistic risk estimates in the records; 0 skips them.
  std::int64_t mc_samples = 0;
};

struct MetaTrainingResult {
  ParamVector phi_hat;
  std::vector<TaskRecord> records;
  MetaState final_state = MetaState::Initial(ParamVector::Zero(1));
};

// Runs `num_tasks` rounds: task t gets phi_t, runs OGD (theta_hat_t) and noisy
// SGD (theta_bar_t), and the meta-learner steps with theta_bar_t. phi_hat is
// the mean of phi_1..phi_T. Throws std::invalid_argument if num_tasks < 1 or
// the source runs out of tasks.
MetaTrainingResult RunMetaTraining(const TaskSource& source,
                                   std::int64_t num_tasks,
                                   const MetaTrainingOptions& options);

}  // namespace dpmeta

#endif  // DPMETA_META_H_
