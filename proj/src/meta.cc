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

#include "dpmeta/meta.h"

#include <stdexcept>
#include <string>

namespace dpmeta {

MetaState MetaState::Initial(ParamVector phi1) {
  if (phi1.size() == 0) {
    throw std::invalid_argument("MetaState: empty initialization");
  }
  MetaState state;
  state.phi_sum_ = ParamVector::Zero(phi1.size());
  state.theta_bar_sum_ = ParamVector::Zero(phi1.size());
  state.phi_ = std::move(phi1);
  return state;
}

ParamVector MetaState::AveragedPhi() const {
  if (task_count_ == 0) return phi_;
  return phi_sum_ / static_cast<double>(task_count_);
}

MetaState MetaStep(const MetaState& state, const ParamVector& theta_bar) {
  if (theta_bar.size() != state.phi().size()) {
    throw std::invalid_argument("MetaStep: dimension mismatch");
  }
  MetaState next = state;
  next.task_count_ = state.task_count_ + 1;
  const double t = static_cast<double>(next.task_count_);
  next.phi_sum_ += state.phi_;
  next.theta_bar_sum_ += theta_bar;
  next.phi_ = (1.0 - 1.0 / t) * state.phi_ + theta_bar / t;
  return next;
}

MetaState MetaStepBatched(const MetaState& state,
                          std::span<const ParamVector> theta_bars) {
  if (theta_bars.empty()) {
    throw std::invalid_argument("MetaStepBatched: empty batch");
  }
  ParamVector mean = ParamVector::Zero(state.phi().size());
  for (const ParamVector& theta_bar : theta_bars) {
    if (theta_bar.size() != mean.size()) {
      throw std::invalid_argument("MetaStepBatched: dimension mismatch");
    }
    mean += theta_bar;
  }
  mean /= static_cast<double>(theta_bars.size());
  return MetaStep(state, mean);
}

double SurrogateLoss(const ParamVector& phi, const ParamVector& theta_bar) {
  return 0.5 * DistSq(theta_bar, phi);
}

MetaTrainingResult RunMetaTraining(const TaskSource& source,
                                   std::int64_t num_tasks,
                                   const MetaTrainingOptions& options) {
  if (num_tasks < 1) {
    throw std::invalid_argument("RunMetaTraining: need at least one task");
  }
  const ParamDomain& dom = options.domain;
  ParamVector phi1 = options.phi1.value_or(dom.center());
  if (!dom.Contains(phi1)) {
    throw std::invalid_argument("RunMetaTraining: phi_1 outside the domain");
  }

  MetaTrainingResult result;
  result.records.reserve(static_cast<std::size_t>(num_tasks));
  MetaState state = MetaState::Initial(std::move(phi1));

  for (std::int64_t t = 0; t < num_tasks; ++t) {
    const auto index = static_cast<std::size_t>(t);
    std::optional<TaskInstance> task = source.Task(index);
    if (!task) {
      throw std::invalid_argument("RunMetaTraining: task source exhausted after " +
                                  std::to_string(t) + " tasks");
    }

    TaskRecord record;
    record.task_index = index;
    record.phi = state.phi();
    record.theta_hat =
        OgdRun(task->losses, state.phi(), options.ogd, dom).averaged_iterate;
    Rng noise_rng = MakeStream(options.seed, index, StreamTag::kTrainNoise);
    record.theta_bar = NoisySgdRun(task->losses, state.phi(), options.plan, dom,
                                   noise_rng)
                           .averaged_iterate;
    record.surrogate_loss = SurrogateLoss(state.phi(), record.theta_bar);
    record.theta_star = task->spec.theta_star;

    if (task->spec.family == LossFamily::kQuadratic || options.mc_samples > 1) {
      const MonteCarlo mc{options.mc_samples,
                          DeriveSeed(options.seed, index,
                                     StreamTag::kTrainMonteCarlo)};
      const MonteCarlo* mc_ptr =
          task->spec.family == LossFamily::kQuadratic ? nullptr : &mc;
      record.excess_risk_hat =
          PopulationRiskGap(task->spec, record.theta_hat, mc_ptr).gap;
      record.excess_risk_bar =
          PopulationRiskGap(task->spec, record.theta_bar, mc_ptr).gap;
    }

    state = MetaStep(state, record.theta_bar);
    result.records.push_back(std::move(record));
  }

  result.phi_hat = state.AveragedPhi();
  result.final_state = std::move(state);
  return result;
}

}  // namespace dpmeta
