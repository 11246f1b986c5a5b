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

#include "dpmeta/evaluation.h"

#include <omp.h>

#include <exception>
#include <stdexcept>
#include <string>

namespace dpmeta {
namespace {

TaskInstance DrawOne(const TaskSource& source, std::size_t index) {
  std::optional<TaskInstance> task = source.Task(index);
  if (!task) {
    throw std::invalid_argument("DrawTasks: task source exhausted at index " +
                                std::to_string(index));
  }
  return std::move(*task);
}

RiskGap EvaluateOne(const TaskInstance& task, const ParamVector& init,
                    const ParamDomain& dom,
                    const TransferEvalOptions& options) {
  const ParamVector theta_hat =
      OgdRun(task.losses, init, options.ogd, dom).averaged_iterate;
  if (task.spec.family == LossFamily::kQuadratic) {
    return PopulationRiskGap(task.spec, theta_hat);
  }
  const MonteCarlo mc{options.mc_samples,
                      DeriveSeed(options.seed, task.index,
                                 StreamTag::kEvalMonteCarlo)};
  return PopulationRiskGap(task.spec, theta_hat, &mc);
}

// Runs body(i) for i in [0, count) across OpenMP threads and rethrows the
// first exception on the calling thread.
template <class Body>
void ParallelFor(std::size_t count, Body body) {
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(dpmeta_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<TaskInstance> DrawTasksSerial(const TaskSource& source,
                                          std::size_t count) {
  std::vector<TaskInstance> tasks;
  tasks.reserve(count);
  for (std::size_t i = 0; i < count; ++i) tasks.push_back(DrawOne(source, i));
  return tasks;
}

std::vector<TaskInstance> DrawTasksParallel(const TaskSource& source,
                                            std::size_t count) {
  std::vector<TaskInstance> tasks(count);
  ParallelFor(count, [&](std::size_t i) { tasks[i] = DrawOne(source, i); });
  return tasks;
}

std::vector<RiskGap> EvaluateTransferSerial(
    std::span<const TaskInstance> tasks, const ParamVector& init,
    const ParamDomain& dom, const TransferEvalOptions& options) {
  std::vector<RiskGap> gaps;
  gaps.reserve(tasks.size());
  for (const TaskInstance& task : tasks) {
    gaps.push_back(EvaluateOne(task, init, dom, options));
  }
  return gaps;
}

std::vector<RiskGap> EvaluateTransferParallel(
    std::span<const TaskInstance> tasks, const ParamVector& init,
    const ParamDomain& dom, const TransferEvalOptions& options) {
  std::vector<RiskGap> gaps(tasks.size());
  ParallelFor(tasks.size(), [&](std::size_t i) {
    gaps[i] = EvaluateOne(tasks[i], init, dom, options);
  });
  return gaps;
}

}  // namespace dpmeta
