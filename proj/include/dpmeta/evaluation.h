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

// Data-parallel kernels over evaluation tasks. Each *Parallel function has a
// *Serial twin with identical semantics that is kept as the reference for
// tests and benchmarks. Results are indexed by task, so output never depends
// on scheduling.

#ifndef DPMETA_EVALUATION_H_
#define DPMETA_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpmeta/geometry.h"
#include "dpmeta/learners.h"
#include "dpmeta/rng.h"
#include "dpmeta/task_env.h"

namespace dpmeta {

struct TransferEvalOptions {
  OgdConfig ogd;
  // Logistic Monte Carlo budget per task; ignored for quadratics.
  std::int64_t mc_samples = 0;
  // Task i's Monte Carlo stream is DeriveSeed(seed, i, kEvalMonteCarlo), so
  // every arm evaluated with the same seed sees the same draws.
  std::uint64_t seed = 0;
};

// Tasks 0..count-1 of `source`. Throws std::invalid_argument if the source
// runs out.
std::vector<TaskInstance> DrawTasksSerial(const TaskSource& source,
                                          std::size_t count);
std::vector<TaskInstance> DrawTasksParallel(const TaskSource& source,
                                            std::size_t count);

// Population risk gap of the averaged OGD iterate started from `init`, one
// entry per task.
std::vector<RiskGap> EvaluateTransferSerial(std::span<const TaskInstance> tasks,
                                            const ParamVector& init,
                                            const ParamDomain& dom,
                                            const TransferEvalOptions& options);
std::vector<RiskGap> EvaluateTransferParallel(
    std::span<const TaskInstance> tasks, const ParamVector& init,
    const ParamDomain& dom, const TransferEvalOptions& options);

}  // namespace dpmeta

#endif  // DPMETA_EVALUATION_H_
