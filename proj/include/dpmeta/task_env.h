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

// Synthetic task environment.
//
// Each task has a population risk minimizer theta* = Project(phi* + z) with z
// isotropic Gaussian of per-coordinate variance V^2 / d, so E||z||^2 = V^2
// before projection. Projection shrinks the realized dispersion slightly; the
// harness reports the realized value next to the nominal V.

#ifndef DPMETA_TASK_ENV_H_
#define DPMETA_TASK_ENV_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpmeta/geometry.h"
#include "dpmeta/losses.h"
#include "dpmeta/rng.h"

namespace dpmeta {

struct EnvSpec {
  ParamDomain domain = ParamDomain::Ball(1, 1.0);
  ParamVector planted_center = ParamVector::Zero(1);
  double similarity_v = 0.0;
  std::int64_t samples_per_task = 100;
  LossFamily family = LossFamily::kQuadratic;
  // Quadratic family.
  double curvature = 1.0;
  double sample_noise_std = 0.0;
  // Logistic family: features are drawn uniformly from the sphere of this
  // radius.
  double feature_radius = 1.0;

  int dim() const { return domain.dim(); }
  // Throws std::invalid_argument listing the first violated invariant.
  void Validate() const;
};

struct TaskSpec {
  ParamVector theta_star;
  LossFamily family = LossFamily::kQuadratic;
  double curvature = 1.0;
  double feature_radius = 1.0;
};

struct TaskInstance {
  std::size_t index = 0;
  TaskSpec spec;
  std::vector<LossFunction> losses;
};

TaskSpec SampleTask(const EnvSpec& spec, Rng& rng);

// Quadratic: anchors Project(theta* + w_i), w_i ~ N(0, sample_noise_std^2 I).
// Logistic: features uniform on the sphere, labels from the logistic model
// at theta*.
std::vector<LossFunction> GenerateLosses(const TaskSpec& task,
                                         const EnvSpec& spec, Rng& rng);

struct MonteCarlo {
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

struct RiskGap {
  double gap = 0.0;
  // Zero for closed-form families.
  double std_error = 0.0;
};

// l(theta) - l(theta*) of the task's population risk. Exact for quadratics;
// logistic tasks need a Monte Carlo budget and throw std::invalid_argument
// without one.
RiskGap PopulationRiskGap(const TaskSpec& task, const ParamVector& theta,
                          const MonteCarlo* mc = nullptr);

// (1/T) sum_t ||reference - theta*_t||^2. Throws on an empty list.
double EmpiricalTaskVariance(std::span<const ParamVector> theta_stars,
                             const ParamVector& reference);

// Random-access task supply. Implementations must be safe to call
// concurrently.
class TaskSource {
 public:
  virtual ~TaskSource() = default;
  // nullopt once the source is exhausted.
  virtual std::optional<TaskInstance> Task(std::size_t index) const = 0;
};

// Infinite stream of tasks; task `index` is a pure function of
// (seed, index).
class SyntheticTaskSource final : public TaskSource {
 public:
  SyntheticTaskSource(EnvSpec spec, std::uint64_t seed, StreamTag task_tag,
                      StreamTag loss_tag);

  std::optional<TaskInstance> Task(std::size_t index) const override;
  const EnvSpec& spec() const { return spec_; }

 private:
  EnvSpec spec_;
  std::uint64_t seed_;
  StreamTag task_tag_;
  StreamTag loss_tag_;
};

// A fixed, finite list of tasks.
class TaskListSource final : public TaskSource {
 public:
  explicit TaskListSource(std::vector<TaskInstance> tasks)
      : tasks_(std::move(tasks)) {}

  std::optional<TaskInstance> Task(std::size_t index) const override;

 private:
  std::vector<TaskInstance> tasks_;
};

}  // namespace dpmeta

#endif  // DPMETA_TASK_ENV_H_
