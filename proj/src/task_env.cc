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

#include "dpmeta/task_env.h"

#include <cmath>
#include <stdexcept>

namespace dpmeta {
namespace {

ParamVector StandardNormal(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ParamVector out(dim);
  for (int i = 0; i < dim; ++i) out[i] = normal(rng);
  return out;
}

ParamVector UniformOnSphere(int dim, double radius, Rng& rng) {
  ParamVector direction = StandardNormal(dim, rng);
  double norm = direction.norm();
  while (norm == 0.0) {
    direction = StandardNormal(dim, rng);
    norm = direction.norm();
  }
  return direction * (radius / norm);
}

double LogisticLoss(const ParamVector& feature, int label,
                    const ParamVector& theta) {
  const double u = -label * feature.dot(theta);
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

int DrawLabel(const ParamVector& feature, const ParamVector& theta_star,
              Rng& rng) {
  const double p_positive = 1.0 / (1.0 + std::exp(-feature.dot(theta_star)));
  std::bernoulli_distribution coin(p_positive);
  return coin(rng) ? 1 : -1;
}

}  // namespace

void EnvSpec::Validate() const {
  if (planted_center.size() != domain.dim()) {
    throw std::invalid_argument("EnvSpec: planted center dimension mismatch");
  }
  if (!domain.Contains(planted_center)) {
    throw std::invalid_argument("EnvSpec: planted center outside the domain");
  }
  if (!(similarity_v >= 0.0) || similarity_v > domain.radius()) {
    throw std::invalid_argument("EnvSpec: need 0 <= V <= domain radius");
  }
  if (samples_per_task < 1) {
    throw std::invalid_argument("EnvSpec: samples per task must be positive");
  }
  if (family == LossFamily::kQuadratic && !(curvature > 0.0)) {
    throw std::invalid_argument("EnvSpec: curvature must be positive");
  }
  if (!(sample_noise_std >= 0.0)) {
    throw std::invalid_argument("EnvSpec: sample noise must be nonnegative");
  }
  if (family == LossFamily::kLogistic && !(feature_radius > 0.0)) {
    throw std::invalid_argument("EnvSpec: feature radius must be positive");
  }
}

TaskSpec SampleTask(const EnvSpec& spec, Rng& rng) {
  TaskSpec task;
  task.family = spec.family;
  task.curvature = spec.curvature;
  task.feature_radius = spec.feature_radius;
  if (spec.similarity_v == 0.0) {
    task.theta_star = spec.planted_center;
    return task;
  }
  const double coord_std = spec.similarity_v / std::sqrt(spec.dim());
  task.theta_star = Project(
      spec.planted_center + coord_std * StandardNormal(spec.dim(), rng),
      spec.domain);
  return task;
}

std::vector<LossFunction> GenerateLosses(const TaskSpec& task,
                                         const EnvSpec& spec, Rng& rng) {
  std::vector<LossFunction> losses;
  losses.reserve(static_cast<std::size_t>(spec.samples_per_task));
  for (std::int64_t i = 0; i < spec.samples_per_task; ++i) {
    if (task.family == LossFamily::kQuadratic) {
      ParamVector anchor = task.theta_star;
      if (spec.sample_noise_std > 0.0) {
        anchor = Project(anchor + spec.sample_noise_std *
                                      StandardNormal(spec.dim(), rng),
                         spec.domain);
      }
      losses.push_back(MakeQuadratic(anchor, task.curvature, spec.domain));
    } else {
      ParamVector feature =
          UniformOnSphere(spec.dim(), task.feature_radius, rng);
      const int label = DrawLabel(feature, task.theta_star, rng);
      losses.push_back(MakeLogistic(feature, label));
    }
  }
  return losses;
}

RiskGap PopulationRiskGap(const TaskSpec& task, const ParamVector& theta,
                          const MonteCarlo* mc) {
  if (theta.size() != task.theta_star.size()) {
    throw std::invalid_argument("PopulationRiskGap: dimension mismatch");
  }
  if (task.family == LossFamily::kQuadratic) {
    // The sample-noise variance term is common to theta and theta* and
    // cancels in the gap.
    return RiskGap{0.5 * task.curvature * DistSq(theta, task.theta_star), 0.0};
  }
  if (mc == nullptr || mc->samples < 2) {
    throw std::invalid_argument(
        "PopulationRiskGap: logistic tasks need at least 2 Monte Carlo "
        "samples");
  }
  Rng rng(mc->seed);
  const int dim = static_cast<int>(theta.size());
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t s = 0; s < mc->samples; ++s) {
    const ParamVector feature = UniformOnSphere(dim, task.feature_radius, rng);
    const int label = DrawLabel(feature, task.theta_star, rng);
    const double diff = LogisticLoss(feature, label, theta) -
                        LogisticLoss(feature, label, task.theta_star);
    const double delta = diff - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (diff - mean);
  }
  const double n = static_cast<double>(mc->samples);
  return RiskGap{mean, std::sqrt(m2 / (n - 1.0) / n)};
}

double EmpiricalTaskVariance(std::span<const ParamVector> theta_stars,
                             const ParamVector& reference) {
  if (theta_stars.empty()) {
    throw std::invalid_argument("EmpiricalTaskVariance: empty list");
  }
  double total = 0.0;
  for (const ParamVector& theta_star : theta_stars) {
    total += DistSq(reference, theta_star);
  }
  return total / static_cast<double>(theta_stars.size());
}

SyntheticTaskSource::SyntheticTaskSource(EnvSpec spec, std::uint64_t seed,
                                         StreamTag task_tag,
                                         StreamTag loss_tag)
    : spec_(std::move(spec)),
      seed_(seed),
      task_tag_(task_tag),
      loss_tag_(loss_tag) {
  spec_.Validate();
}

std::optional<TaskInstance> SyntheticTaskSource::Task(
    std::size_t index) const {
  TaskInstance instance;
  instance.index = index;
  Rng task_rng = MakeStream(seed_, index, task_tag_);
  instance.spec = SampleTask(spec_, task_rng);
  Rng loss_rng = MakeStream(seed_, index, loss_tag_);
  instance.losses = GenerateLosses(instance.spec, spec_, loss_rng);
  return instance;
}

std::optional<TaskInstance> TaskListSource::Task(std::size_t index) const {
  if (index >= tasks_.size()) return std::nullopt;
  return tasks_[index];
}

}  // namespace dpmeta
