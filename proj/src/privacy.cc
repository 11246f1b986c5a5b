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

#include "dpmeta/privacy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpmeta {

void PrivacyParams::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie within (0, 1)");
  }
  if (group_size < 1) {
    throw std::invalid_argument("group size must be at least 1");
  }
}

std::int64_t StepBudget(std::int64_t m, const PrivacyParams& privacy,
                        int dim) {
  privacy.Validate();
  if (m < 1 || dim < 1) {
    throw std::invalid_argument("StepBudget: m and dim must be positive");
  }
  const double md = static_cast<double>(m);
  const double sample_cap = md / 8.0;
  const double privacy_cap = privacy.epsilon * privacy.epsilon * md * md /
                             (32.0 * dim * std::log(1.0 / privacy.delta));
  const double n = std::floor(std::min(sample_cap, privacy_cap));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

double NoiseVariance(std::int64_t steps, std::int64_t m, double lipschitz_g,
                     const PrivacyParams& privacy) {
  privacy.Validate();
  if (steps < 1 || m < 1 || lipschitz_g < 0.0) {
    throw std::invalid_argument(
        "NoiseVariance: steps and m must be positive, G nonnegative");
  }
  const double md = static_cast<double>(m);
  return 8.0 * static_cast<double>(steps) * lipschitz_g * lipschitz_g *
         std::log(1.0 / privacy.delta) /
         (md * md * privacy.epsilon * privacy.epsilon);
}

GroupGuarantee GroupDp(const PrivacyParams& privacy) {
  privacy.Validate();
  const double k = privacy.group_size;
  GroupGuarantee out;
  out.epsilon = k * privacy.epsilon;
  out.delta = k * std::exp((k - 1.0) * privacy.epsilon) * privacy.delta;
  out.vacuous = out.delta >= 1.0;
  return out;
}

DpBudget ComposeSequential(std::span<const DpBudget> budgets) {
  if (budgets.empty()) {
    throw std::invalid_argument("ComposeSequential: empty budget list");
  }
  DpBudget total;
  for (const DpBudget& b : budgets) {
    total.epsilon += b.epsilon;
    total.delta += b.delta;
  }
  return total;
}

NoisySgdPlan MakeNoisySgdPlan(std::int64_t m, const PrivacyParams& privacy,
                              int dim, double lipschitz_g, double gamma) {
  if (!(lipschitz_g > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("MakeNoisySgdPlan: G and gamma must be positive");
  }
  NoisySgdPlan plan;
  plan.steps = StepBudget(m, privacy, dim);
  plan.step_size =
      gamma / (lipschitz_g * std::sqrt(static_cast<double>(plan.steps)));
  plan.noise_variance = NoiseVariance(plan.steps, m, lipschitz_g, privacy);
  plan.clip_bound = lipschitz_g;
  return plan;
}

ParamVector SampleGaussianNoise(int dim, double variance, Rng& rng) {
  if (variance < 0.0) {
    throw std::invalid_argument("SampleGaussianNoise: negative variance");
  }
  ParamVector out = ParamVector::Zero(dim);
  if (variance == 0.0) return out;
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (int i = 0; i < dim; ++i) out[i] = normal(rng);
  return out;
}

}  // namespace dpmeta
