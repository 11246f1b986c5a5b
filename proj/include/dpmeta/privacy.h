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

// Closed-form privacy calibration for the within-task noisy SGD mechanism.
//
// A task that holds m samples runs n = min{m/8, eps^2 m^2 / (32 d log(1/delta))}
// noisy gradient steps, each perturbed with isotropic Gaussian noise of
// per-coordinate variance 8 n G^2 log(1/delta) / (m^2 eps^2), where G is the
// clipping bound (Lipschitz constant). All logarithms are natural.

#ifndef DPMETA_PRIVACY_H_
#define DPMETA_PRIVACY_H_

#include <cstdint>
#include <span>

#include "dpmeta/geometry.h"
#include "dpmeta/rng.h"

namespace dpmeta {

struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 1e-5;
  int group_size = 1;

  // Throws std::invalid_argument unless epsilon > 0, 0 < delta < 1, k >= 1.
  void Validate() const;
};

struct DpBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};

struct GroupGuarantee {
  double epsilon = 0.0;
  double delta = 0.0;
  // delta >= 1: the conversion holds but says nothing.
  bool vacuous = false;
};

// Per-task training plan for noisy SGD.
struct NoisySgdPlan {
  std::int64_t steps = 1;
  double step_size = 0.0;
  double noise_variance = 0.0;
  double clip_bound = 1.0;
};

// n = max(1, floor(min{m/8, eps^2 m^2 / (32 d log(1/delta))})).
std::int64_t StepBudget(std::int64_t m, const PrivacyParams& privacy, int dim);

// sigma^2 = 8 n G^2 log(1/delta) / (m^2 eps^2).
double NoiseVariance(std::int64_t steps, std::int64_t m, double lipschitz_g,
                     const PrivacyParams& privacy);

// (k eps, k e^{(k-1) eps} delta).
GroupGuarantee GroupDp(const PrivacyParams& privacy);

// Basic composition: sums of epsilons and deltas. Throws on an empty list.
DpBudget ComposeSequential(std::span<const DpBudget> budgets);

// Builds the plan for a task with m samples in dimension `dim`. The step size
// is gamma / (G sqrt(n)) and the clip bound is G.
NoisySgdPlan MakeNoisySgdPlan(std::int64_t m, const PrivacyParams& privacy,
                              int dim, double lipschitz_g, double gamma);

// Isotropic Gaussian vector with the given per-coordinate variance. A zero
// variance returns the zero vector without consuming randomness.
ParamVector SampleGaussianNoise(int dim, double variance, Rng& rng);

}  // namespace dpmeta

#endif  // DPMETA_PRIVACY_H_
