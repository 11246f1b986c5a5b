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

// Within-task learners.
//
// OgdRun is the non-private inference path: projected online gradient descent
// over the task's losses in order, returning the average of the iterates at
// which gradients were taken. NoisySgdRun is the private path whose output is
// the only thing a task ever releases.

#ifndef DPMETA_LEARNERS_H_
#define DPMETA_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dpmeta/geometry.h"
#include "dpmeta/losses.h"
#include "dpmeta/privacy.h"
#include "dpmeta/rng.h"

namespace dpmeta {

struct OgdConfig {
  double step_size = 0.1;
  // Number of losses consumed; 0 means all of them.
  std::size_t num_steps = 0;
};

// Optional diagnostics collected during a run.
struct TraceOptions {
  bool record_iterates = false;
  std::optional<ParamVector> reference;
};

struct LearnerOutput {
  // Mean of theta_1..theta_n, the points where gradients were evaluated.
  ParamVector averaged_iterate;
  // theta_{n+1}, the point after the last update.
  ParamVector final_iterate;
  // theta_1..theta_n when TraceOptions::record_iterates is set.
  std::vector<ParamVector> iterates;
  // ||theta_i - reference||^2 per step when a reference is given.
  std::vector<double> dist_sq_to_reference;
  // Loss index used at each step (noisy SGD only).
  std::vector<std::size_t> sample_indices;
};

// theta_{i+1} = Project(theta_i - eta * grad l_i(theta_i)). Deterministic.
// Throws std::invalid_argument on an empty loss sequence, an infeasible init,
// or num_steps larger than the number of losses.
LearnerOutput OgdRun(std::span<const LossFunction> losses,
                     const ParamVector& init, const OgdConfig& config,
                     const ParamDomain& dom, const TraceOptions& trace = {});

// plan.steps iterations of: sample one loss uniformly with replacement, clip
// its gradient to plan.clip_bound, add N(0, plan.noise_variance I), step by
// plan.step_size and project. Deterministic given the state of `rng`.
LearnerOutput NoisySgdRun(std::span<const LossFunction> losses,
                          const ParamVector& init, const NoisySgdPlan& plan,
                          const ParamDomain& dom, Rng& rng,
                          const TraceOptions& trace = {});

// As NoisySgdRun, but the loss index of step i is indices[i]; `rng` only
// drives the noise. indices.size() must equal plan.steps.
LearnerOutput NoisySgdRunPinned(std::span<const LossFunction> losses,
                                const ParamVector& init,
                                const NoisySgdPlan& plan,
                                const ParamDomain& dom,
                                std::span<const std::size_t> indices, Rng& rng,
                                const TraceOptions& trace = {});

// Second-branch form of the meta step-size constant.
enum class GammaVariant {
  // max{sqrt(d log(1/delta)) / (eps m), 1 / sqrt(m)}
  kSqrtM,
  // max{sqrt(d log(1/delta)) / (eps m), 1 / (G sqrt(m))}
  kGSqrtM,
};

std::string_view GammaVariantName(GammaVariant variant);

// (120 G / alpha) * max{sqrt(d log(1/delta)) / (eps m), second branch}.
double MetaGamma(double lipschitz_g, double growth_alpha, int dim,
                 std::int64_t m, const PrivacyParams& privacy,
                 GammaVariant variant = GammaVariant::kSqrtM);

// (V + 1 / (alpha sqrt(m))) / (G sqrt(m)).
double TestTimeEta(double similarity_v, double growth_alpha,
                   double lipschitz_g, std::int64_t m);

}  // namespace dpmeta

#endif  // DPMETA_LEARNERS_H_
