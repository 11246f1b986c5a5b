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

#include "dpmeta/learners.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpmeta {
namespace {

void CheckStart(std::span<const LossFunction> losses, const ParamVector& init,
                const ParamDomain& dom, const char* where) {
  if (losses.empty()) {
    throw std::invalid_argument(std::string(where) + ": no losses");
  }
  if (init.size() != dom.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
  if (!dom.Contains(init)) {
    throw std::invalid_argument(std::string(where) +
                                ": initial point outside the domain");
  }
}

// Accumulates the running average and optional trace for one visited iterate.
class IterateRecorder {
 public:
  IterateRecorder(const ParamVector& init, const TraceOptions& trace,
                  std::size_t expected_steps, LearnerOutput& out)
      : trace_(trace), out_(out), sum_(ParamVector::Zero(init.size())) {
    if (trace_.record_iterates) out_.iterates.reserve(expected_steps);
    if (trace_.reference) out_.dist_sq_to_reference.reserve(expected_steps);
  }

  void Visit(const ParamVector& theta) {
    sum_ += theta;
    ++count_;
    if (trace_.record_iterates) out_.iterates.push_back(theta);
    if (trace_.reference) {
      out_.dist_sq_to_reference.push_back(DistSq(theta, *trace_.reference));
    }
  }

  void Finish(ParamVector final_iterate) {
    out_.averaged_iterate = sum_ / static_cast<double>(count_);
    out_.final_iterate = std::move(final_iterate);
  }

 private:
  const TraceOptions& trace_;
  LearnerOutput& out_;
  ParamVector sum_;
  std::size_t count_ = 0;
};

void CheckPlan(const NoisySgdPlan& plan) {
  if (plan.steps < 1 || !(plan.step_size > 0.0) ||
      !(plan.noise_variance >= 0.0) || !(plan.clip_bound > 0.0)) {
    throw std::invalid_argument("NoisySgdRun: malformed plan");
  }
}

template <class NextIndex>
LearnerOutput NoisySgdLoop(std::span<const LossFunction> losses,
                           const ParamVector& init, const NoisySgdPlan& plan,
                           const ParamDomain& dom, Rng& rng,
                           const TraceOptions& trace, NextIndex next_index) {
  const auto steps = static_cast<std::size_t>(plan.steps);
  LearnerOutput out;
  out.sample_indices.reserve(steps);
  IterateRecorder recorder(init, trace, steps, out);
  ParamVector theta = init;
  for (std::size_t i = 0; i < steps; ++i) {
    recorder.Visit(theta);
    const std::size_t index = next_index(i);
    out.sample_indices.push_back(index);
    ParamVector direction =
        ClipNorm(losses[index].Gradient(theta), plan.clip_bound);
    direction += SampleGaussianNoise(dom.dim(), plan.noise_variance, rng);
    theta = Project(theta - plan.step_size * direction, dom);
  }
  recorder.Finish(std::move(theta));
  return out;
}

}  // namespace

LearnerOutput OgdRun(std::span<const LossFunction> losses,
                     const ParamVector& init, const OgdConfig& config,
                     const ParamDomain& dom, const TraceOptions& trace) {
  CheckStart(losses, init, dom, "OgdRun");
  if (!(config.step_size > 0.0)) {
    throw std::invalid_argument("OgdRun: step size must be positive");
  }
  const std::size_t steps =
      config.num_steps == 0 ? losses.size() : config.num_steps;
  if (steps > losses.size()) {
    throw std::invalid_argument("OgdRun: num_steps exceeds available losses");
  }
  LearnerOutput out;
  IterateRecorder recorder(init, trace, steps, out);
  ParamVector theta = init;
  for (std::size_t i = 0; i < steps; ++i) {
    recorder.Visit(theta);
    theta = Project(theta - config.step_size * losses[i].Gradient(theta), dom);
  }
  recorder.Finish(std::move(theta));
  return out;
}

LearnerOutput NoisySgdRun(std::span<const LossFunction> losses,
                          const ParamVector& init, const NoisySgdPlan& plan,
                          const ParamDomain& dom, Rng& rng,
                          const TraceOptions& trace) {
  CheckStart(losses, init, dom, "NoisySgdRun");
  CheckPlan(plan);
  std::uniform_int_distribution<std::size_t> pick(0, losses.size() - 1);
  return NoisySgdLoop(losses, init, plan, dom, rng, trace,
                      [&](std::size_t) { return pick(rng); });
}

LearnerOutput NoisySgdRunPinned(std::span<const LossFunction> losses,
                                const ParamVector& init,
                                const NoisySgdPlan& plan,
                                const ParamDomain& dom,
                                std::span<const std::size_t> indices, Rng& rng,
                                const TraceOptions& trace) {
  CheckStart(losses, init, dom, "NoisySgdRunPinned");
  CheckPlan(plan);
  if (indices.size() != static_cast<std::size_t>(plan.steps)) {
    throw std::invalid_argument(
        "NoisySgdRunPinned: index sequence length must equal plan.steps");
  }
  for (std::size_t index : indices) {
    if (index >= losses.size()) {
      throw std::invalid_argument("NoisySgdRunPinned: index out of range");
    }
  }
  return NoisySgdLoop(losses, init, plan, dom, rng, trace,
                      [&](std::size_t i) { return indices[i]; });
}

std::string_view GammaVariantName(GammaVariant variant) {
  switch (variant) {
    case GammaVariant::kSqrtM:
      return "sqrt_m";
    case GammaVariant::kGSqrtM:
      return "g_sqrt_m";
  }
  return "unknown";
}

double MetaGamma(double lipschitz_g, double growth_alpha, int dim,
                 std::int64_t m, const PrivacyParams& privacy,
                 GammaVariant variant) {
  privacy.Validate();
  if (!(lipschitz_g > 0.0) || !(growth_alpha > 0.0) || dim < 1 || m < 1) {
    throw std::invalid_argument("MetaGamma: arguments must be positive");
  }
  const double md = static_cast<double>(m);
  const double privacy_branch =
      std::sqrt(dim * std::log(1.0 / privacy.delta)) / (privacy.epsilon * md);
  const double sample_branch = variant == GammaVariant::kSqrtM
                                   ? 1.0 / std::sqrt(md)
                                   : 1.0 / (lipschitz_g * std::sqrt(md));
  return 120.0 * lipschitz_g / growth_alpha *
         std::max(privacy_branch, sample_branch);
}

double TestTimeEta(double similarity_v, double growth_alpha,
                   double lipschitz_g, std::int64_t m) {
  if (!(similarity_v >= 0.0) || !(growth_alpha > 0.0) ||
      !(lipschitz_g > 0.0) || m < 1) {
    throw std::invalid_argument(
        "TestTimeEta: V must be nonnegative, alpha, G and m positive");
  }
  const double root_m = std::sqrt(static_cast<double>(m));
  return (similarity_v + 1.0 / (growth_alpha * root_m)) /
         (lipschitz_g * root_m);
}

}  // namespace dpmeta
