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

#ifndef DPMETA_LOSSES_H_
#define DPMETA_LOSSES_H_

#include <cstdint>
#include <string_view>
#include <variant>

#include "dpmeta/geometry.h"
#include "dpmeta/privacy.h"

namespace dpmeta {

enum class LossFamily { kQuadratic, kLogistic };

std::string_view LossFamilyName(LossFamily family);

// (curvature / 2) * ||theta - anchor||^2
struct QuadraticParams {
  ParamVector anchor;
  double curvature = 1.0;
};

// log(1 + exp(-label * <feature, theta>)), label in {-1, +1}.
struct LogisticParams {
  ParamVector feature;
  int label = 1;
};

// A convex per-sample loss. Immutable once built; construct through
// MakeQuadratic or MakeLogistic.
class LossFunction {
 public:
  double Value(const ParamVector& theta) const;
  ParamVector Gradient(const ParamVector& theta) const;

  LossFamily family() const;
  int dim() const;
  const std::variant<QuadraticParams, LogisticParams>& params() const {
    return params_;
  }

 private:
  explicit LossFunction(std::variant<QuadraticParams, LogisticParams> params)
      : params_(std::move(params)) {}

  friend LossFunction MakeQuadratic(const ParamVector&, double,
                                    const ParamDomain&);
  friend LossFunction MakeLogistic(const ParamVector&, int);

  std::variant<QuadraticParams, LogisticParams> params_;
};

// Throws std::invalid_argument if curvature <= 0 or the anchor is outside dom.
LossFunction MakeQuadratic(const ParamVector& anchor, double curvature,
                           const ParamDomain& dom);

// Throws std::invalid_argument unless label is +1 or -1 and the feature is
// finite.
LossFunction MakeLogistic(const ParamVector& feature, int label);

// Certified constants of a loss family on a domain.
struct RegularityProfile {
  double lipschitz_g = 1.0;
  double smoothness_beta = 1.0;
  double growth_alpha = 1.0;

  void Validate() const;
};

// G = a D, beta = a, alpha = a.
RegularityProfile QuadraticRegularity(double curvature, const ParamDomain& dom);

// G = R, beta = R^2 / 4 for features of norm at most R. The growth modulus
// has no closed form and is supplied by the caller.
RegularityProfile LogisticRegularity(double max_feature_norm,
                                     double growth_alpha);

// (G / D) min{sqrt(m / 2), eps n / (2 sqrt(2 d log(1/delta)))}.
// Throws std::invalid_argument when D == 0.
double SmoothnessBound(const RegularityProfile& profile, const ParamDomain& dom,
                       std::int64_t m, const PrivacyParams& privacy,
                       std::int64_t steps);

// beta <= SmoothnessBound(...). The comparison is inclusive.
bool CertifySmoothness(const RegularityProfile& profile, const ParamDomain& dom,
                       std::int64_t m, const PrivacyParams& privacy,
                       std::int64_t steps);

// Max over coordinates of |central difference - gradient| / max(1, |gradient|).
double FiniteDiffCheck(const LossFunction& loss, const ParamVector& theta,
                       double h);

}  // namespace dpmeta

#endif  // DPMETA_LOSSES_H_
