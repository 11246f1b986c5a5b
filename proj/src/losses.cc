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

#include "dpmeta/losses.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpmeta {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// log(1 + e^u) without overflow.
double Softplus(double u) {
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double Sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

void CheckDim(const ParamVector& theta, int dim) {
  if (theta.size() != dim) {
    throw std::invalid_argument("LossFunction: dimension mismatch");
  }
}

}  // namespace

std::string_view LossFamilyName(LossFamily family) {
  switch (family) {
    case LossFamily::kQuadratic:
      return "quadratic";
    case LossFamily::kLogistic:
      return "logistic";
  }
  return "unknown";
}

double LossFunction::Value(const ParamVector& theta) const {
  CheckDim(theta, dim());
  return std::visit(
      Overloaded{
          [&](const QuadraticParams& q) {
            return 0.5 * q.curvature * (theta - q.anchor).squaredNorm();
          },
          [&](const LogisticParams& l) {
            return Softplus(-l.label * l.feature.dot(theta));
          },
      },
      params_);
}

ParamVector LossFunction::Gradient(const ParamVector& theta) const {
  CheckDim(theta, dim());
  return std::visit(
      Overloaded{
          [&](const QuadraticParams& q) -> ParamVector {
            return q.curvature * (theta - q.anchor);
          },
          [&](const LogisticParams& l) -> ParamVector {
            const double margin = -l.label * l.feature.dot(theta);
            return (-l.label * Sigmoid(margin)) * l.feature;
          },
      },
      params_);
}

LossFamily LossFunction::family() const {
  return std::holds_alternative<QuadraticParams>(params_)
             ? LossFamily::kQuadratic
             : LossFamily::kLogistic;
}

int LossFunction::dim() const {
  return std::visit(
      Overloaded{
          [](const QuadraticParams& q) {
            return static_cast<int>(q.anchor.size());
          },
          [](const LogisticParams& l) {
            return static_cast<int>(l.feature.size());
          },
      },
      params_);
}

LossFunction MakeQuadratic(const ParamVector& anchor, double curvature,
                           const ParamDomain& dom) {
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    throw std::invalid_argument("MakeQuadratic: curvature must be positive");
  }
  if (!AllFinite(anchor) || !dom.Contains(anchor)) {
    throw std::invalid_argument("MakeQuadratic: anchor outside the domain");
  }
  return LossFunction(QuadraticParams{anchor, curvature});
}

LossFunction MakeLogistic(const ParamVector& feature, int label) {
  if (label != 1 && label != -1) {
    throw std::invalid_argument("MakeLogistic: label must be +1 or -1");
  }
  if (feature.size() == 0 || !AllFinite(feature)) {
    throw std::invalid_argument("MakeLogistic: feature must be finite");
  }
  return LossFunction(LogisticParams{feature, label});
}

void RegularityProfile::Validate() const {
  if (!(lipschitz_g > 0.0) || !(smoothness_beta > 0.0) ||
      !(growth_alpha > 0.0)) {
    throw std::invalid_argument(
        "RegularityProfile: G, beta and alpha must be positive");
  }
}

RegularityProfile QuadraticRegularity(double curvature,
                                      const ParamDomain& dom) {
  if (!(curvature > 0.0)) {
    throw std::invalid_argument("QuadraticRegularity: curvature must be > 0");
  }
  return RegularityProfile{curvature * dom.diameter(), curvature, curvature};
}

RegularityProfile LogisticRegularity(double max_feature_norm,
                                     double growth_alpha) {
  if (!(max_feature_norm > 0.0) || !(growth_alpha > 0.0)) {
    throw std::invalid_argument(
        "LogisticRegularity: feature norm and alpha must be positive");
  }
  return RegularityProfile{max_feature_norm,
                           0.25 * max_feature_norm * max_feature_norm,
                           growth_alpha};
}

double SmoothnessBound(const RegularityProfile& profile, const ParamDomain& dom,
                       std::int64_t m, const PrivacyParams& privacy,
                       std::int64_t steps) {
  privacy.Validate();
  const double diameter = dom.diameter();
  if (diameter == 0.0) {
    throw std::invalid_argument(
        "SmoothnessBound: undefined for a zero-diameter domain");
  }
  const double sample_term = std::sqrt(static_cast<double>(m) / 2.0);
  const double privacy_term =
      privacy.epsilon * static_cast<double>(steps) /
      (2.0 * std::sqrt(2.0 * dom.dim() * std::log(1.0 / privacy.delta)));
  return profile.lipschitz_g / diameter * std::min(sample_term, privacy_term);
}

bool CertifySmoothness(const RegularityProfile& profile, const ParamDomain& dom,
                       std::int64_t m, const PrivacyParams& privacy,
                       std::int64_t steps) {
  return profile.smoothness_beta <=
         SmoothnessBound(profile, dom, m, privacy, steps);
}

double FiniteDiffCheck(const LossFunction& loss, const ParamVector& theta,
                       double h) {
  const ParamVector grad = loss.Gradient(theta);
  double worst = 0.0;
  ParamVector probe = theta;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + h;
    const double up = loss.Value(probe);
    probe[i] = theta[i] - h;
    const double down = loss.Value(probe);
    probe[i] = theta[i];
    const double estimate = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(estimate - grad[i]) /
                                std::max(1.0, std::abs(grad[i])));
  }
  return worst;
}

}  // namespace dpmeta
