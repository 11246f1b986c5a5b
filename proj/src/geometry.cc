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

#include "dpmeta/geometry.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dpmeta {
namespace {

void CheckSameSize(const ParamVector& a, const ParamVector& b,
                   const char* where) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

}  // namespace

ParamDomain::ParamDomain(ParamVector center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) {
    throw std::invalid_argument("ParamDomain: dimension must be positive");
  }
  if (!std::isfinite(radius_) || radius_ < 0.0) {
    throw std::invalid_argument("ParamDomain: radius must be finite and >= 0");
  }
  if (!AllFinite(center_)) {
    throw std::invalid_argument("ParamDomain: center must be finite");
  }
}

ParamDomain ParamDomain::Ball(int dim, double radius) {
  if (dim <= 0) {
    throw std::invalid_argument("ParamDomain: dimension must be positive");
  }
  return ParamDomain(ParamVector::Zero(dim), radius);
}

bool ParamDomain::Contains(const ParamVector& v) const {
  if (v.size() != center_.size()) return false;
  return (v - center_).norm() <= radius_ * (1.0 + kGeometryRelTol);
}

ParamVector Project(const ParamVector& v, const ParamDomain& dom) {
  CheckSameSize(v, dom.center(), "Project");
  const ParamVector offset = v - dom.center();
  const double norm = offset.norm();
  if (norm <= dom.radius() * (1.0 + kGeometryRelTol)) return v;
  if (dom.radius() == 0.0) return dom.center();
  return dom.center() + (dom.radius() / norm) * offset;
}

ParamVector ClipNorm(const ParamVector& v, double bound) {
  if (!(bound > 0.0)) {
    throw std::invalid_argument("ClipNorm: bound must be positive");
  }
  const double norm = v.norm();
  if (norm <= bound) return v;
  return v * (bound / norm);
}

double DistSq(const ParamVector& a, const ParamVector& b) {
  CheckSameSize(a, b, "DistSq");
  return (a - b).squaredNorm();
}

bool AllFinite(const ParamVector& v) { return v.allFinite(); }

bool ApproxEqual(const ParamVector& a, const ParamVector& b, double rel_tol) {
  if (a.size() != b.size()) return false;
  return (a - b).norm() <= rel_tol * std::max(1.0, b.norm());
}

}  // namespace dpmeta
