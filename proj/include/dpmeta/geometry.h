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

#ifndef DPMETA_GEOMETRY_H_
#define DPMETA_GEOMETRY_H_

#include <Eigen/Core>

namespace dpmeta {

// Dense point in the d-dimensional parameter space.
using ParamVector = Eigen::VectorXd;

// Relative tolerance used for geometric identities (membership, projection
// idempotence).
inline constexpr double kGeometryRelTol = 1e-12;

// The feasible parameter set: a closed Euclidean ball. A zero radius is legal
// and makes the domain a single point.
class ParamDomain {
 public:
  ParamDomain(ParamVector center, double radius);

  // Ball of the given radius centered at the origin.
  static ParamDomain Ball(int dim, double radius);

  int dim() const { return static_cast<int>(center_.size()); }
  const ParamVector& center() const { return center_; }
  double radius() const { return radius_; }
  double diameter() const { return 2.0 * radius_; }

  // True if `v` lies in the ball up to kGeometryRelTol relative slack.
  bool Contains(const ParamVector& v) const;

 private:
  ParamVector center_;
  double radius_;
};

// Euclidean projection onto `dom`. Points already inside are returned as is.
// Throws std::invalid_argument on dimension mismatch.
ParamVector Project(const ParamVector& v, const ParamDomain& dom);

// Rescales `v` onto the ball of radius `bound` when its norm exceeds it.
// Throws std::invalid_argument if bound <= 0.
ParamVector ClipNorm(const ParamVector& v, double bound);

// Squared Euclidean distance. Throws std::invalid_argument on size mismatch.
double DistSq(const ParamVector& a, const ParamVector& b);

bool AllFinite(const ParamVector& v);

// ||a - b|| <= rel_tol * max(1, ||b||).
bool ApproxEqual(const ParamVector& a, const ParamVector& b, double rel_tol);

}  // namespace dpmeta

#endif  // DPMETA_GEOMETRY_H_
