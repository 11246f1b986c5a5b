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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace dpmeta {
namespace {

ParamVector Vec(std::initializer_list<double> values) {
  ParamVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Reference values computed with mpmath at 30 digits.
constexpr double kGammaExample = 4.2426406871192851;
constexpr double kGammaSmallEps = 160.94745197170104;
constexpr double kGammaAlphaTwo = 2.1213203435596426;

// Plain projected SGD over std::vector, written without the library's
// geometry helpers: the oracle for NoisySgdRun with zero noise.
std::vector<std::vector<double>> PlainProjectedSgd(
    const std::vector<std::vector<double>>& anchors,
    const std::vector<double>& curvatures, std::vector<double> theta,
    const std::vector<double>& center, double radius, double step,
    double clip, const std::vector<std::size_t>& order) {
  std::vector<std::vector<double>> visited;
  const std::size_t d = theta.size();
  for (std::size_t index : order) {
    visited.push_back(theta);
    std::vector<double> g(d);
    double gnorm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      g[j] = curvatures[index] * (theta[j] - anchors[index][j]);
      gnorm += g[j] * g[j];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm > clip) {
      for (double& x : g) x *= clip / gnorm;
    }
    double off = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      theta[j] -= step * g[j];
      off += (theta[j] - center[j]) * (theta[j] - center[j]);
    }
    off = std::sqrt(off);
    if (off > radius) {
      for (std::size_t j = 0; j < d; ++j) {
        theta[j] = center[j] + radius * (theta[j] - center[j]) / off;
      }
    }
  }
  return visited;
}

TEST(OgdRunTest, StartAtMinimizerStaysPut) {
  const ParamDomain dom = ParamDomain::Ball(2, 1.0);
  const std::vector<LossFunction> losses = {
      MakeQuadratic(Vec({0.2, 0.1}), 1.0, dom)};
  const LearnerOutput out = OgdRun(losses, Vec({0.2, 0.1}), {0.5, 0}, dom);
  EXPECT_EQ(out.averaged_iterate, Vec({0.2, 0.1}));
}

TEST(OgdRunTest, SingleLossAveragesOnlyTheStart) {
  const ParamDomain dom = ParamDomain::Ball(2, 1.0);
  const std::vector<LossFunction> losses = {
      MakeQuadratic(Vec({0, 0}), 1.0, dom)};
  const LearnerOutput out = OgdRun(losses, Vec({1, 0}), {0.5, 0}, dom);
  EXPECT_EQ(out.averaged_iterate, Vec({1, 0}));
  EXPECT_EQ(out.final_iterate, Vec({0.5, 0}));
}

TEST(OgdRunTest, TwoStepsByHand) {
  const ParamDomain dom = ParamDomain::Ball(1, 2.0);
  const LossFunction q = MakeQuadratic(Vec({0}), 1.0, dom);
  const std::vector<LossFunction> losses = {q, q};
  TraceOptions trace;
  trace.record_iterates = true;
  trace.reference = Vec({0});
  const LearnerOutput out = OgdRun(losses, Vec({1}), {0.5, 0}, dom, trace);
  ASSERT_EQ(out.iterates.size(), 2u);
  EXPECT_EQ(out.iterates[0], Vec({1}));
  EXPECT_EQ(out.iterates[1], Vec({0.5}));
  EXPECT_DOUBLE_EQ(out.averaged_iterate[0], 0.75);
  EXPECT_EQ(out.dist_sq_to_reference, (std::vector<double>{1.0, 0.25}));
}

TEST(OgdRunTest, Errors) {
  const ParamDomain dom = ParamDomain::Ball(1, 1.0);
  const std::vector<LossFunction> none;
  EXPECT_THROW(OgdRun(none, Vec({0}), {0.1, 0}, dom), std::invalid_argument);
  const std::vector<LossFunction> one = {MakeQuadratic(Vec({0}), 1.0, dom)};
  EXPECT_THROW(OgdRun(one, Vec({3}), {0.1, 0}, dom), std::invalid_argument);
  EXPECT_THROW(OgdRun(one, Vec({0}), {0.1, 2}, dom), std::invalid_argument);
  EXPECT_THROW(OgdRun(one, Vec({0}), {0.0, 0}, dom), std::invalid_argument);
}

TEST(NoisySgdRunTest, ZeroNoiseAtCommonMinimizer) {
  const ParamDomain dom = ParamDomain::Ball(3, 1.0);
  const ParamVector init = Vec({0.1, -0.2, 0.3});
  const std::vector<LossFunction> losses(5, MakeQuadratic(init, 2.0, dom));
  NoisySgdPlan plan{7, 0.4, 0.0, 1.0};
  Rng rng(3);
  // Averaging seven copies of init may round in the last place.
  EXPECT_TRUE(ApproxEqual(NoisySgdRun(losses, init, plan, dom, rng).averaged_iterate,
                          init, 1e-15));
}

TEST(NoisySgdRunTest, DeterministicGivenSeed) {
  const ParamDomain dom = ParamDomain::Ball(4, 1.0);
  std::vector<LossFunction> losses;
  for (int i = 0; i < 20; ++i) {
    losses.push_back(MakeQuadratic(Vec({0.01 * i, -0.02 * i, 0.3, 0}), 1.0, dom));
  }
  const NoisySgdPlan plan{12, 0.8, 0.3, 2.0};
  Rng a(42);
  Rng b(42);
  const LearnerOutput first = NoisySgdRun(losses, dom.center(), plan, dom, a);
  const LearnerOutput second = NoisySgdRun(losses, dom.center(), plan, dom, b);
  EXPECT_EQ(first.averaged_iterate, second.averaged_iterate);
  EXPECT_EQ(first.sample_indices, second.sample_indices);
  Rng c(43);
  EXPECT_NE(NoisySgdRun(losses, dom.center(), plan, dom, c).averaged_iterate,
            first.averaged_iterate);
}

TEST(NoisySgdRunTest, ZeroNoiseMatchesPlainSgdOracle) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> normal(0.0, 0.6);
  for (int seed = 0; seed < 20; ++seed) {
    const int d = 3;
    const ParamDomain dom(Vec({0.2, 0.0, -0.1}), 1.0);
    std::vector<LossFunction> losses;
    std::vector<std::vector<double>> anchors;
    std::vector<double> curvatures;
    for (int i = 0; i < 30; ++i) {
      ParamVector a = Project(dom.center() + Vec({normal(gen), normal(gen),
                                                  normal(gen)}),
                              dom);
      anchors.emplace_back(a.data(), a.data() + d);
      curvatures.push_back(0.5 + 0.1 * i);
      losses.push_back(MakeQuadratic(a, curvatures.back(), dom));
    }
    const NoisySgdPlan plan{25, 0.7, 0.0, 1.5};
    Rng rng(static_cast<std::uint64_t>(seed));
    TraceOptions trace;
    trace.record_iterates = true;
    const LearnerOutput out =
        NoisySgdRun(losses, dom.center(), plan, dom, rng, trace);
    const auto oracle = PlainProjectedSgd(
        anchors, curvatures, {0.2, 0.0, -0.1}, {0.2, 0.0, -0.1}, 1.0, 0.7,
        1.5, out.sample_indices);
    ASSERT_EQ(oracle.size(), out.iterates.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      for (int j = 0; j < d; ++j) {
        EXPECT_NEAR(out.iterates[i][j], oracle[i][j],
                    1e-12 * std::max(1.0, std::abs(oracle[i][j])));
      }
    }
  }
}

TEST(NoisySgdRunTest, PinnedIndicesAreHonored) {
  const ParamDomain dom = ParamDomain::Ball(1, 5.0);
  const std::vector<LossFunction> losses = {
      MakeQuadratic(Vec({-1}), 1.0, dom), MakeQuadratic(Vec({1}), 1.0, dom)};
  const std::vector<std::size_t> order = {1, 1, 0};
  Rng rng(0);
  TraceOptions trace;
  trace.record_iterates = true;
  const LearnerOutput out = NoisySgdRunPinned(
      losses, Vec({0}), NoisySgdPlan{3, 0.5, 0.0, 10.0}, dom, order, rng, trace);
  EXPECT_EQ(out.sample_indices, order);
  // 0 -> 0.5 -> 0.75 -> visited; average of {0, 0.5, 0.75}.
  EXPECT_DOUBLE_EQ(out.averaged_iterate[0], 1.25 / 3.0);
  EXPECT_DOUBLE_EQ(out.final_iterate[0], 0.75 - 0.5 * 1.75);

  const std::vector<std::size_t> short_order = {0};
  EXPECT_THROW(NoisySgdRunPinned(losses, Vec({0}), NoisySgdPlan{3, 0.5, 0.0, 1.0},
                                 dom, short_order, rng),
               std::invalid_argument);
}

TEST(NoisySgdRunTest, ClippedDirectionHasNormExactlyClipBound) {
  // Large domain so projection never activates.
  const ParamDomain dom = ParamDomain::Ball(3, 100.0);
  const std::vector<LossFunction> losses = {
      MakeQuadratic(Vec({10, -20, 5}), 3.0, dom)};
  const double clip = 0.25;
  const double step = 0.4;
  Rng rng(5);
  TraceOptions trace;
  trace.record_iterates = true;
  const LearnerOutput out = NoisySgdRun(losses, Vec({0, 0, 0}),
                                        NoisySgdPlan{1, step, 0.0, clip}, dom,
                                        rng, trace);
  EXPECT_NEAR((out.final_iterate - out.iterates[0]).norm(), step * clip,
              1e-15);
}

TEST(NoisySgdRunTest, Errors) {
  const ParamDomain dom = ParamDomain::Ball(2, 1.0);
  Rng rng(1);
  const std::vector<LossFunction> none;
  EXPECT_THROW(NoisySgdRun(none, Vec({0, 0}), NoisySgdPlan{1, 1, 0, 1}, dom, rng),
               std::invalid_argument);
  const std::vector<LossFunction> one = {MakeQuadratic(Vec({0, 0}), 1.0, dom)};
  EXPECT_THROW(NoisySgdRun(one, Vec({0, 0, 0}), NoisySgdPlan{1, 1, 0, 1}, dom, rng),
               std::invalid_argument);
  EXPECT_THROW(NoisySgdRun(one, Vec({0, 0}), NoisySgdPlan{0, 1, 0, 1}, dom, rng),
               std::invalid_argument);
}

TEST(LearnerPropertyTest, IteratesStayFeasible) {
  std::mt19937_64 gen(123);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const ParamDomain dom(Vec({normal(gen), normal(gen)}), 0.5 + trial % 3);
    std::vector<LossFunction> losses;
    for (int i = 0; i < 40; ++i) {
      const ParamVector a = Project(Vec({normal(gen), normal(gen)}), dom);
      losses.push_back(MakeQuadratic(a, 1.0 + i % 4, dom));
    }
    TraceOptions trace;
    trace.record_iterates = true;
    const LearnerOutput ogd = OgdRun(losses, dom.center(), {0.9, 0}, dom, trace);
    Rng rng(static_cast<std::uint64_t>(trial));
    const LearnerOutput sgd = NoisySgdRun(
        losses, dom.center(), NoisySgdPlan{30, 3.0, 1.5, 2.0}, dom, rng, trace);
    for (const LearnerOutput* out : {&ogd, &sgd}) {
      for (const ParamVector& theta : out->iterates) {
        EXPECT_TRUE(dom.Contains(theta));
      }
      EXPECT_TRUE(dom.Contains(out->final_iterate));
      EXPECT_TRUE(dom.Contains(out->averaged_iterate));
      ParamVector mean = ParamVector::Zero(2);
      for (const ParamVector& theta : out->iterates) mean += theta;
      mean /= static_cast<double>(out->iterates.size());
      EXPECT_TRUE(ApproxEqual(out->averaged_iterate, mean, 1e-12));
    }
  }
}

// Deterministic OGD guarantee for identical quadratics, where every online
// loss equals the empirical risk: l(avg) - l(theta*) <= ||init - theta*||^2 /
// (2 eta m) + eta G^2 / 2.
TEST(LearnerPropertyTest, OgdAverageMeetsRegretBoundOnRepeatedTask) {
  const ParamDomain dom = ParamDomain::Ball(5, 1.0);
  const double curvature = 1.0;
  const double g = QuadraticRegularity(curvature, dom).lipschitz_g;
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> normal(0.0, 0.5);
  int violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    ParamVector anchor(5);
    ParamVector init(5);
    for (int j = 0; j < 5; ++j) {
      anchor[j] = normal(gen);
      init[j] = normal(gen);
    }
    anchor = Project(anchor, dom);
    init = Project(init, dom);
    const std::vector<LossFunction> losses(100,
                                           MakeQuadratic(anchor, curvature, dom));
    const double eta = 0.002 * (1 + rep % 50);
    const LearnerOutput out = OgdRun(losses, init, {eta, 0}, dom);
    const double gap = losses[0].Value(out.averaged_iterate);
    const double bound =
        DistSq(init, anchor) / (2.0 * eta * 100) + eta * g * g / 2.0;
    if (gap > bound) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(MetaGammaTest, Examples) {
  const PrivacyParams privacy{1.0, 1e-5, 1};
  EXPECT_NEAR(MetaGamma(1, 1, 10, 800, privacy), kGammaExample, 1e-13);
  EXPECT_NEAR(MetaGamma(1, 1, 10, 800, {0.01, 1e-5, 1}), kGammaSmallEps, 1e-11);
  EXPECT_NEAR(MetaGamma(1, 2, 10, 800, privacy), kGammaAlphaTwo, 1e-13);
}

TEST(MetaGammaTest, VariantsDifferOnlyInSampleBranch) {
  const PrivacyParams privacy{1.0, 1e-5, 1};
  EXPECT_EQ(MetaGamma(1, 1, 10, 800, privacy, GammaVariant::kSqrtM),
            MetaGamma(1, 1, 10, 800, privacy, GammaVariant::kGSqrtM));
  // G = 4: sample branch 1/(4 sqrt(800)) loses to the privacy branch.
  EXPECT_NEAR(MetaGamma(4, 1, 10, 800, privacy, GammaVariant::kGSqrtM),
              480.0 * std::sqrt(10 * std::log(1e5)) / 800.0, 1e-12);
  EXPECT_NEAR(MetaGamma(4, 1, 10, 800, privacy, GammaVariant::kSqrtM),
              4.0 * kGammaExample, 1e-12);
}

TEST(TestTimeEtaTest, Examples) {
  EXPECT_DOUBLE_EQ(TestTimeEta(0.5, 1.0, 1.0, 100), 0.06);
  EXPECT_DOUBLE_EQ(TestTimeEta(0.0, 1.0, 1.0, 100), 0.01);
  EXPECT_DOUBLE_EQ(TestTimeEta(0.5, 1.0, 2.0, 100), 0.03);
  EXPECT_THROW(TestTimeEta(-0.1, 1.0, 1.0, 100), std::invalid_argument);
}

}  // namespace
}  // namespace dpmeta
