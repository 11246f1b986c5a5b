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

#include "dpmeta/config.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "dpmeta/errors.h"
#include "gtest/gtest.h"

namespace dpmeta {
namespace {

bool Mentions(const ConfigError& error, const std::string& needle) {
  return std::any_of(error.violations().begin(), error.violations().end(),
                     [&](const std::string& v) {
                       return v.find(needle) != std::string::npos;
                     });
}

ConfigError ExpectConfigError(std::string_view text) {
  try {
    ParseConfigString(text);
  } catch (const ConfigError& error) {
    return error;
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return ConfigError({});
}

TEST(ParseConfigTest, MinimalConfigUsesDefaults) {
  const ExperimentConfig cfg = ParseConfigString("dim = 3\n");
  EXPECT_EQ(cfg.env.dim(), 3);
  EXPECT_EQ(cfg.env.domain.radius(), 1.0);
  EXPECT_EQ(cfg.env.planted_center, ParamVector::Zero(3));
  EXPECT_EQ(cfg.Phi1(), ParamVector::Zero(3));
  EXPECT_EQ(cfg.t_train, 400);
  EXPECT_EQ(cfg.t_eval, 500);
  EXPECT_EQ(cfg.privacy.epsilon, 1.0);
  EXPECT_EQ(cfg.privacy.delta, 1e-5);
  EXPECT_EQ(cfg.gamma_variant, GammaVariant::kSqrtM);
  EXPECT_TRUE(cfg.baseline_no_meta);
  EXPECT_TRUE(cfg.baseline_nonprivate_meta);
}

TEST(ParseConfigTest, FullConfig) {
  const ExperimentConfig cfg = ParseConfigString(R"(
# acceptance-style environment
dim = 2
domain_radius = 2.5
domain_center = 0.5, -0.5
planted_center = 0.5,0
phi1 = 1        # broadcast
similarity_v = 0.25
samples_per_task = 100
loss_family = quadratic
curvature = 2
sample_noise_std = 0.1
t_train = 50
t_eval = 60
epsilon = 0.5
delta = 1e-6
group_size = 3
visits_per_task = 2
lipschitz_g = 4
smoothness_beta = 2
growth_alpha = 2
gamma_variant = g_sqrt_m
master_seed = 18446744073709551615
baseline_no_meta = false
baseline_nonprivate_meta = no
eval_mc_samples = 10
output_path = out/run.csv
)");
  EXPECT_EQ(cfg.env.domain.center()[0], 0.5);
  EXPECT_EQ(cfg.env.domain.center()[1], -0.5);
  EXPECT_EQ(cfg.env.domain.radius(), 2.5);
  EXPECT_EQ(cfg.env.planted_center[1], 0.0);
  EXPECT_EQ(cfg.Phi1(), ParamVector::Constant(2, 1.0));
  EXPECT_EQ(cfg.env.similarity_v, 0.25);
  EXPECT_EQ(cfg.env.samples_per_task, 100);
  EXPECT_EQ(cfg.env.curvature, 2.0);
  EXPECT_EQ(cfg.env.sample_noise_std, 0.1);
  EXPECT_EQ(cfg.t_train, 50);
  EXPECT_EQ(cfg.t_eval, 60);
  EXPECT_EQ(cfg.privacy.epsilon, 0.5);
  EXPECT_EQ(cfg.privacy.delta, 1e-6);
  EXPECT_EQ(cfg.privacy.group_size, 3);
  EXPECT_EQ(cfg.visits_per_task, 2);
  EXPECT_EQ(cfg.lipschitz_g, 4.0);
  EXPECT_EQ(cfg.growth_alpha, 2.0);
  EXPECT_EQ(cfg.gamma_variant, GammaVariant::kGSqrtM);
  EXPECT_EQ(cfg.master_seed, 18446744073709551615ULL);
  EXPECT_FALSE(cfg.baseline_no_meta);
  EXPECT_FALSE(cfg.baseline_nonprivate_meta);
  EXPECT_EQ(cfg.output_path, "out/run.csv");
}

TEST(ParseConfigTest, ReportsEveryViolation) {
  const ConfigError error = ExpectConfigError(R"(
dim = 2
colour = blue
epsilon = -1
delta = 2
samples_per_task = 1.5
similarity_v = 9
loss_family = hinge
epsilon = 3
)");
  EXPECT_TRUE(Mentions(error, "unknown key 'colour'"));
  EXPECT_TRUE(Mentions(error, "duplicate key 'epsilon'"));
  EXPECT_TRUE(Mentions(error, "samples_per_task"));
  EXPECT_TRUE(Mentions(error, "loss_family"));
  EXPECT_TRUE(Mentions(error, "epsilon must be positive"));
  EXPECT_TRUE(Mentions(error, "delta must lie within (0, 1)"));
  EXPECT_TRUE(Mentions(error, "similarity_v"));
  EXPECT_GE(error.violations().size(), 7u);
}

TEST(ParseConfigTest, MissingDimAndMalformedLines) {
  const ConfigError error = ExpectConfigError("this is not a pair\n");
  EXPECT_TRUE(Mentions(error, "dim is required"));
  EXPECT_TRUE(Mentions(error, "line 1"));
  EXPECT_TRUE(Mentions(ExpectConfigError("dim = 0"), "dim must be >= 1"));
}

TEST(ParseConfigTest, VectorArity) {
  EXPECT_TRUE(Mentions(ExpectConfigError("dim = 3\nphi1 = 0.1, 0.2\n"),
                       "expected 3 coordinates"));
  EXPECT_TRUE(Mentions(ExpectConfigError("dim = 2\nphi1 = 5, 0\n"),
                       "phi1 lies outside"));
  EXPECT_TRUE(Mentions(ExpectConfigError("dim = 2\nplanted_center = a,b\n"),
                       "planted_center"));
}

TEST(ParseConfigTest, LogisticNeedsGrowthAndMonteCarlo) {
  const ConfigError error =
      ExpectConfigError("dim = 2\nloss_family = logistic\neval_mc_samples = 1\n");
  EXPECT_TRUE(Mentions(error, "growth_alpha is required"));
  EXPECT_TRUE(Mentions(error, "eval_mc_samples"));
  EXPECT_NO_THROW(
      ParseConfigString("dim = 2\nloss_family = logistic\ngrowth_alpha = 0.1\n"));
}

TEST(ParseConfigTest, NonFiniteNumbersRejected) {
  EXPECT_TRUE(Mentions(ExpectConfigError("dim = 2\ncurvature = inf\n"),
                       "curvature"));
  EXPECT_TRUE(Mentions(ExpectConfigError("dim = 2\nepsilon = nan\n"),
                       "epsilon"));
}

TEST(LoadConfigFileTest, ReadsFileAndReportsMissingOnes) {
  const std::string path = ::testing::TempDir() + "config_test.cfg";
  {
    std::ofstream out(path);
    out << "dim = 4\nt_train = 7\n";
  }
  EXPECT_EQ(LoadConfigFile(path).t_train, 7);
  std::remove(path.c_str());
  EXPECT_THROW(LoadConfigFile(path), IoError);
}

TEST(LoadConfigFileTest, ShippedConfigsAreValid) {
  for (const char* name : {"quadratic.cfg", "logistic.cfg"}) {
    const std::string path = std::string(DPMETA_CONFIG_DIR) + "/" + name;
    EXPECT_NO_THROW(LoadConfigFile(path)) << path;
  }
}

TEST(ResolveRegularityTest, FamilyDefaultsAndOverrides) {
  ExperimentConfig cfg = ParseConfigString("dim = 2\ndomain_radius = 0.5\n");
  RegularityProfile r = ResolveRegularity(cfg);
  EXPECT_EQ(r.lipschitz_g, 1.0);
  EXPECT_EQ(r.smoothness_beta, 1.0);
  EXPECT_EQ(r.growth_alpha, 1.0);
  cfg.lipschitz_g = 3.0;
  cfg.growth_alpha = 0.5;
  r = ResolveRegularity(cfg);
  EXPECT_EQ(r.lipschitz_g, 3.0);
  EXPECT_EQ(r.growth_alpha, 0.5);
  cfg = ParseConfigString(
      "dim = 2\nloss_family = logistic\nfeature_radius = 2\ngrowth_alpha = 0.1\n");
  r = ResolveRegularity(cfg);
  EXPECT_EQ(r.lipschitz_g, 2.0);
  EXPECT_EQ(r.smoothness_beta, 1.0);
  EXPECT_EQ(r.growth_alpha, 0.1);
}

TEST(SweepAxisTest, NamesRoundTrip) {
  for (SweepAxis axis : {SweepAxis::kSimilarity, SweepAxis::kSamples,
                         SweepAxis::kTaskCount, SweepAxis::kEpsilon}) {
    EXPECT_EQ(ParseSweepAxis(SweepAxisName(axis)), axis);
  }
  EXPECT_THROW(ParseSweepAxis("delta"), ConfigError);
}

TEST(ApplyAxisTest, ReplacesOneParameter) {
  const ExperimentConfig base = ParseConfigString("dim = 2\n");
  EXPECT_EQ(ApplyAxis(base, SweepAxis::kSimilarity, 0.5).env.similarity_v, 0.5);
  EXPECT_EQ(ApplyAxis(base, SweepAxis::kSamples, 250).env.samples_per_task, 250);
  EXPECT_EQ(ApplyAxis(base, SweepAxis::kTaskCount, 10).t_train, 10);
  EXPECT_EQ(ApplyAxis(base, SweepAxis::kEpsilon, 0.1).privacy.epsilon, 0.1);
  EXPECT_THROW(ApplyAxis(base, SweepAxis::kSamples, 2.5), ConfigError);
  EXPECT_THROW(ApplyAxis(base, SweepAxis::kTaskCount, 0), ConfigError);
}

}  // namespace
}  // namespace dpmeta
