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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <system_error>
#include <type_traits>

#include "dpmeta/errors.h"

namespace dpmeta {
namespace {

constexpr std::string_view kKnownKeys[] = {
    "dim",
    "domain_radius",
    "domain_center",
    "planted_center",
    "phi1",
    "similarity_v",
    "samples_per_task",
    "loss_family",
    "curvature",
    "sample_noise_std",
    "feature_radius",
    "t_train",
    "t_eval",
    "epsilon",
    "delta",
    "group_size",
    "visits_per_task",
    "lipschitz_g",
    "smoothness_beta",
    "growth_alpha",
    "gamma_variant",
    "master_seed",
    "baseline_no_meta",
    "baseline_nonprivate_meta",
    "eval_mc_samples",
    "output_path",
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
std::optional<T> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

// Pulls typed values out of the raw key map and accumulates problems.
class Reader {
 public:
  explicit Reader(std::map<std::string, std::string, std::less<>> raw)
      : raw_(std::move(raw)) {}

  std::vector<std::string>& errors() { return errors_; }

  bool Has(std::string_view key) const { return raw_.contains(key); }

  template <class T>
  void Number(std::string_view key, T& out) {
    const auto it = raw_.find(key);
    if (it == raw_.end()) return;
    if (auto value = ParseNumber<T>(it->second)) {
      if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(*value)) {
          Fail(key, it->second, "a finite number");
          return;
        }
      }
      out = *value;
    } else {
      Fail(key, it->second, std::is_floating_point_v<T> ? "a number"
                                                         : "an integer");
    }
  }

  template <class T>
  void Optional(std::string_view key, std::optional<T>& out) {
    if (!Has(key)) return;
    T value{};
    const std::size_t before = errors_.size();
    Number(key, value);
    if (errors_.size() == before) out = value;
  }

  void Bool(std::string_view key, bool& out) {
    const auto it = raw_.find(key);
    if (it == raw_.end()) return;
    const std::string_view v = it->second;
    if (v == "true" || v == "1" || v == "yes") {
      out = true;
    } else if (v == "false" || v == "0" || v == "no") {
      out = false;
    } else {
      Fail(key, v, "true or false");
    }
  }

  void String(std::string_view key, std::string& out) {
    const auto it = raw_.find(key);
    if (it != raw_.end()) out = it->second;
  }

  // Comma-separated list of `dim` numbers, or a single number broadcast to
  // every coordinate.
  std::optional<ParamVector> Vector(std::string_view key, int dim) {
    const auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    std::vector<double> values;
    std::string_view rest = it->second;
    while (true) {
      const auto comma = rest.find(',');
      const auto value = ParseNumber<double>(rest.substr(0, comma));
      if (!value || !std::isfinite(*value)) {
        Fail(key, it->second, "a comma-separated list of numbers");
        return std::nullopt;
      }
      values.push_back(*value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (dim < 1) return std::nullopt;
    if (values.size() == 1) {
      return ParamVector::Constant(dim, values.front());
    }
    if (values.size() != static_cast<std::size_t>(dim)) {
      errors_.push_back(std::string(key) + ": expected " +
                        std::to_string(dim) + " coordinates, got " +
                        std::to_string(values.size()));
      return std::nullopt;
    }
    return Eigen::Map<const ParamVector>(values.data(), dim);
  }

 private:
  void Fail(std::string_view key, std::string_view value,
            std::string_view expected) {
    errors_.push_back(std::string(key) + ": '" + std::string(value) +
                      "' is not " + std::string(expected));
  }

  std::map<std::string, std::string, std::less<>> raw_;
  std::vector<std::string> errors_;
};

bool IsKnownKey(std::string_view key) {
  for (std::string_view known : kKnownKeys) {
    if (known == key) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> ExperimentConfig::Violations() const {
  std::vector<std::string> out;
  const ParamDomain& dom = env.domain;
  if (!(dom.radius() > 0.0)) out.push_back("domain_radius must be positive");
  if (env.planted_center.size() != dom.dim()) {
    out.push_back("planted_center: dimension mismatch");
  } else if (!dom.Contains(env.planted_center)) {
    out.push_back("planted_center lies outside the domain");
  }
  if (phi1 && (phi1->size() != dom.dim() || !dom.Contains(*phi1))) {
    out.push_back("phi1 lies outside the domain");
  }
  if (!(env.similarity_v >= 0.0) || env.similarity_v > dom.radius()) {
    out.push_back("similarity_v must satisfy 0 <= V <= domain_radius");
  }
  if (env.samples_per_task < 1) out.push_back("samples_per_task must be >= 1");
  if (env.family == LossFamily::kQuadratic && !(env.curvature > 0.0)) {
    out.push_back("curvature must be positive");
  }
  if (!(env.sample_noise_std >= 0.0)) {
    out.push_back("sample_noise_std must be nonnegative");
  }
  if (env.family == LossFamily::kLogistic) {
    if (!(env.feature_radius > 0.0)) {
      out.push_back("feature_radius must be positive");
    }
    if (!growth_alpha) {
      out.push_back("growth_alpha is required for the logistic family");
    }
    if (eval_mc_samples < 2) {
      out.push_back("eval_mc_samples must be >= 2 for the logistic family");
    }
  }
  if (t_train < 1) out.push_back("t_train must be >= 1");
  if (t_eval < 1) out.push_back("t_eval must be >= 1");
  if (!(privacy.epsilon > 0.0)) out.push_back("epsilon must be positive");
  if (!(privacy.delta > 0.0 && privacy.delta < 1.0)) {
    out.push_back("delta must lie within (0, 1)");
  }
  if (privacy.group_size < 1) out.push_back("group_size must be >= 1");
  if (visits_per_task < 1) out.push_back("visits_per_task must be >= 1");
  if (lipschitz_g && !(*lipschitz_g > 0.0)) {
    out.push_back("lipschitz_g must be positive");
  }
  if (smoothness_beta && !(*smoothness_beta > 0.0)) {
    out.push_back("smoothness_beta must be positive");
  }
  if (growth_alpha && !(*growth_alpha > 0.0)) {
    out.push_back("growth_alpha must be positive");
  }
  return out;
}

void ExperimentConfig::Validate() const {
  std::vector<std::string> violations = Violations();
  if (!violations.empty()) throw ConfigError(std::move(violations));
}

RegularityProfile ResolveRegularity(const ExperimentConfig& config) {
  RegularityProfile profile;
  if (config.env.family == LossFamily::kQuadratic) {
    profile = QuadraticRegularity(config.env.curvature, config.env.domain);
  } else {
    profile = LogisticRegularity(config.env.feature_radius,
                                 config.growth_alpha.value_or(1.0));
  }
  if (config.lipschitz_g) profile.lipschitz_g = *config.lipschitz_g;
  if (config.smoothness_beta) profile.smoothness_beta = *config.smoothness_beta;
  if (config.growth_alpha) profile.growth_alpha = *config.growth_alpha;
  return profile;
}

ExperimentConfig ParseConfig(std::istream& in) {
  std::vector<std::string> errors;
  std::map<std::string, std::string, std::less<>> raw;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_number) +
                       ": expected 'key = value'");
      continue;
    }
    const std::string key(Trim(view.substr(0, eq)));
    const std::string value(Trim(view.substr(eq + 1)));
    if (!IsKnownKey(key)) {
      errors.push_back("line " + std::to_string(line_number) +
                       ": unknown key '" + key + "'");
    } else if (!raw.emplace(key, value).second) {
      errors.push_back("line " + std::to_string(line_number) +
                       ": duplicate key '" + key + "'");
    }
  }

  Reader reader(std::move(raw));
  ExperimentConfig config;

  int dim = 0;
  if (!reader.Has("dim")) {
    reader.errors().push_back("dim is required");
  } else {
    reader.Number("dim", dim);
    if (dim < 1) {
      reader.errors().push_back("dim must be >= 1");
      dim = 0;
    }
  }

  double radius = 1.0;
  reader.Number("domain_radius", radius);
  if (dim > 0) {
    ParamVector center = reader.Vector("domain_center", dim)
                             .value_or(ParamVector::Zero(dim));
    if (std::isfinite(radius) && radius >= 0.0) {
      config.env.domain = ParamDomain(center, radius);
    } else {
      reader.errors().push_back("domain_radius must be nonnegative");
      config.env.domain = ParamDomain(center, 1.0);
    }
    config.env.planted_center = reader.Vector("planted_center", dim)
                                    .value_or(config.env.domain.center());
    config.phi1 = reader.Vector("phi1", dim);
  }

  reader.Number("similarity_v", config.env.similarity_v);
  reader.Number("samples_per_task", config.env.samples_per_task);
  std::string family = "quadratic";
  reader.String("loss_family", family);
  if (family == "quadratic") {
    config.env.family = LossFamily::kQuadratic;
  } else if (family == "logistic") {
    config.env.family = LossFamily::kLogistic;
  } else {
    reader.errors().push_back("loss_family: '" + family +
                              "' is not quadratic or logistic");
  }
  reader.Number("curvature", config.env.curvature);
  reader.Number("sample_noise_std", config.env.sample_noise_std);
  reader.Number("feature_radius", config.env.feature_radius);
  reader.Number("t_train", config.t_train);
  reader.Number("t_eval", config.t_eval);
  reader.Number("epsilon", config.privacy.epsilon);
  reader.Number("delta", config.privacy.delta);
  reader.Number("group_size", config.privacy.group_size);
  reader.Number("visits_per_task", config.visits_per_task);
  reader.Optional("lipschitz_g", config.lipschitz_g);
  reader.Optional("smoothness_beta", config.smoothness_beta);
  reader.Optional("growth_alpha", config.growth_alpha);
  std::string variant = "sqrt_m";
  reader.String("gamma_variant", variant);
  if (variant == "sqrt_m") {
    config.gamma_variant = GammaVariant::kSqrtM;
  } else if (variant == "g_sqrt_m") {
    config.gamma_variant = GammaVariant::kGSqrtM;
  } else {
    reader.errors().push_back("gamma_variant: '" + variant +
                              "' is not sqrt_m or g_sqrt_m");
  }
  reader.Number("master_seed", config.master_seed);
  reader.Bool("baseline_no_meta", config.baseline_no_meta);
  reader.Bool("baseline_nonprivate_meta", config.baseline_nonprivate_meta);
  reader.Number("eval_mc_samples", config.eval_mc_samples);
  reader.String("output_path", config.output_path);

  errors.insert(errors.end(), reader.errors().begin(), reader.errors().end());
  if (dim > 0) {
    std::vector<std::string> violations = config.Violations();
    errors.insert(errors.end(), violations.begin(), violations.end());
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

ExperimentConfig ParseConfigString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConfig(in);
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  return ParseConfig(in);
}

std::string_view SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSimilarity:
      return "V";
    case SweepAxis::kSamples:
      return "m";
    case SweepAxis::kTaskCount:
      return "T_train";
    case SweepAxis::kEpsilon:
      return "epsilon";
  }
  return "unknown";
}

SweepAxis ParseSweepAxis(std::string_view name) {
  if (name == "V") return SweepAxis::kSimilarity;
  if (name == "m") return SweepAxis::kSamples;
  if (name == "T_train") return SweepAxis::kTaskCount;
  if (name == "epsilon") return SweepAxis::kEpsilon;
  throw ConfigError({"unknown sweep axis '" + std::string(name) +
                     "' (expected V, m, T_train or epsilon)"});
}

ExperimentConfig ApplyAxis(const ExperimentConfig& config, SweepAxis axis,
                           double value) {
  ExperimentConfig out = config;
  const auto as_count = [&](std::string_view what) {
    if (value != std::floor(value) || value < 1.0) {
      throw ConfigError({std::string(what) + " sweep values must be positive "
                                             "integers"});
    }
    return static_cast<std::int64_t>(value);
  };
  switch (axis) {
    case SweepAxis::kSimilarity:
      out.env.similarity_v = value;
      break;
    case SweepAxis::kSamples:
      out.env.samples_per_task = as_count("m");
      break;
    case SweepAxis::kTaskCount:
      out.t_train = as_count("T_train");
      break;
    case SweepAxis::kEpsilon:
      out.privacy.epsilon = value;
      break;
  }
  return out;
}

}  // namespace dpmeta
