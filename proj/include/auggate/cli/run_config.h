// Copyright 2026 The AugGate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef AUGGATE_CLI_RUN_CONFIG_H_
#define AUGGATE_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "auggate/augment.h"
#include "auggate/classify.h"
#include "auggate/corpus.h"
#include "auggate/eval.h"
#include "auggate/gate.h"
#include "json.hpp"

namespace auggate::cli {

inline constexpr char kDefaultTokenEnv[] = "AUGGATE_API_TOKEN";

// One provider kind: either a stub (with optional fixture file) or a URL.
struct ProviderSpec {
  std::string stub;
  std::string fixture;
  int dimension = 0;
  std::string url;
  std::string path;
  std::string token_env = kDefaultTokenEnv;
  int timeout_ms = 30000;
  int max_in_flight = 4;
  std::string mask_token = "[MASK]";
  std::set<std::string> languages;

  bool configured() const { return !stub.empty() || !url.empty(); }
  nlohmann::json ToJson() const;
};

struct DatasetSpec {
  std::string path;
  std::string format;  // empty: from the extension
  corpus::LoadOptions load;
};

struct StrategySpec {
  // Output file stem; defaults to the method name.
  std::string name;
  augment::StrategyConfig config;
  // Skip stopwords (minus person indicators) when picking substitution
  // targets.
  bool use_stopwords = true;
};

struct RunConfig {
  // Relative paths resolve against this directory.
  std::filesystem::path base_dir;
  std::optional<uint64_t> seed;
  std::string output_dir = "out";
  DatasetSpec dataset;
  std::string preset = "none";
  std::string data_dir;
  corpus::SplitRatios split;
  uint64_t split_seed = 102;
  std::vector<StrategySpec> strategies;
  gate::GateConfig gate;
  std::vector<double> sweep = {0.5, 0.7, 0.9};
  // Keys: embed, translate, fill_mask, chat.
  std::map<std::string, ProviderSpec> providers;
  std::string wordnet_dir;
  std::string vectors;
  std::optional<size_t> vectors_limit;
  eval::AuditOptions audit;
  classify::TrainConfig probe;
  std::string positive_label = "1";
  std::vector<int> overfit_levels = {0, 1, 2};
  int coverage_dimension = 2;
  std::string paired_scores;
  int workers = 1;
  // Largest tolerated fraction of failed records per strategy.
  double failure_tolerance = 0.0;

  std::filesystem::path Resolve(const std::string& path) const;
  std::filesystem::path OutputPath() const { return Resolve(output_dir); }
  uint64_t RequireSeed() const;

  // Canonical form with defaults filled in; never holds secrets.
  nlohmann::json ToJson() const;
};

// Replaces ${NAME} in every string value with the environment variable.
// Throws ConfigError for an unset variable.
nlohmann::json InterpolateEnv(const nlohmann::json& value);

// Throws ConfigError for unknown keys, bad values, inline secrets, or a
// provider configured both as stub and URL.
RunConfig ParseRunConfig(const nlohmann::json& json, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<double> threshold;
  std::optional<uint64_t> split_seed;
  std::optional<std::vector<std::string>> strategies;
  bool stub_providers = false;
};

// Flags win over config values. --strategies keeps only the named entries,
// adding default-configured ones for names absent from the config.
void ApplyOverrides(RunConfig* config, const Overrides& overrides);

// SHA-256 of the canonical config without the output directory.
std::string ConfigHash(const RunConfig& config);

}  // namespace auggate::cli

#endif  // AUGGATE_CLI_RUN_CONFIG_H_
