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


#ifndef AUGGATE_CLI_WORKSPACE_H_
#define AUGGATE_CLI_WORKSPACE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "auggate/cli/run_config.h"
#include "auggate/corpus.h"
#include "auggate/lexicon.h"
#include "auggate/preprocess.h"
#include "auggate/providers.h"
#include "json.hpp"

namespace auggate::cli {

// Lazily builds the dataset, lexical resources and providers a command
// needs. Throws ConfigError when a required piece is not configured.
class Workspace {
 public:
  explicit Workspace(RunConfig config);
  ~Workspace();

  const RunConfig& config() const { return config_; }
  uint64_t seed() const { return config_.RequireSeed(); }

  // Loaded and preprocessed with the configured preset.
  const corpus::Dataset& originals();
  std::filesystem::path DataDir() const;
  // Stopwords and person indicators from the data directory.
  augment::Eligibility StrategyEligibility(bool use_stopwords);

  providers::Embedder& embedder();
  providers::Translator& translator(const std::set<std::string>& languages);
  providers::MaskFiller& filler();
  providers::ChatModel& chat();
  const lexicon::Thesaurus& thesaurus();
  const lexicon::EmbeddingTable& table();

  // kind -> Describe() for every provider built so far.
  nlohmann::json ProviderIdentities() const;

 private:
  const ProviderSpec& Spec(const std::string& kind) const;

  RunConfig config_;
  std::optional<corpus::Dataset> originals_;
  std::optional<augment::Eligibility> eligibility_;
  std::unique_ptr<providers::Embedder> embedder_base_;
  std::unique_ptr<providers::Embedder> embedder_;
  std::unique_ptr<providers::Translator> translator_;
  std::unique_ptr<providers::MaskFiller> filler_;
  std::unique_ptr<providers::ChatModel> chat_;
  std::unique_ptr<lexicon::Thesaurus> thesaurus_;
  std::unique_ptr<lexicon::EmbeddingTable> table_;
};

}  // namespace auggate::cli

#endif  // AUGGATE_CLI_WORKSPACE_H_
