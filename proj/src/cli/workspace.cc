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

#include "auggate/cli/workspace.h"

#include "auggate/error.h"
#include "auggate/http_providers.h"
#include "auggate/stub_providers.h"
#include "auggate/util/file_util.h"

#ifndef AUGGATE_DATA_DIR
#define AUGGATE_DATA_DIR "data"
#endif

namespace auggate::cli {

using nlohmann::json;

namespace {

providers::ProviderEndpoint Endpoint(const ProviderSpec& spec, providers::EndpointKind kind) {
  providers::ProviderEndpoint e;
  e.base_url = spec.url;
  e.kind = kind;
  e.timeout = std::chrono::milliseconds(spec.timeout_ms);
  e.max_in_flight = spec.max_in_flight;
  if (const char* token = std::getenv(spec.token_env.c_str()); token != nullptr && *token) {
    e.auth_token = std::string(token);
  }
  e.Validate();
  return e;
}

std::string UnknownStub(const std::string& kind, const std::string& stub,
                        const std::string& valid) {
  return "unknown " + kind + " stub '" + stub + "' (valid: " + valid + ")";
}

}  // namespace

Workspace::Workspace(RunConfig config) : config_(std::move(config)) {}
Workspace::~Workspace() = default;

std::filesystem::path Workspace::DataDir() const {
  return config_.data_dir.empty() ? std::filesystem::path(AUGGATE_DATA_DIR)
                                  : config_.Resolve(config_.data_dir);
}

const corpus::Dataset& Workspace::originals() {
  if (originals_) return *originals_;
  const std::filesystem::path path = config_.Resolve(config_.dataset.path);
  if (!std::filesystem::exists(path)) {
    throw ConfigError("dataset file not found: " + config_.dataset.path);
  }
  const corpus::FileFormat format = config_.dataset.format.empty()
                                        ? corpus::FormatForPath(path)
                                        : corpus::ParseFileFormat(config_.dataset.format);
  corpus::Dataset loaded = corpus::LoadDataset(path, format, config_.dataset.load);
  if (corpus::PresetTransformsText(config_.preset)) {
    const corpus::PreprocessConfig pre = corpus::LoadPreset(config_.preset, DataDir());
    std::vector<corpus::LabeledSentence> records;
    for (corpus::LabeledSentence r : loaded.records()) {
      r.text = corpus::Preprocess(r.text, pre);
      // Preprocessing can empty a record entirely; such rows carry nothing to
      // augment or classify.
      if (r.text.empty()) continue;
      records.push_back(std::move(r));
    }
    loaded = corpus::Dataset(loaded.name(), std::move(records), loaded.label_set());
  }
  originals_ = std::move(loaded);
  return *originals_;
}

augment::Eligibility Workspace::StrategyEligibility(bool use_stopwords) {
  if (!use_stopwords) return {};
  if (!eligibility_) {
    augment::Eligibility e;
    e.stopwords = corpus::LoadWordList(DataDir() / "stopwords.txt");
    e.keep_list = corpus::LoadWordList(DataDir() / "keep_words.txt");
    eligibility_ = std::move(e);
  }
  return *eligibility_;
}

const ProviderSpec& Workspace::Spec(const std::string& kind) const {
  auto it = config_.providers.find(kind);
  if (it == config_.providers.end() || !it->second.configured()) {
    throw ConfigError("no " + kind + " provider configured (set providers." + kind +
                      " or pass --stub-providers)");
  }
  return it->second;
}

providers::Embedder& Workspace::embedder() {
  if (embedder_) return *embedder_;
  const ProviderSpec& spec = Spec("embed");
  if (!spec.url.empty()) {
    embedder_base_ = std::make_unique<providers::HttpEmbedder>(
        Endpoint(spec, providers::EndpointKind::kEmbed));
  } else if (spec.stub == "trigram") {
    embedder_base_ = std::make_unique<providers::TrigramEmbedder>(
        spec.dimension > 0 ? spec.dimension : 1024);
  } else if (spec.stub == "hash") {
    embedder_base_ = std::make_unique<providers::HashEmbedder>(
        spec.dimension > 0 ? spec.dimension : 64, config_.seed.value_or(0));
  } else if (spec.stub == "fixture") {
    embedder_base_ = std::make_unique<providers::FixtureEmbedder>(
        providers::FixtureEmbedder::FromJsonFile(config_.Resolve(spec.fixture)));
  } else {
    throw ConfigError(UnknownStub("embed", spec.stub, "trigram, hash, fixture"));
  }
  embedder_ = std::make_unique<providers::CachingEmbedder>(*embedder_base_);
  return *embedder_;
}

providers::Translator& Workspace::translator(const std::set<std::string>& languages) {
  if (translator_) return *translator_;
  const ProviderSpec& spec = Spec("translate");
  std::set<std::string> supported = spec.languages;
  if (supported.empty()) {
    supported = providers::DefaultLanguages();
    supported.insert(languages.begin(), languages.end());
  }
  supported.insert("en");
  if (!spec.url.empty()) {
    translator_ = std::make_unique<providers::HttpTranslator>(
        Endpoint(spec, providers::EndpointKind::kTranslate), supported);
  } else if (spec.stub == "pseudo") {
    translator_ = std::make_unique<providers::PseudoTranslator>(config_.seed.value_or(0), supported);
  } else if (spec.stub == "identity") {
    translator_ = std::make_unique<providers::IdentityTranslator>(supported);
  } else if (spec.stub == "dictionary") {
    translator_ = std::make_unique<providers::DictionaryTranslator>(
        providers::DictionaryTranslator::FromJsonFile(config_.Resolve(spec.fixture)));
  } else {
    throw ConfigError(UnknownStub("translate", spec.stub, "pseudo, identity, dictionary"));
  }
  return *translator_;
}

providers::MaskFiller& Workspace::filler() {
  if (filler_) return *filler_;
  const ProviderSpec& spec = Spec("fill_mask");
  if (!spec.url.empty()) {
    filler_ = std::make_unique<providers::HttpMaskFiller>(
        Endpoint(spec, providers::EndpointKind::kFillMask), spec.mask_token);
  } else if (spec.stub == "vocab") {
    filler_ = std::make_unique<providers::VocabMaskFiller>(config_.seed.value_or(0));
  } else {
    throw ConfigError(UnknownStub("fill_mask", spec.stub, "vocab"));
  }
  return *filler_;
}

providers::ChatModel& Workspace::chat() {
  if (chat_) return *chat_;
  const ProviderSpec& spec = Spec("chat");
  if (!spec.url.empty()) {
    chat_ = std::make_unique<providers::OpenAiChat>(
        Endpoint(spec, providers::EndpointKind::kChat),
        spec.path.empty() ? "/v1/chat/completions" : spec.path);
  } else if (spec.stub == "template") {
    chat_ = std::make_unique<providers::TemplateChat>(config_.seed.value_or(0));
  } else if (spec.stub == "canned") {
    json j;
    try {
      j = json::parse(ReadFileToString(config_.Resolve(spec.fixture)));
    } catch (const json::exception& e) {
      throw ConfigError("canned chat fixture: " + std::string(e.what()));
    }
    auto canned = std::make_unique<providers::CannedChat>(j.value("default", ""));
    if (j.contains("responses")) {
      for (const auto& [text, response] : j["responses"].items()) {
        canned->Add(text, response.get<std::string>());
      }
    }
    chat_ = std::move(canned);
  } else {
    throw ConfigError(UnknownStub("chat", spec.stub, "template, canned"));
  }
  return *chat_;
}

const lexicon::Thesaurus& Workspace::thesaurus() {
  if (thesaurus_) return *thesaurus_;
  if (config_.wordnet_dir.empty()) {
    throw ConfigError("the wordnet strategy needs resources.wordnet_dir");
  }
  thesaurus_ = std::make_unique<lexicon::Thesaurus>(
      lexicon::Thesaurus::LoadWordNetDir(config_.Resolve(config_.wordnet_dir)));
  return *thesaurus_;
}

const lexicon::EmbeddingTable& Workspace::table() {
  if (table_) return *table_;
  if (config_.vectors.empty()) {
    throw ConfigError("the embedding strategy needs resources.vectors");
  }
  lexicon::VecLoadOptions options;
  options.limit = config_.vectors_limit;
  table_ = std::make_unique<lexicon::EmbeddingTable>(
      lexicon::LoadVecTable(config_.Resolve(config_.vectors), options));
  return *table_;
}

json Workspace::ProviderIdentities() const {
  json j = json::object();
  if (embedder_) j["embed"] = embedder_->Describe();
  if (translator_) j["translate"] = translator_->Describe();
  if (filler_) j["fill_mask"] = filler_->Describe();
  if (chat_) j["chat"] = chat_->Describe();
  return j;
}

}  // namespace auggate::cli
