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

#ifndef AUGGATE_AUGMENT_H_
#define AUGGATE_AUGMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "auggate/corpus.h"
#include "auggate/lexicon.h"
#include "auggate/providers.h"
#include "auggate/util/rng.h"
#include "json.hpp"

namespace auggate::augment {

enum class Method { kWordNet, kEmbedding, kBackTranslation, kMlm, kLlm };

std::string_view MethodName(Method method);
// Accepts the names MethodName produces. Throws ConfigError otherwise.
Method ParseMethod(std::string_view name);
const std::vector<Method>& AllMethods();

// A generated sentence plus provenance. similarity/accepted stay empty
// until the candidate passes through the gate.
struct AugmentedCandidate {
  std::string source_id;
  std::string text;
  std::string label;
  Method method = Method::kWordNet;
  nlohmann::json detail = nlohmann::json::object();
  std::optional<double> similarity;
  std::optional<bool> accepted;
  // Why a candidate was rejected without a score ("degenerate") or left
  // ungated (provider failure). Empty otherwise.
  std::string gate_note;

  nlohmann::json ToJson() const;
  static AugmentedCandidate FromJson(const nlohmann::json& j);
};

std::vector<AugmentedCandidate> ReadCandidates(const std::filesystem::path& path);
void WriteCandidates(const std::vector<AugmentedCandidate>& candidates,
                     const std::filesystem::path& path);

// Ordered intermediate languages of one back-translation round trip. The
// source and final language are always "en".
class LanguageChain {
 public:
  // Throws PreconditionError unless 1 <= |hops| <= max_len, no code repeats
  // immediately, and "en" is absent.
  explicit LanguageChain(std::vector<std::string> hops, int max_len = 8);

  const std::vector<std::string>& hops() const { return hops_; }
  // "en>ar>it>en"
  std::string Path() const;

  auto operator<=>(const LanguageChain&) const = default;

 private:
  std::vector<std::string> hops_;
};

// All ordered selections without repetition of length 1..max_len, shorter
// chains first, each length in lexicographic order.
std::vector<LanguageChain> EnumerateChains(const std::set<std::string>& languages,
                                           int max_len);

// Which tokens substitution strategies may replace.
struct Eligibility {
  std::set<std::string> stopwords;
  // Never treated as stopwords (person indicators).
  std::set<std::string> keep_list;

  // Alphabetic core, and not a stopword unless kept.
  bool IsEligible(std::string_view core) const;
};

struct MaskPlan {
  int token_count = 0;
  int mask_count = 0;
  // Ascending, distinct, within [0, token_count).
  std::vector<int> positions;
};

// max(1, half-up round(token_count * ratio)).
int MaskCount(int token_count, double ratio);
MaskPlan SampleMaskPlan(int token_count, double ratio, Rng& rng);

// Sends the sentence en -> hops... -> en. Returns a candidate only when the
// result differs from the source under NormalizeForComparison.
std::optional<AugmentedCandidate> BackTranslate(
    const corpus::LabeledSentence& sentence, const LanguageChain& chain,
    providers::Translator& translator);

struct WordNetOptions {
  Eligibility eligibility;
  lexicon::PartOfSpeech pos = lexicon::PartOfSpeech::kAny;
  bool include_multiword = false;
};

// One candidate per (eligible position, synonym), replacing a single word.
std::vector<AugmentedCandidate> WordNetSubstitute(
    const corpus::LabeledSentence& sentence, const lexicon::Thesaurus& thesaurus,
    const WordNetOptions& options);

struct EmbeddingOptions {
  Eligibility eligibility;
  int k = 5;
  // 1: replace one word at a time. 2: replace both words of every pair of
  // target positions with every combination of their neighbours.
  int target_count = 1;
  // Only the first max_targets eligible in-vocabulary positions are paired
  // when target_count == 2.
  int max_targets = 4;
};

std::vector<AugmentedCandidate> EmbeddingSubstitute(
    const corpus::LabeledSentence& sentence, const lexicon::EmbeddingTable& table,
    const EmbeddingOptions& options);

struct MlmOptions {
  int iterations = 50;
  double mask_ratio = 0.15;
  int top_k = 5;
  uint64_t seed = 102;
};

// Per iteration: sample a MaskPlan from the (seed, sentence id, iteration)
// stream, fill the masked words left to right (each fill sees the earlier
// ones), taking the best candidate that differs from the original word.
// Provider errors abort only that iteration and are appended to
// iteration_errors.
std::vector<AugmentedCandidate> MlmSubstitute(
    const corpus::LabeledSentence& sentence, providers::MaskFiller& filler,
    const MlmOptions& options,
    std::vector<std::string>* iteration_errors = nullptr);

// Up to spec.n_variants distinct variants, label inherited, the source
// itself dropped. Unparseable responses give an empty list and a warning.
std::vector<AugmentedCandidate> LlmGenerate(
    const corpus::LabeledSentence& sentence, providers::ChatModel& chat,
    const providers::ChatPromptSpec& spec,
    std::vector<std::string>* warnings = nullptr);

struct StrategyConfig {
  Method method = Method::kBackTranslation;
  // Back-translation.
  std::set<std::string> languages = {"ar", "hi", "it"};
  int max_chain_len = 2;
  // Substitution.
  WordNetOptions wordnet;
  EmbeddingOptions embedding;
  // Masked LM; its seed is overridden by the run seed.
  MlmOptions mlm;
  // LLM.
  providers::ChatPromptSpec prompt = providers::ChatPromptSpec::Default();
  // Records processed concurrently.
  int workers = 1;
};

// Whatever the chosen method needs; unused members may be null.
struct Resources {
  const lexicon::Thesaurus* thesaurus = nullptr;
  const lexicon::EmbeddingTable* table = nullptr;
  providers::Translator* translator = nullptr;
  providers::MaskFiller* filler = nullptr;
  providers::ChatModel* chat = nullptr;
};

struct RecordError {
  size_t record_index = 0;
  std::string record_id;
  std::string message;
};

struct RunStats {
  size_t records = 0;
  size_t candidates = 0;
  size_t failed_records = 0;
  std::vector<RecordError> errors;
  // Non-fatal notes (MLM iteration failures, unparseable chat answers).
  std::vector<std::string> warnings;
};

using ProgressFn = std::function<void(size_t done, size_t total)>;

// Runs one strategy over every record. Output is grouped by record in
// dataset order regardless of worker scheduling. Per-record failures are
// tallied in stats; only configuration problems throw (ConfigError).
std::vector<AugmentedCandidate> RunStrategy(const corpus::Dataset& dataset,
                                            const StrategyConfig& config,
                                            const Resources& resources,
                                            uint64_t seed,
                                            RunStats* stats = nullptr,
                                            const ProgressFn& progress = {});

// Drops later candidates whose text exactly repeats an earlier candidate
// for the same source.
std::vector<AugmentedCandidate> DeduplicateCandidates(
    std::vector<AugmentedCandidate> candidates);

}  // namespace auggate::augment

#endif  // AUGGATE_AUGMENT_H_
