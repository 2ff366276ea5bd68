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

#include "auggate/augment.h"

#include <cmath>
#include <mutex>
#include <unordered_set>

#include "auggate/error.h"
#include "auggate/util/file_util.h"
#include "auggate/util/parallel.h"
#include "auggate/util/text.h"

namespace auggate::augment {

using corpus::LabeledSentence;
using nlohmann::json;

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kWordNet:
      return "wordnet";
    case Method::kEmbedding:
      return "embedding";
    case Method::kBackTranslation:
      return "back_translation";
    case Method::kMlm:
      return "mlm";
    case Method::kLlm:
      break;
  }
  return "llm";
}

const std::vector<Method>& AllMethods() {
  static const std::vector<Method> kAll = {Method::kWordNet, Method::kEmbedding,
                                           Method::kBackTranslation, Method::kMlm,
                                           Method::kLlm};
  return kAll;
}

Method ParseMethod(std::string_view name) {
  for (Method m : AllMethods()) {
    if (MethodName(m) == name) return m;
  }
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (valid: wordnet, embedding, back_translation, mlm, llm)");
}

json AugmentedCandidate::ToJson() const {
  json j;
  j["source_id"] = source_id;
  j["text"] = text;
  j["label"] = label;
  j["method"] = MethodName(method);
  j["detail"] = detail;
  j["similarity"] = similarity ? json(*similarity) : json(nullptr);
  j["accepted"] = accepted ? json(*accepted) : json(nullptr);
  if (!gate_note.empty()) j["gate_note"] = gate_note;
  return j;
}

AugmentedCandidate AugmentedCandidate::FromJson(const json& j) {
  AugmentedCandidate c;
  try {
    c.source_id = j.at("source_id").get<std::string>();
    c.text = j.at("text").get<std::string>();
    c.label = j.at("label").get<std::string>();
    c.method = ParseMethod(j.at("method").get<std::string>());
    if (j.contains("detail")) c.detail = j["detail"];
    if (j.contains("similarity") && !j["similarity"].is_null()) {
      c.similarity = j["similarity"].get<double>();
    }
    if (j.contains("accepted") && !j["accepted"].is_null()) {
      c.accepted = j["accepted"].get<bool>();
    }
    if (j.contains("gate_note")) c.gate_note = j["gate_note"].get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed candidate record: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
  return c;
}

std::vector<AugmentedCandidate> ReadCandidates(const std::filesystem::path& path) {
  std::vector<AugmentedCandidate> out;
  int64_t line = 0;
  for (const json& j : ReadJsonLines(path)) {
    ++line;
    try {
      out.push_back(AugmentedCandidate::FromJson(j));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what(),
                       ParseError::Location::kRow, line - 1);
    }
  }
  return out;
}

void WriteCandidates(const std::vector<AugmentedCandidate>& candidates,
                     const std::filesystem::path& path) {
  std::string out;
  for (const AugmentedCandidate& c : candidates) {
    out += c.ToJson().dump();
    out.push_back('\n');
  }
  WriteFileAtomic(path, out);
}

LanguageChain::LanguageChain(std::vector<std::string> hops, int max_len)
    : hops_(std::move(hops)) {
  if (hops_.empty() || static_cast<int>(hops_.size()) > max_len) {
    throw PreconditionError("language chain length must be in [1, " +
                            std::to_string(max_len) + "]");
  }
  for (size_t i = 0; i < hops_.size(); ++i) {
    if (hops_[i] == "en") {
      throw PreconditionError("language chain may not route through en");
    }
    if (i > 0 && hops_[i] == hops_[i - 1]) {
      throw PreconditionError("language chain repeats " + hops_[i]);
    }
  }
}

std::string LanguageChain::Path() const {
  return "en>" + Join(hops_, ">") + ">en";
}

std::vector<LanguageChain> EnumerateChains(const std::set<std::string>& languages,
                                           int max_len) {
  if (languages.empty()) throw PreconditionError("no languages to chain");
  if (languages.contains("en")) {
    throw PreconditionError("intermediate languages may not include en");
  }
  const std::vector<std::string> langs(languages.begin(), languages.end());
  std::vector<LanguageChain> out;
  std::vector<std::string> current;
  std::vector<bool> used(langs.size(), false);
  for (int len = 1; len <= max_len && len <= static_cast<int>(langs.size()); ++len) {
    // Depth-first over sorted codes yields lexicographic order per length.
    std::function<void()> extend = [&] {
      if (static_cast<int>(current.size()) == len) {
        out.emplace_back(current, max_len);
        return;
      }
      for (size_t i = 0; i < langs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        current.push_back(langs[i]);
        extend();
        current.pop_back();
        used[i] = false;
      }
    };
    extend();
  }
  return out;
}

bool Eligibility::IsEligible(std::string_view core) const {
  if (!IsAlphabeticWord(core)) return false;
  const std::string lower = AsciiLower(core);
  return !stopwords.contains(lower) || keep_list.contains(lower);
}

int MaskCount(int token_count, double ratio) {
  // The epsilon absorbs representation error at exact halves (10 * 0.15).
  const int rounded =
      static_cast<int>(std::floor(token_count * ratio + 0.5 + 1e-9));
  return std::clamp(rounded, 1, std::max(token_count, 1));
}

MaskPlan SampleMaskPlan(int token_count, double ratio, Rng& rng) {
  if (token_count < 1) throw PreconditionError("nothing to mask");
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw PreconditionError("mask ratio must be in (0, 1]");
  }
  MaskPlan plan;
  plan.token_count = token_count;
  plan.mask_count = MaskCount(token_count, ratio);
  plan.positions = rng.SampleWithoutReplacement(token_count, plan.mask_count);
  std::sort(plan.positions.begin(), plan.positions.end());
  return plan;
}

namespace {

AugmentedCandidate MakeCandidate(const LabeledSentence& sentence, std::string text,
                                 Method method, json detail) {
  AugmentedCandidate c;
  c.source_id = sentence.id;
  c.text = std::move(text);
  c.label = sentence.label;
  c.method = method;
  c.detail = std::move(detail);
  return c;
}

// Collects candidates for one source, skipping texts equal to the source or
// to an earlier candidate.
class CandidateSink {
 public:
  explicit CandidateSink(const LabeledSentence& sentence)
      : sentence_(sentence) {
    seen_.insert(NormalizeForComparison(sentence.text));
  }

  bool Add(std::string text, Method method, json detail) {
    if (!seen_.insert(NormalizeForComparison(text)).second) return false;
    out_.push_back(MakeCandidate(sentence_, std::move(text), method, std::move(detail)));
    return true;
  }

  std::vector<AugmentedCandidate> Take() { return std::move(out_); }

 private:
  const LabeledSentence& sentence_;
  std::unordered_set<std::string> seen_;
  std::vector<AugmentedCandidate> out_;
};

std::string ReplaceToken(const std::vector<std::string>& tokens, size_t pos,
                         const std::string& replacement) {
  std::vector<std::string> copy = tokens;
  TokenParts parts = SplitTokenAffixes(tokens[pos]);
  copy[pos] = parts.prefix + MatchCase(parts.core, replacement) + parts.suffix;
  return Join(copy, " ");
}

}  // namespace

std::optional<AugmentedCandidate> BackTranslate(const LabeledSentence& sentence,
                                                const LanguageChain& chain,
                                                providers::Translator& translator) {
  std::vector<std::string> current = {sentence.text};
  std::string source = "en";
  std::vector<std::string> route = chain.hops();
  route.push_back("en");
  try {
    for (const std::string& target : route) {
      current = providers::Translate(translator, current, source, target);
      source = target;
    }
  } catch (const ProviderError& e) {
    throw ProviderError(e.kind(), chain.Path() + ": " + e.what(), e.status(),
                        e.detail());
  }
  std::string result = Trim(current.front());
  if (result.empty() ||
      NormalizeForComparison(result) == NormalizeForComparison(sentence.text)) {
    return std::nullopt;
  }
  json detail = {{"chain", chain.hops()}, {"path", chain.Path()}};
  return MakeCandidate(sentence, std::move(result), Method::kBackTranslation,
                       std::move(detail));
}

std::vector<AugmentedCandidate> WordNetSubstitute(const LabeledSentence& sentence,
                                                  const lexicon::Thesaurus& thesaurus,
                                                  const WordNetOptions& options) {
  CandidateSink sink(sentence);
  const std::vector<std::string> tokens = SplitWhitespace(sentence.text);
  for (size_t pos = 0; pos < tokens.size(); ++pos) {
    const std::string core = SplitTokenAffixes(tokens[pos]).core;
    if (!options.eligibility.IsEligible(core)) continue;
    const lexicon::SynonymSet synonyms =
        thesaurus.Lookup(core, options.pos, options.include_multiword);
    for (const std::string& synonym : synonyms.synonyms) {
      sink.Add(ReplaceToken(tokens, pos, synonym), Method::kWordNet,
               {{"position", pos}, {"original", core}, {"replacement", synonym}});
    }
  }
  return sink.Take();
}

std::vector<AugmentedCandidate> EmbeddingSubstitute(
    const LabeledSentence& sentence, const lexicon::EmbeddingTable& table,
    const EmbeddingOptions& options) {
  if (options.k < 1) throw PreconditionError("k must be at least 1");
  if (options.target_count != 1 && options.target_count != 2) {
    throw PreconditionError("target_count must be 1 or 2");
  }
  CandidateSink sink(sentence);
  const std::vector<std::string> tokens = SplitWhitespace(sentence.text);

  struct Target {
    size_t pos;
    std::string core;
    std::vector<lexicon::Neighbor> neighbors;
  };
  std::vector<Target> targets;
  for (size_t pos = 0; pos < tokens.size(); ++pos) {
    std::string core = SplitTokenAffixes(tokens[pos]).core;
    if (!options.eligibility.IsEligible(core)) continue;
    std::optional<size_t> idx = table.Find(core);
    if (!idx || table.norm(*idx) == 0.0) continue;
    targets.push_back(
        {pos, core, lexicon::NearestNeighbors(table, core, options.k).neighbors});
  }

  if (options.target_count == 1) {
    for (const Target& t : targets) {
      for (const lexicon::Neighbor& n : t.neighbors) {
        sink.Add(ReplaceToken(tokens, t.pos, n.word), Method::kEmbedding,
                 {{"positions", {t.pos}},
                  {"originals", {t.core}},
                  {"replacements", {n.word}},
                  {"neighbor_scores", {n.score}}});
      }
    }
    return sink.Take();
  }

  if (targets.size() > static_cast<size_t>(options.max_targets)) {
    targets.resize(options.max_targets);
  }
  for (size_t a = 0; a < targets.size(); ++a) {
    for (size_t b = a + 1; b < targets.size(); ++b) {
      const Target& ta = targets[a];
      const Target& tb = targets[b];
      for (const lexicon::Neighbor& na : ta.neighbors) {
        std::vector<std::string> once = SplitWhitespace(ReplaceToken(tokens, ta.pos, na.word));
        if (once.size() != tokens.size()) continue;  // multi-word neighbour
        for (const lexicon::Neighbor& nb : tb.neighbors) {
          sink.Add(ReplaceToken(once, tb.pos, nb.word), Method::kEmbedding,
                   {{"positions", {ta.pos, tb.pos}},
                    {"originals", {ta.core, tb.core}},
                    {"replacements", {na.word, nb.word}},
                    {"neighbor_scores", {na.score, nb.score}}});
        }
      }
    }
  }
  return sink.Take();
}

std::vector<AugmentedCandidate> MlmSubstitute(const LabeledSentence& sentence,
                                              providers::MaskFiller& filler,
                                              const MlmOptions& options,
                                              std::vector<std::string>* iteration_errors) {
  const std::vector<std::string> tokens = SplitWhitespace(sentence.text);
  if (tokens.empty()) throw PreconditionError("sentence has no maskable token");
  if (options.iterations < 1) throw PreconditionError("iterations must be positive");
  const std::string mask(filler.mask_token());
  CandidateSink sink(sentence);
  for (int iteration = 0; iteration < options.iterations; ++iteration) {
    Rng rng = Rng::Substream(options.seed,
                             {Fnv1a64(sentence.id), static_cast<uint64_t>(iteration)});
    const MaskPlan plan = SampleMaskPlan(static_cast<int>(tokens.size()),
                                         options.mask_ratio, rng);
    std::vector<std::string> work = tokens;
    json fills = json::array();
    try {
      for (int pos : plan.positions) {
        std::vector<std::string> masked = work;
        masked[pos] = mask;
        const std::string original = NormalizeForComparison(tokens[pos]);
        std::optional<std::string> chosen;
        for (const providers::FillCandidate& c :
             providers::FillMask(filler, Join(masked, " "), options.top_k)) {
          std::string token = Trim(c.token);
          if (token.empty() || token.find(mask) != std::string::npos) continue;
          if (NormalizeForComparison(token) == original) continue;
          chosen = std::move(token);
          break;
        }
        if (chosen) work[pos] = *chosen;
        fills.push_back(chosen ? json(*chosen) : json(nullptr));
      }
    } catch (const Error& e) {
      if (iteration_errors != nullptr) {
        iteration_errors->push_back(sentence.id + " iteration " +
                                    std::to_string(iteration) + ": " + e.what());
      }
      continue;
    }
    sink.Add(Join(work, " "), Method::kMlm,
             {{"iteration", iteration},
              {"token_count", plan.token_count},
              {"mask_count", plan.mask_count},
              {"positions", plan.positions},
              {"fills", fills}});
  }
  return sink.Take();
}

std::vector<AugmentedCandidate> LlmGenerate(const LabeledSentence& sentence,
                                            providers::ChatModel& chat,
                                            const providers::ChatPromptSpec& spec,
                                            std::vector<std::string>* warnings) {
  if (!spec.known_labels.empty() && !spec.known_labels.contains(sentence.label)) {
    throw PreconditionError("prompt '" + spec.prompt_id +
                            "' does not describe label '" + sentence.label + "'");
  }
  std::vector<std::string> variants;
  try {
    variants = providers::Generate(chat, spec, sentence.text, sentence.label);
  } catch (const ProviderError& e) {
    if (e.kind() != ProviderError::Kind::kUnparseable) throw;
    if (warnings != nullptr) {
      warnings->push_back(sentence.id + ": unparseable chat response: " +
                          e.detail().substr(0, 200));
    }
    return {};
  }
  CandidateSink sink(sentence);
  int kept = 0;
  for (size_t i = 0; i < variants.size() && kept < spec.n_variants; ++i) {
    if (sink.Add(variants[i], Method::kLlm,
                 {{"prompt_id", spec.prompt_id},
                  {"model", spec.model_id},
                  {"variant_index", i}})) {
      ++kept;
    }
  }
  return sink.Take();
}

namespace {

void CheckResources(const StrategyConfig& config, const Resources& resources) {
  auto require = [&](const void* p, const char* what) {
    if (p == nullptr) {
      throw ConfigError(std::string(MethodName(config.method)) + " needs " + what);
    }
  };
  switch (config.method) {
    case Method::kWordNet:
      require(resources.thesaurus, "a WordNet thesaurus");
      break;
    case Method::kEmbedding:
      require(resources.table, "a word-vector table");
      if (config.embedding.k < 1) throw ConfigError("embedding k must be >= 1");
      if (config.embedding.target_count != 1 && config.embedding.target_count != 2) {
        throw ConfigError("embedding target_count must be 1 or 2");
      }
      break;
    case Method::kBackTranslation:
      require(resources.translator, "a translation provider");
      if (config.max_chain_len < 1) throw ConfigError("max_chain_len must be >= 1");
      break;
    case Method::kMlm:
      require(resources.filler, "a fill-mask provider");
      if (config.mlm.iterations < 1) throw ConfigError("mlm iterations must be >= 1");
      if (!(config.mlm.mask_ratio > 0 && config.mlm.mask_ratio <= 1)) {
        throw ConfigError("mlm mask_ratio must be in (0, 1]");
      }
      break;
    case Method::kLlm:
      require(resources.chat, "a chat provider");
      config.prompt.Validate();
      break;
  }
}

}  // namespace

std::vector<AugmentedCandidate> RunStrategy(const corpus::Dataset& dataset,
                                            const StrategyConfig& config,
                                            const Resources& resources,
                                            uint64_t seed, RunStats* stats,
                                            const ProgressFn& progress) {
  CheckResources(config, resources);
  std::vector<LanguageChain> chains;
  if (config.method == Method::kBackTranslation) {
    try {
      chains = EnumerateChains(config.languages, config.max_chain_len);
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
    for (const LanguageChain& chain : chains) {
      std::string from = "en";
      for (const std::string& to : chain.hops()) {
        if (!resources.translator->Supports(from, to)) {
          throw ConfigError("translator does not support " + from + "->" + to);
        }
        from = to;
      }
      if (!resources.translator->Supports(from, "en")) {
        throw ConfigError("translator does not support " + from + "->en");
      }
    }
  }
  MlmOptions mlm = config.mlm;
  mlm.seed = seed;

  const auto& records = dataset.records();
  const size_t n = records.size();
  std::vector<std::vector<AugmentedCandidate>> per_record(n);
  std::vector<std::vector<std::string>> errors(n), warnings(n);
  std::mutex progress_mu;
  size_t done = 0;

  ParallelFor(n, config.workers, [&](size_t i) {
    const LabeledSentence& record = records[i];
    auto fail = [&](const std::string& message) { errors[i].push_back(message); };
    try {
      switch (config.method) {
        case Method::kWordNet:
          per_record[i] = WordNetSubstitute(record, *resources.thesaurus, config.wordnet);
          break;
        case Method::kEmbedding:
          per_record[i] = EmbeddingSubstitute(record, *resources.table, config.embedding);
          break;
        case Method::kBackTranslation:
          for (const LanguageChain& chain : chains) {
            try {
              if (auto c = BackTranslate(record, chain, *resources.translator)) {
                per_record[i].push_back(std::move(*c));
              }
            } catch (const Error& e) {
              fail(e.what());
            }
          }
          per_record[i] = DeduplicateCandidates(std::move(per_record[i]));
          break;
        case Method::kMlm:
          per_record[i] = MlmSubstitute(record, *resources.filler, mlm, &warnings[i]);
          break;
        case Method::kLlm:
          per_record[i] = LlmGenerate(record, *resources.chat, config.prompt, &warnings[i]);
          break;
      }
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mu);
      progress(++done, n);
    }
  });

  std::vector<AugmentedCandidate> out;
  RunStats local;
  local.records = n;
  for (size_t i = 0; i < n; ++i) {
    for (auto& c : per_record[i]) out.push_back(std::move(c));
    if (!errors[i].empty()) {
      ++local.failed_records;
      for (auto& m : errors[i]) local.errors.push_back({i, records[i].id, std::move(m)});
    }
    for (auto& w : warnings[i]) local.warnings.push_back(std::move(w));
  }
  local.candidates = out.size();
  if (stats != nullptr) *stats = std::move(local);
  return out;
}

std::vector<AugmentedCandidate> DeduplicateCandidates(
    std::vector<AugmentedCandidate> candidates) {
  std::unordered_set<std::string> seen;
  std::vector<AugmentedCandidate> out;
  out.reserve(candidates.size());
  for (AugmentedCandidate& c : candidates) {
    if (seen.insert(c.source_id + '\x1f' + c.text).second) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace auggate::augment
