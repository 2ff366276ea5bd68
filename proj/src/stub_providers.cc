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
#include "auggate/stub_providers.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "auggate/error.h"
#include "auggate/util/file_util.h"
#include "auggate/util/rng.h"
#include "auggate/util/text.h"
#include "json.hpp"

namespace auggate::providers {

using nlohmann::json;

const std::set<std::string>& DefaultLanguages() {
  static const std::set<std::string> kLanguages = {
      "ar", "bn", "de", "en", "es", "fr", "hi", "it", "ja", "pt", "ru", "ur", "zh"};
  return kLanguages;
}

HashEmbedder::HashEmbedder(int dimension, uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension_ < 1) throw ConfigError("hash embedder dimension must be positive");
}

std::vector<EmbeddingVector> HashEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    Rng rng = Rng::Substream(seed_, {Fnv1a64(text)});
    std::vector<double> v(dimension_);
    double sum = 0.0;
    for (double& x : v) {
      x = 2.0 * rng.Uniform01() - 1.0;
      sum += x * x;
    }
    const double norm = std::sqrt(sum);
    for (double& x : v) x /= norm;
    out.emplace_back(std::move(v));
  }
  return out;
}

std::string HashEmbedder::Describe() const {
  return "stub:hash(dim=" + std::to_string(dimension_) +
         ",seed=" + std::to_string(seed_) + ")";
}

TrigramEmbedder::TrigramEmbedder(int dimension) : dimension_(dimension) {
  if (dimension_ < 1) throw ConfigError("trigram embedder dimension must be positive");
}

std::vector<EmbeddingVector> TrigramEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    const std::string padded = "#" + NormalizeForComparison(text) + "#";
    std::vector<double> v(dimension_, 0.0);
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
      v[Fnv1a64(std::string_view(padded).substr(i, 3)) % dimension_] += 1.0;
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

std::string TrigramEmbedder::Describe() const {
  return "stub:trigram(dim=" + std::to_string(dimension_) + ")";
}

FixtureEmbedder::FixtureEmbedder(std::map<std::string, std::vector<double>> vectors)
    : vectors_(std::move(vectors)) {
  size_t dim = 0;
  for (const auto& [text, v] : vectors_) {
    if (dim == 0) dim = v.size();
    if (v.size() != dim || dim == 0) {
      throw ConfigError("fixture embedder vectors must share one positive dimension");
    }
  }
}

FixtureEmbedder FixtureEmbedder::FromScoredPairs(
    const std::vector<ScoredPair>& pairs) {
  std::map<std::string, size_t> axis;
  auto axis_of = [&](const std::string& text) {
    return axis.emplace(text, axis.size()).first->second;
  };
  for (const ScoredPair& p : pairs) {
    if (!(p.similarity >= -1.0 && p.similarity <= 1.0)) {
      throw ConfigError("fixture similarity outside [-1, 1]");
    }
    axis_of(p.original);
    axis_of(p.candidate);
  }
  const size_t dim = axis.size();
  std::map<std::string, std::vector<double>> vectors;
  for (const ScoredPair& p : pairs) {
    std::vector<double>& orig = vectors[p.original];
    if (orig.empty()) {
      orig.assign(dim, 0.0);
      orig[axis[p.original]] = 1.0;
    }
  }
  for (const ScoredPair& p : pairs) {
    std::vector<double> v(dim, 0.0);
    v[axis[p.original]] = p.similarity;
    v[axis[p.candidate]] = std::sqrt(1.0 - p.similarity * p.similarity);
    auto [it, inserted] = vectors.emplace(p.candidate, v);
    if (!inserted && it->second != v) {
      throw ConfigError("fixture text '" + p.candidate +
                        "' is given conflicting similarities");
    }
  }
  return FixtureEmbedder(std::move(vectors));
}

FixtureEmbedder FixtureEmbedder::FromJsonFile(const std::filesystem::path& path) {
  json j = json::parse(ReadFileToString(path));
  if (j.contains("pairs")) {
    std::vector<ScoredPair> pairs;
    for (const json& p : j.at("pairs")) {
      pairs.push_back({p.at("original").get<std::string>(),
                       p.at("candidate").get<std::string>(),
                       p.at("similarity").get<double>()});
    }
    return FromScoredPairs(pairs);
  }
  return FixtureEmbedder(
      j.at("vectors").get<std::map<std::string, std::vector<double>>>());
}

std::vector<EmbeddingVector> FixtureEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    auto it = vectors_.find(text);
    if (it == vectors_.end()) {
      throw ProviderError(ProviderError::Kind::kProtocol,
                          "fixture embedder has no vector for '" + text + "'");
    }
    out.emplace_back(it->second);
  }
  return out;
}

std::string FixtureEmbedder::Describe() const {
  return "stub:fixture(" + std::to_string(vectors_.size()) + " texts)";
}

std::vector<EmbeddingVector> CachingEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<std::string> missing;
  {
    std::lock_guard<std::mutex> lock(mu_);
    std::set<std::string> queued;
    for (const std::string& t : texts) {
      if (!cache_.contains(t) && queued.insert(t).second) missing.push_back(t);
    }
  }
  if (!missing.empty()) {
    std::vector<EmbeddingVector> fresh = inner_.Embed(missing);
    if (fresh.size() != missing.size()) {
      throw ProviderError(ProviderError::Kind::kProtocol,
                          "embed: vector count does not match batch");
    }
    std::lock_guard<std::mutex> lock(mu_);
    for (size_t i = 0; i < missing.size(); ++i) {
      cache_.emplace(missing[i], std::move(fresh[i]));
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  misses_ += missing.size();
  hits_ += texts.size() - missing.size();
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(cache_.at(t));
  return out;
}

std::vector<std::string> IdentityTranslator::Translate(
    std::span<const std::string> texts, const std::string&, const std::string&) {
  return {texts.begin(), texts.end()};
}

bool IdentityTranslator::Supports(const std::string& source,
                                  const std::string& target) const {
  return languages_.contains(source) && languages_.contains(target);
}

void DictionaryTranslator::Add(const std::string& source,
                               const std::string& target,
                               const std::string& text,
                               const std::string& translation) {
  entries_[{source, target, text}] = translation;
}

DictionaryTranslator DictionaryTranslator::FromJsonFile(
    const std::filesystem::path& path) {
  json j = json::parse(ReadFileToString(path));
  DictionaryTranslator t;
  if (j.contains("languages")) {
    t.languages_ = j.at("languages").get<std::set<std::string>>();
  }
  for (const json& e : j.at("entries")) {
    t.Add(e.at("source").get<std::string>(), e.at("target").get<std::string>(),
          e.at("text").get<std::string>(), e.at("translation").get<std::string>());
  }
  return t;
}

std::vector<std::string> DictionaryTranslator::Translate(
    std::span<const std::string> texts, const std::string& source,
    const std::string& target) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    auto it = entries_.find({source, target, text});
    out.push_back(it == entries_.end() ? text : it->second);
  }
  return out;
}

bool DictionaryTranslator::Supports(const std::string& source,
                                    const std::string& target) const {
  return languages_.contains(source) && languages_.contains(target);
}

namespace {

constexpr std::string_view kTagOpen = "<<";
constexpr std::string_view kTagClose = ">> ";

std::string RoundTripRewrite(uint64_t seed, const std::string& path,
                             const std::string& text) {
  static const char* kFillers[] = {"really", "just", "quite", "truly"};
  Rng rng = Rng::Substream(seed, {Fnv1a64(path), Fnv1a64(text)});
  std::vector<std::string> words = SplitWhitespace(text);
  switch (rng.Below(4)) {
    case 0:
      break;
    case 1:
      if (words.size() >= 3) {
        words.erase(words.begin() + 1 + static_cast<long>(rng.Below(words.size() - 1)));
      }
      break;
    case 2:
      if (words.size() >= 2) {
        size_t i = rng.Below(words.size() - 1);
        std::swap(words[i], words[i + 1]);
      }
      break;
    default: {
      size_t at = rng.Below(words.size() + 1);
      words.insert(words.begin() + static_cast<long>(at), kFillers[rng.Below(4)]);
      break;
    }
  }
  return Join(words, " ");
}

}  // namespace

std::vector<std::string> PseudoTranslator::Translate(
    std::span<const std::string> texts, const std::string& source,
    const std::string& target) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    if (source == target) {
      out.push_back(text);
      continue;
    }
    std::string path, body = text;
    if (text.starts_with(kTagOpen)) {
      size_t close = text.find(kTagClose);
      if (close != std::string::npos) {
        path = text.substr(kTagOpen.size(), close - kTagOpen.size());
        body = text.substr(close + kTagClose.size());
      }
    }
    if (target == "en") {
      out.push_back(path.empty() ? body : RoundTripRewrite(seed_, path, body));
      continue;
    }
    path = path.empty() ? target : path + ">" + target;
    out.push_back(std::string(kTagOpen) + path + std::string(kTagClose) + body);
  }
  return out;
}

bool PseudoTranslator::Supports(const std::string& source,
                                const std::string& target) const {
  return languages_.contains(source) && languages_.contains(target);
}

std::string PseudoTranslator::Describe() const {
  return "stub:pseudo-translate(seed=" + std::to_string(seed_) + ")";
}

void FixtureMaskFiller::AddExact(const std::string& masked_text,
                                 std::vector<FillCandidate> candidates) {
  exact_[masked_text] = std::move(candidates);
}

void FixtureMaskFiller::AddPositional(int word_index,
                                      std::vector<FillCandidate> candidates) {
  positional_[word_index] = std::move(candidates);
}

std::vector<FillCandidate> FixtureMaskFiller::FillMask(const std::string& text,
                                                       int top_k) {
  std::vector<FillCandidate> found;
  if (auto it = exact_.find(text); it != exact_.end()) {
    found = it->second;
  } else {
    std::vector<std::string> words = SplitWhitespace(text);
    for (size_t i = 0; i < words.size(); ++i) {
      if (words[i].find(mask_token()) == std::string::npos) continue;
      if (auto p = positional_.find(static_cast<int>(i)); p != positional_.end()) {
        found = p->second;
      }
      break;
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const FillCandidate& a, const FillCandidate& b) { return a.score > b.score; });
  if (found.size() > static_cast<size_t>(top_k)) found.resize(top_k);
  return found;
}

VocabMaskFiller::VocabMaskFiller(uint64_t seed, std::vector<std::string> vocabulary)
    : seed_(seed), vocabulary_(std::move(vocabulary)) {
  if (vocabulary_.empty()) {
    vocabulary_ = {"really", "just",  "very",   "quite", "good",  "bad",
                   "nice",   "great", "movie",  "time",  "people", "thing",
                   "way",    "day",   "story",  "film",  "friend", "world"};
  }
}

std::vector<FillCandidate> VocabMaskFiller::FillMask(const std::string& text,
                                                     int top_k) {
  Rng rng = Rng::Substream(seed_, {Fnv1a64(text)});
  const int n = std::min<int>(top_k, static_cast<int>(vocabulary_.size()));
  std::vector<FillCandidate> out;
  double score = 0.5;
  for (int idx : rng.SampleWithoutReplacement(static_cast<int>(vocabulary_.size()), n)) {
    out.push_back({vocabulary_[idx], score});
    score /= 2.0;
  }
  return out;
}

std::string VocabMaskFiller::Describe() const {
  return "stub:vocab-fill(seed=" + std::to_string(seed_) + ")";
}

std::string ExtractPromptText(const std::vector<ChatMessage>& messages,
                              const ChatPromptSpec& spec) {
  std::string content;
  for (const ChatMessage& m : messages) {
    if (m.role == "user") content = m.content;
  }
  const size_t slot = spec.user_prefix.find("{text}");
  if (slot == std::string::npos) return Trim(content);
  // Literal text adjacent to {text} in the template, up to any other
  // placeholder.
  std::string before = spec.user_prefix.substr(0, slot);
  if (size_t brace = before.rfind('}'); brace != std::string::npos) {
    before = before.substr(brace + 1);
  }
  std::string after = spec.user_prefix.substr(slot + 6);
  if (size_t brace = after.find('{'); brace != std::string::npos) {
    after = after.substr(0, brace);
  }
  size_t start = 0;
  if (!before.empty()) {
    size_t pos = content.find(before);
    if (pos != std::string::npos) start = pos + before.size();
  }
  size_t end = content.size();
  if (!after.empty()) {
    size_t pos = content.rfind(after);
    if (pos != std::string::npos && pos >= start) end = pos;
  }
  return content.substr(start, end - start);
}

void CannedChat::Add(const std::string& text, std::string response) {
  responses_[text] = std::move(response);
}

std::string CannedChat::Complete(const std::vector<ChatMessage>& messages,
                                 const ChatPromptSpec& spec) {
  ++calls_;
  auto it = responses_.find(ExtractPromptText(messages, spec));
  return it == responses_.end() ? default_response_ : it->second;
}

std::string TemplateChat::Complete(const std::vector<ChatMessage>& messages,
                                   const ChatPromptSpec& spec) {
  static const char* kTemplates[] = {
      "honestly, {}",  "i think {}",       "{} for real",   "{}, no doubt",
      "well, {}",      "{} if you ask me", "frankly, {}",   "{}, seriously",
      "so yeah, {}",   "{} and that is it", "look, {}",     "{}, i guess",
  };
  const std::string text = ExtractPromptText(messages, spec);
  std::vector<int> order(std::size(kTemplates));
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  Rng rng = Rng::Substream(seed_, {Fnv1a64(text)});
  rng.Shuffle(order);
  const int count = std::min<int>(spec.n_variants, 4);
  std::string out = "Here are " + std::to_string(count) + " sentences:\n";
  for (int i = 0; i < count; ++i) {
    std::string t = kTemplates[order[i]];
    t.replace(t.find("{}"), 2, Trim(text));
    out += std::to_string(i + 1) + ". " + t + "\n";
  }
  return out;
}

std::string TemplateChat::Describe() const {
  return "stub:template-chat(seed=" + std::to_string(seed_) + ")";
}

}  // namespace auggate::providers
