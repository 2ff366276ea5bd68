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
#ifndef AUGGATE_STUB_PROVIDERS_H_
#define AUGGATE_STUB_PROVIDERS_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "auggate/providers.h"

// Deterministic offline providers. Every stub is a pure function of its
// inputs and seed, with integer-defined randomness, so outputs are
// bit-identical across runs and platforms. All are safe for concurrent use.
namespace auggate::providers {

// Language codes the stub translators accept.
const std::set<std::string>& DefaultLanguages();

// Seeded hash of the text -> pseudo-random unit vector. Unrelated texts are
// near-orthogonal, identical texts have cosine exactly 1.
class HashEmbedder : public Embedder {
 public:
  explicit HashEmbedder(int dimension = 64, uint64_t seed = 0);
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Describe() const override;

 private:
  int dimension_;
  uint64_t seed_;
};

// Hashed character-trigram counts of the normalized text, so texts sharing
// most of their characters score high. Gives the gate graded offline
// behaviour.
class TrigramEmbedder : public Embedder {
 public:
  explicit TrigramEmbedder(int dimension = 1024);
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Describe() const override;

 private:
  int dimension_;
};

// Explicit text -> vector table; unknown texts are a protocol error.
class FixtureEmbedder : public Embedder {
 public:
  struct ScoredPair {
    std::string original;
    std::string candidate;
    double similarity;
  };

  explicit FixtureEmbedder(std::map<std::string, std::vector<double>> vectors);

  // Builds vectors realizing each pair's cosine: every text gets its own
  // axis and candidate = s * e_original + sqrt(1 - s^2) * e_candidate.
  static FixtureEmbedder FromScoredPairs(const std::vector<ScoredPair>& pairs);
  // {"vectors": {"text": [..], ...}} or {"pairs": [{"original", "candidate",
  // "similarity"}, ...]}.
  static FixtureEmbedder FromJsonFile(const std::filesystem::path& path);

  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Describe() const override;

 private:
  std::map<std::string, std::vector<double>> vectors_;
};

// Per-run memo in front of another embedder.
class CachingEmbedder : public Embedder {
 public:
  explicit CachingEmbedder(Embedder& inner) : inner_(inner) {}
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Describe() const override { return inner_.Describe(); }

  size_t hits() const { return hits_; }
  size_t misses() const { return misses_; }

 private:
  Embedder& inner_;
  std::mutex mu_;
  std::unordered_map<std::string, EmbeddingVector> cache_;
  std::atomic<size_t> hits_{0};
  std::atomic<size_t> misses_{0};
};

class IdentityTranslator : public Translator {
 public:
  explicit IdentityTranslator(std::set<std::string> languages = DefaultLanguages())
      : languages_(std::move(languages)) {}
  std::vector<std::string> Translate(std::span<const std::string> texts,
                                     const std::string& source,
                                     const std::string& target) override;
  bool Supports(const std::string& source,
                const std::string& target) const override;
  std::string Describe() const override { return "stub:identity"; }

 private:
  std::set<std::string> languages_;
};

// (source, target, text) -> translation; texts without an entry pass
// through unchanged.
class DictionaryTranslator : public Translator {
 public:
  explicit DictionaryTranslator(std::set<std::string> languages = DefaultLanguages())
      : languages_(std::move(languages)) {}
  void Add(const std::string& source, const std::string& target,
           const std::string& text, const std::string& translation);
  // {"entries": [{"source", "target", "text", "translation"}, ...]}
  static DictionaryTranslator FromJsonFile(const std::filesystem::path& path);

  std::vector<std::string> Translate(std::span<const std::string> texts,
                                     const std::string& source,
                                     const std::string& target) override;
  bool Supports(const std::string& source,
                const std::string& target) const override;
  std::string Describe() const override { return "stub:dictionary"; }

 private:
  std::set<std::string> languages_;
  std::map<std::tuple<std::string, std::string, std::string>, std::string>
      entries_;
};

// Simulates round trips: leaving English tags the text with the hop path,
// returning to English applies a rewrite chosen by hash(seed, path, text):
// unchanged, drop a word, swap neighbours, or insert a filler word.
// Different chains therefore give different outputs.
class PseudoTranslator : public Translator {
 public:
  explicit PseudoTranslator(uint64_t seed = 0,
                            std::set<std::string> languages = DefaultLanguages())
      : seed_(seed), languages_(std::move(languages)) {}
  std::vector<std::string> Translate(std::span<const std::string> texts,
                                     const std::string& source,
                                     const std::string& target) override;
  bool Supports(const std::string& source,
                const std::string& target) const override;
  std::string Describe() const override;

 private:
  uint64_t seed_;
  std::set<std::string> languages_;
};

// Fill-mask fixture. Exact rules match the whole masked text; positional
// rules match the word index of the mask token. Anything else gets no
// candidates.
class FixtureMaskFiller : public MaskFiller {
 public:
  void AddExact(const std::string& masked_text,
                std::vector<FillCandidate> candidates);
  void AddPositional(int word_index, std::vector<FillCandidate> candidates);

  std::vector<FillCandidate> FillMask(const std::string& text,
                                      int top_k) override;
  std::string Describe() const override { return "stub:fixture-fill"; }

 private:
  std::map<std::string, std::vector<FillCandidate>> exact_;
  std::map<int, std::vector<FillCandidate>> positional_;
};

// Draws top_k distinct words from a small vocabulary, seeded by the masked
// text, with scores 1/2, 1/4, ... (sum below 1).
class VocabMaskFiller : public MaskFiller {
 public:
  explicit VocabMaskFiller(uint64_t seed = 0,
                           std::vector<std::string> vocabulary = {});
  std::vector<FillCandidate> FillMask(const std::string& text,
                                      int top_k) override;
  std::string Describe() const override;

 private:
  uint64_t seed_;
  std::vector<std::string> vocabulary_;
};

// Recovers the input sentence from a rendered user message.
std::string ExtractPromptText(const std::vector<ChatMessage>& messages,
                              const ChatPromptSpec& spec);

// Returns a canned raw response per input sentence (or a default).
class CannedChat : public ChatModel {
 public:
  explicit CannedChat(std::string default_response = {})
      : default_response_(std::move(default_response)) {}
  void Add(const std::string& text, std::string response);
  std::string Complete(const std::vector<ChatMessage>& messages,
                       const ChatPromptSpec& spec) override;
  std::string Describe() const override { return "stub:canned-chat"; }

  size_t calls() const { return calls_; }

 private:
  std::string default_response_;
  std::map<std::string, std::string> responses_;
  std::atomic<size_t> calls_{0};
};

// Produces a short numbered list of deterministic rewrites of the input,
// preceded by a line of prose, like a real chat model answer.
class TemplateChat : public ChatModel {
 public:
  explicit TemplateChat(uint64_t seed = 0) : seed_(seed) {}
  std::string Complete(const std::vector<ChatMessage>& messages,
                       const ChatPromptSpec& spec) override;
  std::string Describe() const override;

 private:
  uint64_t seed_;
};

}  // namespace auggate::providers

#endif  // AUGGATE_STUB_PROVIDERS_H_
