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
#ifndef AUGGATE_PROVIDERS_H_
#define AUGGATE_PROVIDERS_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "auggate/embedding_vector.h"

namespace auggate::providers {

// Sentence embedder: one pooled vector per input text.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) = 0;
  // Identity for manifests (kind + model/config, never secrets).
  virtual std::string Describe() const = 0;
};

class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::vector<std::string> Translate(std::span<const std::string> texts,
                                             const std::string& source,
                                             const std::string& target) = 0;
  virtual bool Supports(const std::string& source,
                        const std::string& target) const = 0;
  virtual std::string Describe() const = 0;
};

struct FillCandidate {
  std::string token;
  double score = 0.0;

  bool operator==(const FillCandidate&) const = default;
};

class MaskFiller {
 public:
  virtual ~MaskFiller() = default;
  virtual std::vector<FillCandidate> FillMask(const std::string& text,
                                              int top_k) = 0;
  virtual std::string_view mask_token() const { return "[MASK]"; }
  virtual std::string Describe() const = 0;
};

struct ChatMessage {
  std::string role;
  std::string content;
};

// Prompt template and decoding parameters for LLM augmentation. The
// templates use {label}, {text} and {n} placeholders.
struct ChatPromptSpec {
  std::string prompt_id = "default";
  std::string system_text;
  std::string user_prefix;
  std::string model_id = "gpt-3.5-turbo-0613";
  double temperature = 0.0;
  int max_tokens = 256;
  int n_variants = 20;
  // Labels the template knows how to describe; empty means generic.
  std::set<std::string> known_labels;

  // The defaults for binary abusive/non-abusive corpora.
  static ChatPromptSpec Default();
  // Throws ConfigError when a placeholder is missing or a field is out of
  // range.
  void Validate() const;
  std::vector<ChatMessage> Render(std::string_view text,
                                  std::string_view label) const;
};

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  // Returns the assistant message text.
  virtual std::string Complete(const std::vector<ChatMessage>& messages,
                               const ChatPromptSpec& spec) = 0;
  virtual std::string Describe() const = 0;
};

// Checked entry points. Each enforces the operation's pre- and
// postconditions around the raw provider call and throws
// PreconditionError / ProviderError(kProtocol) on violations.

std::vector<EmbeddingVector> Embed(Embedder& embedder,
                                   std::span<const std::string> texts);

std::vector<std::string> Translate(Translator& translator,
                                   std::span<const std::string> texts,
                                   const std::string& source,
                                   const std::string& target);

// Requires exactly one mask token in text; returns at most top_k candidates
// in descending score order.
std::vector<FillCandidate> FillMask(MaskFiller& filler, const std::string& text,
                                    int top_k);

// Number of occurrences of mask as a whitespace-delimited token or
// substring.
int CountMaskTokens(std::string_view text, std::string_view mask);

// Renders the prompt, calls the model and parses the variant list.
std::vector<std::string> Generate(ChatModel& model, const ChatPromptSpec& spec,
                                  std::string_view text, std::string_view label);

// Extracts variants from a free-form chat response. When any numbered or
// bulleted lines exist only those are taken (surrounding prose is dropped);
// otherwise every non-blank line is a variant. Enumeration markers and
// wrapping quotes are stripped. A blank response yields an empty list; a
// non-blank one from which nothing usable remains throws
// ProviderError(kUnparseable) with the raw text as detail.
std::vector<std::string> ParseVariantList(std::string_view response);

}  // namespace auggate::providers

#endif  // AUGGATE_PROVIDERS_H_
