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
#include "auggate/providers.h"

#include <algorithm>
#include <regex>

#include "auggate/error.h"
#include "auggate/util/text.h"

namespace auggate::providers {
namespace {

std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::string StripWrappingQuotes(std::string s) {
  static const std::pair<std::string_view, std::string_view> kPairs[] = {
      {"\"", "\""}, {"'", "'"}, {"\xE2\x80\x9C", "\xE2\x80\x9D"},
      {"\xE2\x80\x98", "\xE2\x80\x99"}};
  bool changed = true;
  while (changed) {
    changed = false;
    s = Trim(s);
    for (const auto& [open, close] : kPairs) {
      if (s.size() >= open.size() + close.size() && s.starts_with(open) &&
          s.ends_with(close)) {
        s = s.substr(open.size(), s.size() - open.size() - close.size());
        changed = true;
        break;
      }
    }
  }
  return s;
}

}  // namespace

ChatPromptSpec ChatPromptSpec::Default() {
  ChatPromptSpec spec;
  spec.prompt_id = "binary-abuse-v1";
  spec.system_text =
      "You write new training sentences for a text classifier based on "
      "user-generated content.\n"
      "Label 0 marks content without hateful, bullying, improper or offensive "
      "language. Label 1 marks content that contains such language.\n"
      "The input below has label {label}. Write {n} new sentences that keep "
      "label {label}. Return them as a numbered list, one sentence per line.";
  spec.user_prefix = "Input text: {text}";
  spec.known_labels = {"0", "1"};
  return spec;
}

void ChatPromptSpec::Validate() const {
  const std::string both = system_text + "\n" + user_prefix;
  for (const char* placeholder : {"{label}", "{text}", "{n}"}) {
    if (both.find(placeholder) == std::string::npos) {
      throw ConfigError("prompt '" + prompt_id + "' lacks placeholder " +
                        placeholder);
    }
  }
  if (model_id.empty()) throw ConfigError("prompt model_id is empty");
  if (temperature < 0) throw ConfigError("prompt temperature must be >= 0");
  if (max_tokens < 1) throw ConfigError("prompt max_tokens must be positive");
  if (n_variants < 1) throw ConfigError("prompt n_variants must be positive");
}

std::vector<ChatMessage> ChatPromptSpec::Render(std::string_view text,
                                                std::string_view label) const {
  auto fill = [&](std::string s) {
    s = ReplaceAll(std::move(s), "{label}", label);
    s = ReplaceAll(std::move(s), "{n}", std::to_string(n_variants));
    // {text} last so the sentence itself is never re-scanned.
    return ReplaceAll(std::move(s), "{text}", text);
  };
  std::vector<ChatMessage> messages;
  if (!system_text.empty()) messages.push_back({"system", fill(system_text)});
  messages.push_back({"user", fill(user_prefix)});
  return messages;
}

std::vector<EmbeddingVector> Embed(Embedder& embedder,
                                   std::span<const std::string> texts) {
  if (texts.empty()) throw PreconditionError("embed: empty batch");
  for (const std::string& t : texts) {
    if (Trim(t).empty()) throw PreconditionError("embed: blank text in batch");
  }
  std::vector<EmbeddingVector> out = embedder.Embed(texts);
  if (out.size() != texts.size()) {
    throw ProviderError(ProviderError::Kind::kProtocol,
                        "embed: expected " + std::to_string(texts.size()) +
                            " vectors, got " + std::to_string(out.size()));
  }
  for (const EmbeddingVector& v : out) {
    if (v.dimension() != out.front().dimension()) {
      throw ProviderError(ProviderError::Kind::kProtocol,
                          "embed: mixed dimensions in one batch");
    }
  }
  return out;
}

std::vector<std::string> Translate(Translator& translator,
                                   std::span<const std::string> texts,
                                   const std::string& source,
                                   const std::string& target) {
  if (!translator.Supports(source, target)) {
    throw ProviderError(ProviderError::Kind::kUnsupported,
                        "unsupported language pair " + source + "->" + target);
  }
  if (texts.empty()) return {};
  std::vector<std::string> out = translator.Translate(texts, source, target);
  if (out.size() != texts.size()) {
    throw ProviderError(ProviderError::Kind::kProtocol,
                        "translate: expected " + std::to_string(texts.size()) +
                            " outputs, got " + std::to_string(out.size()));
  }
  return out;
}

int CountMaskTokens(std::string_view text, std::string_view mask) {
  if (mask.empty()) return 0;
  int count = 0;
  for (size_t pos = text.find(mask); pos != std::string_view::npos;
       pos = text.find(mask, pos + mask.size())) {
    ++count;
  }
  return count;
}

std::vector<FillCandidate> FillMask(MaskFiller& filler, const std::string& text,
                                    int top_k) {
  if (top_k < 1) throw PreconditionError("fill_mask: top_k must be positive");
  const int masks = CountMaskTokens(text, filler.mask_token());
  if (masks != 1) {
    throw PreconditionError("fill_mask: expected exactly one " +
                            std::string(filler.mask_token()) + ", found " +
                            std::to_string(masks));
  }
  std::vector<FillCandidate> out = filler.FillMask(text, top_k);
  double total = 0.0;
  for (const FillCandidate& c : out) {
    if (!(c.score >= 0.0 && c.score <= 1.0)) {
      throw ProviderError(ProviderError::Kind::kProtocol,
                          "fill_mask: score outside [0, 1]");
    }
    total += c.score;
  }
  if (total > 1.0 + 1e-6) {
    throw ProviderError(ProviderError::Kind::kProtocol,
                        "fill_mask: candidate scores sum above 1");
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FillCandidate& a, const FillCandidate& b) {
                     return a.score > b.score;
                   });
  if (out.size() > static_cast<size_t>(top_k)) out.resize(top_k);
  return out;
}

std::vector<std::string> Generate(ChatModel& model, const ChatPromptSpec& spec,
                                  std::string_view text,
                                  std::string_view label) {
  spec.Validate();
  return ParseVariantList(model.Complete(spec.Render(text, label), spec));
}

std::vector<std::string> ParseVariantList(std::string_view response) {
  static const std::regex kNumbered(R"(^\s*\(?\d{1,3}[.):\]](?:\s+(.*))?$)");
  static const std::regex kBulleted("^\\s*(?:[-*+]|\xE2\x80\xA2)\\s+(.*)$");
  std::vector<std::string> enumerated, plain;
  bool saw_content = false;
  for (std::string& raw : Split(response, '\n')) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (Trim(raw).empty()) continue;
    saw_content = true;
    std::smatch m;
    if (std::regex_match(raw, m, kNumbered) ||
        std::regex_match(raw, m, kBulleted)) {
      std::string item = StripWrappingQuotes(m[1].str());
      if (!item.empty()) enumerated.push_back(std::move(item));
      continue;
    }
    std::string item = StripWrappingQuotes(raw);
    if (!item.empty()) plain.push_back(std::move(item));
  }
  if (!saw_content) return {};
  std::vector<std::string> out = enumerated.empty() ? plain : enumerated;
  if (out.empty()) {
    throw ProviderError(ProviderError::Kind::kUnparseable,
                        "chat response contains no variants", 0,
                        std::string(response));
  }
  return out;
}

}  // namespace auggate::providers
