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
#ifndef AUGGATE_HTTP_PROVIDERS_H_
#define AUGGATE_HTTP_PROVIDERS_H_

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <semaphore>
#include <set>
#include <string>

#include "auggate/providers.h"
#include "json.hpp"

namespace auggate::providers {

enum class EndpointKind { kEmbed, kTranslate, kFillMask, kChat };

std::string_view EndpointKindName(EndpointKind kind);

struct ProviderEndpoint {
  // scheme://host[:port][/prefix]
  std::string base_url;
  EndpointKind kind = EndpointKind::kEmbed;
  // Sent as "Authorization: Bearer <token>" when set.
  std::optional<std::string> auth_token;
  std::chrono::milliseconds timeout{30000};
  int max_in_flight = 4;

  void Validate() const;
};

// Bounded retry for transport failures and HTTP 429 only.
struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

// JSON-over-HTTP transport shared by the provider clients. Safe for
// concurrent calls; at most max_in_flight requests run at once.
class HttpJsonClient {
 public:
  explicit HttpJsonClient(ProviderEndpoint endpoint, RetryPolicy retry = {});
  HttpJsonClient(const HttpJsonClient&) = delete;
  HttpJsonClient& operator=(const HttpJsonClient&) = delete;

  nlohmann::json Post(const std::string& path, const nlohmann::json& body);
  nlohmann::json Get(const std::string& path);

  const ProviderEndpoint& endpoint() const { return endpoint_; }
  // Total HTTP attempts and attempts beyond the first, across all calls.
  size_t attempts() const { return attempts_; }
  size_t retries() const { return retries_; }

 private:
  nlohmann::json Send(const std::string& method, const std::string& path,
                      const nlohmann::json* body);

  ProviderEndpoint endpoint_;
  RetryPolicy retry_;
  std::string scheme_host_port_;
  std::string prefix_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
  std::atomic<size_t> attempts_{0};
  std::atomic<size_t> retries_{0};
};

// POST /embed {"texts": [...]} -> {"dimension": d, "vectors": [[...], ...]}
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(ProviderEndpoint endpoint, RetryPolicy retry = {});
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override;
  std::string Describe() const override;
  HttpJsonClient& client() { return client_; }

 private:
  HttpJsonClient client_;
};

// POST /translate {"texts", "source", "target"} -> {"texts": [...]}
class HttpTranslator : public Translator {
 public:
  HttpTranslator(ProviderEndpoint endpoint,
                 std::set<std::string> languages, RetryPolicy retry = {});
  std::vector<std::string> Translate(std::span<const std::string> texts,
                                     const std::string& source,
                                     const std::string& target) override;
  bool Supports(const std::string& source,
                const std::string& target) const override;
  std::string Describe() const override;
  HttpJsonClient& client() { return client_; }

 private:
  HttpJsonClient client_;
  std::set<std::string> languages_;
};

// POST /fill_mask {"text", "top_k"} -> {"candidates": [{"token", "score"}]}
class HttpMaskFiller : public MaskFiller {
 public:
  explicit HttpMaskFiller(ProviderEndpoint endpoint,
                          std::string mask_token = "[MASK]",
                          RetryPolicy retry = {});
  std::vector<FillCandidate> FillMask(const std::string& text,
                                      int top_k) override;
  std::string_view mask_token() const override { return mask_token_; }
  std::string Describe() const override;
  HttpJsonClient& client() { return client_; }

 private:
  HttpJsonClient client_;
  std::string mask_token_;
};

// OpenAI-compatible chat completions.
class OpenAiChat : public ChatModel {
 public:
  explicit OpenAiChat(ProviderEndpoint endpoint,
                      std::string path = "/v1/chat/completions",
                      RetryPolicy retry = {});
  std::string Complete(const std::vector<ChatMessage>& messages,
                       const ChatPromptSpec& spec) override;
  std::string Describe() const override;
  HttpJsonClient& client() { return client_; }

 private:
  HttpJsonClient client_;
  std::string path_;
};

// Request bodies, exposed for protocol conformance tests.
nlohmann::json EmbedRequest(std::span<const std::string> texts);
nlohmann::json TranslateRequest(std::span<const std::string> texts,
                                const std::string& source,
                                const std::string& target);
nlohmann::json FillMaskRequest(const std::string& text, int top_k);
nlohmann::json ChatRequest(const std::vector<ChatMessage>& messages,
                           const ChatPromptSpec& spec);

// Response decoders. Throw ProviderError(kProtocol) on shape violations.
std::vector<EmbeddingVector> DecodeEmbedResponse(const nlohmann::json& body);
std::vector<std::string> DecodeTranslateResponse(const nlohmann::json& body);
std::vector<FillCandidate> DecodeFillMaskResponse(const nlohmann::json& body);
std::string DecodeChatResponse(const nlohmann::json& body);

// GET /healthz of a provider server: {status, embed_model, dimension,
// pooling}.
nlohmann::json FetchHealth(HttpJsonClient& client);

}  // namespace auggate::providers

#endif  // AUGGATE_HTTP_PROVIDERS_H_
