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
#include "auggate/http_providers.h"

#include <cmath>
#include <thread>

#include "auggate/error.h"
#include "httplib.h"

namespace auggate::providers {

using nlohmann::json;

std::string_view EndpointKindName(EndpointKind kind) {
  switch (kind) {
    case EndpointKind::kEmbed:
      return "embed";
    case EndpointKind::kTranslate:
      return "translate";
    case EndpointKind::kFillMask:
      return "fill_mask";
    case EndpointKind::kChat:
      break;
  }
  return "chat";
}

void ProviderEndpoint::Validate() const {
  if (!(base_url.starts_with("http://") || base_url.starts_with("https://"))) {
    throw ConfigError("provider base_url must start with http:// or https://: '" +
                      base_url + "'");
  }
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  if (timeout.count() <= 0) throw ConfigError("provider timeout must be positive");
}

HttpJsonClient::HttpJsonClient(ProviderEndpoint endpoint, RetryPolicy retry)
    : endpoint_(std::move(endpoint)), retry_(retry) {
  endpoint_.Validate();
  if (retry_.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
  const size_t scheme_end = endpoint_.base_url.find("://") + 3;
  const size_t path_start = endpoint_.base_url.find('/', scheme_end);
  if (path_start == std::string::npos) {
    scheme_host_port_ = endpoint_.base_url;
  } else {
    scheme_host_port_ = endpoint_.base_url.substr(0, path_start);
    prefix_ = endpoint_.base_url.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }
  in_flight_ = std::make_unique<std::counting_semaphore<>>(endpoint_.max_in_flight);
}

json HttpJsonClient::Post(const std::string& path, const json& body) {
  return Send("POST", path, &body);
}

json HttpJsonClient::Get(const std::string& path) {
  return Send("GET", path, nullptr);
}

json HttpJsonClient::Send(const std::string& method, const std::string& path,
                          const json* body) {
  const std::string url_path = prefix_ + path;
  const std::string payload = body != nullptr ? body->dump() : std::string();
  auto backoff = retry_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    ++attempts_;
    if (attempt > 1) ++retries_;
    std::optional<ProviderError> failure;
    {
      in_flight_->acquire();
      struct Release {
        std::counting_semaphore<>* s;
        ~Release() { s->release(); }
      } release{in_flight_.get()};

      httplib::Client cli(scheme_host_port_);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
      const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
          endpoint_.timeout - secs);
      cli.set_connection_timeout(secs.count(), usecs.count());
      cli.set_read_timeout(secs.count(), usecs.count());
      cli.set_write_timeout(secs.count(), usecs.count());
      httplib::Headers headers;
      if (endpoint_.auth_token && !endpoint_.auth_token->empty()) {
        headers.emplace("Authorization", "Bearer " + *endpoint_.auth_token);
      }
      httplib::Result res =
          method == "POST"
              ? cli.Post(url_path, headers, payload, "application/json")
              : cli.Get(url_path, headers);
      if (!res) {
        failure.emplace(ProviderError::Kind::kTransport,
                        std::string(EndpointKindName(endpoint_.kind)) + " " +
                            url_path + ": " + httplib::to_string(res.error()));
      } else if (res->status == 429) {
        failure.emplace(ProviderError::Kind::kRateLimited,
                        url_path + ": rate limited (HTTP 429)", 429, res->body);
      } else if (res->status == 404 && endpoint_.kind == EndpointKind::kTranslate) {
        throw ProviderError(ProviderError::Kind::kUnsupported,
                            url_path + ": " + res->body, 404, res->body);
      } else if (res->status < 200 || res->status >= 300) {
        throw ProviderError(ProviderError::Kind::kRemote,
                            url_path + ": HTTP " + std::to_string(res->status),
                            res->status, res->body);
      } else {
        try {
          return json::parse(res->body);
        } catch (const json::parse_error&) {
          throw ProviderError(ProviderError::Kind::kUnparseable,
                              url_path + ": response is not JSON", res->status,
                              res->body);
        }
      }
    }
    if (attempt >= retry_.max_attempts) throw *failure;
    std::this_thread::sleep_for(backoff);
    backoff = std::chrono::milliseconds(
        static_cast<int64_t>(std::llround(backoff.count() * retry_.multiplier)));
  }
}

json EmbedRequest(std::span<const std::string> texts) {
  return {{"texts", std::vector<std::string>(texts.begin(), texts.end())}};
}

json TranslateRequest(std::span<const std::string> texts,
                      const std::string& source, const std::string& target) {
  return {{"texts", std::vector<std::string>(texts.begin(), texts.end())},
          {"source", source},
          {"target", target}};
}

json FillMaskRequest(const std::string& text, int top_k) {
  return {{"text", text}, {"top_k", top_k}};
}

json ChatRequest(const std::vector<ChatMessage>& messages,
                 const ChatPromptSpec& spec) {
  json msgs = json::array();
  for (const ChatMessage& m : messages) {
    msgs.push_back({{"role", m.role}, {"content", m.content}});
  }
  return {{"model", spec.model_id},
          {"messages", msgs},
          {"temperature", spec.temperature},
          {"max_tokens", spec.max_tokens}};
}

namespace {

[[noreturn]] void ProtocolViolation(const std::string& what, const json& body) {
  throw ProviderError(ProviderError::Kind::kProtocol, what, 0, body.dump());
}

}  // namespace

std::vector<EmbeddingVector> DecodeEmbedResponse(const json& body) {
  if (!body.is_object() || !body.contains("vectors") ||
      !body["vectors"].is_array()) {
    ProtocolViolation("embed response lacks a vectors array", body);
  }
  std::optional<size_t> dimension;
  if (body.contains("dimension")) {
    if (!body["dimension"].is_number_unsigned()) {
      ProtocolViolation("embed response dimension is not a positive integer", body);
    }
    dimension = body["dimension"].get<size_t>();
  }
  std::vector<EmbeddingVector> out;
  for (const json& v : body["vectors"]) {
    if (!v.is_array()) ProtocolViolation("embed vector is not an array", body);
    std::vector<double> values;
    values.reserve(v.size());
    for (const json& x : v) {
      if (!x.is_number()) ProtocolViolation("non-finite embedding component", body);
      values.push_back(x.get<double>());
    }
    if (dimension && values.size() != *dimension) {
      ProtocolViolation("embed vector length differs from declared dimension",
                        body);
    }
    try {
      out.emplace_back(std::move(values));
    } catch (const PreconditionError& e) {
      ProtocolViolation(std::string("embed: ") + e.what(), body);
    }
  }
  return out;
}

std::vector<std::string> DecodeTranslateResponse(const json& body) {
  if (!body.is_object() || !body.contains("texts") || !body["texts"].is_array()) {
    ProtocolViolation("translate response lacks a texts array", body);
  }
  std::vector<std::string> out;
  for (const json& t : body["texts"]) {
    if (!t.is_string()) ProtocolViolation("translation is not a string", body);
    out.push_back(t.get<std::string>());
  }
  return out;
}

std::vector<FillCandidate> DecodeFillMaskResponse(const json& body) {
  if (!body.is_object() || !body.contains("candidates") ||
      !body["candidates"].is_array()) {
    ProtocolViolation("fill_mask response lacks a candidates array", body);
  }
  std::vector<FillCandidate> out;
  for (const json& c : body["candidates"]) {
    if (!c.is_object() || !c.contains("token") || !c["token"].is_string() ||
        !c.contains("score") || !c["score"].is_number()) {
      ProtocolViolation("fill_mask candidate needs token and score", body);
    }
    out.push_back({c["token"].get<std::string>(), c["score"].get<double>()});
  }
  return out;
}

std::string DecodeChatResponse(const json& body) {
  try {
    const json& content = body.at("choices").at(0).at("message").at("content");
    if (content.is_null()) return {};
    return content.get<std::string>();
  } catch (const json::exception&) {
    throw ProviderError(ProviderError::Kind::kUnparseable,
                        "chat response lacks choices[0].message.content", 0,
                        body.dump());
  }
}

json FetchHealth(HttpJsonClient& client) { return client.Get("/healthz"); }

HttpEmbedder::HttpEmbedder(ProviderEndpoint endpoint, RetryPolicy retry)
    : client_(std::move(endpoint), retry) {}

std::vector<EmbeddingVector> HttpEmbedder::Embed(
    std::span<const std::string> texts) {
  return DecodeEmbedResponse(client_.Post("/embed", EmbedRequest(texts)));
}

std::string HttpEmbedder::Describe() const {
  return "http:embed(" + client_.endpoint().base_url + ")";
}

HttpTranslator::HttpTranslator(ProviderEndpoint endpoint,
                               std::set<std::string> languages,
                               RetryPolicy retry)
    : client_(std::move(endpoint), retry), languages_(std::move(languages)) {}

std::vector<std::string> HttpTranslator::Translate(
    std::span<const std::string> texts, const std::string& source,
    const std::string& target) {
  return DecodeTranslateResponse(
      client_.Post("/translate", TranslateRequest(texts, source, target)));
}

bool HttpTranslator::Supports(const std::string& source,
                              const std::string& target) const {
  return languages_.contains(source) && languages_.contains(target);
}

std::string HttpTranslator::Describe() const {
  return "http:translate(" + client_.endpoint().base_url + ")";
}

HttpMaskFiller::HttpMaskFiller(ProviderEndpoint endpoint, std::string mask_token,
                               RetryPolicy retry)
    : client_(std::move(endpoint), retry), mask_token_(std::move(mask_token)) {}

std::vector<FillCandidate> HttpMaskFiller::FillMask(const std::string& text,
                                                    int top_k) {
  return DecodeFillMaskResponse(
      client_.Post("/fill_mask", FillMaskRequest(text, top_k)));
}

std::string HttpMaskFiller::Describe() const {
  return "http:fill_mask(" + client_.endpoint().base_url + ")";
}

OpenAiChat::OpenAiChat(ProviderEndpoint endpoint, std::string path,
                       RetryPolicy retry)
    : client_(std::move(endpoint), retry), path_(std::move(path)) {}

std::string OpenAiChat::Complete(const std::vector<ChatMessage>& messages,
                                 const ChatPromptSpec& spec) {
  return DecodeChatResponse(client_.Post(path_, ChatRequest(messages, spec)));
}

std::string OpenAiChat::Describe() const {
  return "http:chat(" + client_.endpoint().base_url + path_ + ")";
}

}  // namespace auggate::providers
