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

#include <atomic>
#include <mutex>
#include <thread>

#include <gtest/gtest.h>

#include "auggate/augment.h"
#include "auggate/error.h"
#include "httplib.h"

namespace auggate::providers {
namespace {

using nlohmann::json;

// Local provider server speaking the JSON protocol.
class MockServer {
 public:
  MockServer() {
    server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      Record(req);
      json out = {{"dimension", 3}, {"vectors", json::array()}};
      const json request = json::parse(req.body);
      for (const auto& t : request["texts"]) {
        const double n = static_cast<double>(t.get<std::string>().size());
        out["vectors"].push_back({n, 1.0, -n});
      }
      res.set_content(out.dump(), "application/json");
    });
    server_.Post("/translate", [this](const httplib::Request& req, httplib::Response& res) {
      Record(req);
      json body = json::parse(req.body);
      if (body["target"] == "xx") {
        res.status = 404;
        res.set_content("unsupported pair", "text/plain");
        return;
      }
      json out = {{"texts", json::array()}};
      for (const auto& t : body["texts"]) {
        out["texts"].push_back(body["target"].get<std::string>() + ":" + t.get<std::string>());
      }
      res.set_content(out.dump(), "application/json");
    });
    server_.Post("/fill_mask", [this](const httplib::Request& req, httplib::Response& res) {
      Record(req);
      json out = {{"candidates", {{{"token", "good"}, {"score", 0.4}},
                                  {{"token", "fine"}, {"score", 0.3}}}}};
      res.set_content(out.dump(), "application/json");
    });
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   Record(req);
                   if (rate_limit_remaining_ > 0) {
                     --rate_limit_remaining_;
                     res.status = 429;
                     res.set_content("slow down", "text/plain");
                     return;
                   }
                   json out = {{"choices",
                                {{{"message",
                                   {{"role", "assistant"},
                                    {"content", "Here you go:\n1. variant one\n2. variant two"}}}}}}};
                   res.set_content(out.dump(), "application/json");
                 });
    server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok","embed_model":"mock","dimension":3,"pooling":"mean_tokens"})",
                      "application/json");
    });
    server_.Post("/broken/embed", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("<html>", "text/html");
    });
    server_.Post("/shape/embed", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"dimension":2,"vectors":[[1,2,3]]})", "application/json");
    });
    server_.Post("/error/embed", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
      res.set_content("kaput", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& prefix = "") const {
    return "http://127.0.0.1:" + std::to_string(port_) + prefix;
  }
  void RateLimit(int n) { rate_limit_remaining_ = n; }
  std::string last_auth() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_auth_;
  }
  json last_body() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_body_;
  }

 private:
  void Record(const httplib::Request& req) {
    std::lock_guard<std::mutex> lock(mu_);
    last_auth_ = req.get_header_value("Authorization");
    last_body_ = json::parse(req.body);
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> rate_limit_remaining_{0};
  std::mutex mu_;
  std::string last_auth_;
  json last_body_;
};

ProviderEndpoint Endpoint(const std::string& url, EndpointKind kind) {
  ProviderEndpoint e;
  e.base_url = url;
  e.kind = kind;
  e.timeout = std::chrono::milliseconds(5000);
  return e;
}

RetryPolicy Fast() {
  RetryPolicy r;
  r.initial_backoff = std::chrono::milliseconds(1);
  return r;
}

TEST(EndpointTest, Validation) {
  ProviderEndpoint e;
  e.base_url = "ftp://x";
  EXPECT_THROW(e.Validate(), ConfigError);
  e.base_url = "http://x";
  e.max_in_flight = 0;
  EXPECT_THROW(e.Validate(), ConfigError);
}

TEST(ProtocolTest, RequestBodies) {
  const std::vector<std::string> texts = {"a", "b"};
  EXPECT_EQ(EmbedRequest(texts), json::parse(R"({"texts":["a","b"]})"));
  EXPECT_EQ(TranslateRequest(texts, "en", "it"),
            json::parse(R"({"texts":["a","b"],"source":"en","target":"it"})"));
  EXPECT_EQ(FillMaskRequest("x [MASK]", 5), json::parse(R"({"text":"x [MASK]","top_k":5})"));
  ChatPromptSpec spec = ChatPromptSpec::Default();
  json chat = ChatRequest({{"user", "hi"}}, spec);
  EXPECT_EQ(chat["model"], "gpt-3.5-turbo-0613");
  EXPECT_EQ(chat["max_tokens"], 256);
  EXPECT_EQ(chat["temperature"], 0.0);
  EXPECT_EQ(chat["messages"][0]["content"], "hi");
}

TEST(ProtocolTest, DecodersRejectBadShapes) {
  EXPECT_THROW(DecodeEmbedResponse(json::parse("{}")), ProviderError);
  EXPECT_THROW(DecodeEmbedResponse(json::parse(R"({"vectors":[["x"]]})")), ProviderError);
  EXPECT_THROW(DecodeEmbedResponse(json::parse(R"({"dimension":2,"vectors":[[1]]})")),
               ProviderError);
  EXPECT_THROW(DecodeEmbedResponse(json::parse(R"({"vectors":[[]]})")), ProviderError);
  EXPECT_EQ(DecodeEmbedResponse(json::parse(R"({"vectors":[[1,2]]})"))[0].dimension(), 2u);
  EXPECT_THROW(DecodeTranslateResponse(json::parse(R"({"texts":[1]})")), ProviderError);
  EXPECT_THROW(DecodeFillMaskResponse(json::parse(R"({"candidates":[{"token":"a"}]})")),
               ProviderError);
  EXPECT_THROW(DecodeChatResponse(json::parse(R"({"choices":[]})")), ProviderError);
  EXPECT_EQ(DecodeChatResponse(json::parse(R"({"choices":[{"message":{"content":null}}]})")), "");
}

TEST(HttpClientTest, EmbedWithBearerToken) {
  MockServer server;
  ProviderEndpoint e = Endpoint(server.url(), EndpointKind::kEmbed);
  e.auth_token = "sekret";
  HttpEmbedder embedder(e, Fast());
  const std::vector<std::string> texts = {"ab", "abcd"};
  auto out = Embed(embedder, texts);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1][0], 4.0);
  EXPECT_EQ(server.last_auth(), "Bearer sekret");
  EXPECT_EQ(server.last_body(), EmbedRequest(texts));
  EXPECT_EQ(embedder.Describe().find("sekret"), std::string::npos);
}

TEST(HttpClientTest, NoTokenNoHeader) {
  MockServer server;
  HttpEmbedder embedder(Endpoint(server.url(), EndpointKind::kEmbed), Fast());
  const std::vector<std::string> texts = {"x"};
  embedder.Embed(texts);
  EXPECT_EQ(server.last_auth(), "");
}

TEST(HttpClientTest, TranslateAndUnsupported) {
  MockServer server;
  HttpTranslator t(Endpoint(server.url(), EndpointKind::kTranslate), {"en", "it", "xx"}, Fast());
  const std::vector<std::string> texts = {"hello"};
  EXPECT_EQ(Translate(t, texts, "en", "it"), std::vector<std::string>{"it:hello"});
  try {
    Translate(t, texts, "en", "xx");
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderError::Kind::kUnsupported);
  }
  EXPECT_EQ(t.client().retries(), 0u);
}

TEST(HttpClientTest, FillMaskAndHealth) {
  MockServer server;
  HttpMaskFiller f(Endpoint(server.url(), EndpointKind::kFillMask), "<mask>", Fast());
  auto out = FillMask(f, "a <mask> day", 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].token, "good");
  EXPECT_EQ(server.last_body(), FillMaskRequest("a <mask> day", 2));
  EXPECT_EQ(FetchHealth(f.client())["dimension"], 3);
}

TEST(HttpClientTest, RateLimitedThenSuccess) {
  MockServer server;
  server.RateLimit(2);
  OpenAiChat chat(Endpoint(server.url(), EndpointKind::kChat), "/v1/chat/completions", Fast());
  corpus::LabeledSentence s{"r1", "you were naive", "0"};
  ChatPromptSpec spec = ChatPromptSpec::Default();
  spec.n_variants = 2;
  std::vector<std::string> warnings;
  auto out = augment::LlmGenerate(s, chat, spec, &warnings);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].text, "variant one");
  EXPECT_EQ(out[0].label, "0");
  EXPECT_EQ(chat.client().retries(), 2u);
  EXPECT_EQ(chat.client().attempts(), 3u);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(server.last_body()["messages"][1]["content"], "Input text: you were naive");
}

TEST(HttpClientTest, RateLimitExhaustsRetries) {
  MockServer server;
  server.RateLimit(10);
  OpenAiChat chat(Endpoint(server.url(), EndpointKind::kChat), "/v1/chat/completions", Fast());
  try {
    chat.Complete({{"user", "x"}}, ChatPromptSpec::Default());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderError::Kind::kRateLimited);
    EXPECT_EQ(e.status(), 429);
  }
  EXPECT_EQ(chat.client().attempts(), 3u);
}

TEST(HttpClientTest, ServerErrorsAreNotRetried) {
  MockServer server;
  const std::vector<std::string> texts = {"x"};
  HttpEmbedder broken(Endpoint(server.url("/broken"), EndpointKind::kEmbed), Fast());
  try {
    broken.Embed(texts);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderError::Kind::kUnparseable);
    EXPECT_EQ(e.detail(), "<html>");
  }
  HttpEmbedder shape(Endpoint(server.url("/shape/"), EndpointKind::kEmbed), Fast());
  EXPECT_THROW(shape.Embed(texts), ProviderError);
  HttpEmbedder error(Endpoint(server.url("/error"), EndpointKind::kEmbed), Fast());
  try {
    error.Embed(texts);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.kind(), ProviderError::Kind::kRemote);
    EXPECT_EQ(e.status(), 500);
    EXPECT_FALSE(e.retryable());
  }
  EXPECT_EQ(error.client().retries(), 0u);
}

TEST(HttpClientTest, ConnectionRefusedIsTransportAfterRetries) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  ProviderEndpoint e = Endpoint("http://127.0.0.1:" + std::to_string(port), EndpointKind::kEmbed);
  e.timeout = std::chrono::milliseconds(500);
  HttpEmbedder embedder(e, Fast());
  const std::vector<std::string> texts = {"x"};
  try {
    embedder.Embed(texts);
    FAIL();
  } catch (const ProviderError& err) {
    EXPECT_EQ(err.kind(), ProviderError::Kind::kTransport);
    EXPECT_TRUE(err.retryable());
  }
  EXPECT_EQ(embedder.client().attempts(), 3u);
}

TEST(HttpClientTest, ConcurrentCallsAllSucceed) {
  MockServer server;
  ProviderEndpoint e = Endpoint(server.url(), EndpointKind::kEmbed);
  e.max_in_flight = 2;
  HttpEmbedder embedder(e, Fast());
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      const std::vector<std::string> texts = {std::string(i + 1, 'a')};
      if (embedder.Embed(texts)[0][0] == i + 1) ++ok;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 8);
}

}  // namespace
}  // namespace auggate::providers
