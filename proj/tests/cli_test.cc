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


#include "auggate/cli/commands.h"

#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "test_support.h"

namespace auggate::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Corpus(int n) {
  std::string csv = "id,text,label\n";
  const char* words[] = {"good", "bad", "fine", "awful", "great", "poor", "nice", "sad"};
  for (int i = 0; i < n; ++i) {
    csv += "s" + std::to_string(i) + ",this is a " + words[i % 8] + " thing number " +
           std::to_string(i) + "," + std::to_string(i % 2) + "\n";
  }
  return csv;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::WriteText(dir_ / "corpus.csv", Corpus(100));
    config_ = {
        {"seed", 102},
        {"dataset", {{"path", "corpus.csv"}, {"name", "tiny"}, {"labels", {"0", "1"}}}},
        {"split", {{"train", 0.7}, {"validation", 0.1}, {"test", 0.2}, {"seed", 102}}},
        {"strategies", {{{"method", "llm"}, {"prompt", {{"n_variants", 2}}}}}},
        {"providers", {{"embed", {{"stub", "trigram"}}}, {"chat", {{"stub", "template"}}}}},
        {"probe", {{"epochs", 5}}},
    };
  }

  std::string WriteConfig() {
    const auto path = dir_ / "config.json";
    testing::WriteText(path, config_.dump(2));
    return path.string();
  }

  std::string Out() const { return (dir_ / "out").string(); }

  testing::TempDir dir_;
  json config_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"--config", WriteConfig()}).code, kExitUsage);
  EXPECT_EQ(Cli({"--config", WriteConfig(), "bogus"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--version"}).code, kExitOk);
  const Result r = Cli({"--config", WriteConfig(), "--out", Out(), "augment", "--strategies",
                        "wordnet,paraphrase"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("paraphrase"), std::string::npos);
}

TEST_F(CliTest, MissingSeedIsUsageError) {
  config_.erase("seed");
  const Result r = Cli({"--config", WriteConfig(), "--out", Out(), "augment"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
  EXPECT_EQ(Cli({"--config", WriteConfig(), "--seed", "5", "--out", Out(), "augment"}).code,
            kExitOk);
}

TEST_F(CliTest, InlineTokensAreRejected) {
  for (const char* key : {"token", "auth_token", "api_key", "authorization"}) {
    config_["providers"]["embed"] = {{"url", "http://127.0.0.1:1"}, {key, "secret"}};
    const Result r = Cli({"--config", WriteConfig(), "--out", Out(), "augment"});
    EXPECT_EQ(r.code, kExitUsage) << key;
    EXPECT_NE(r.err.find("token_env"), std::string::npos) << r.err;
    EXPECT_EQ(r.err.find("secret"), std::string::npos);
  }
}

TEST_F(CliTest, TokenComesFromEnvironment) {
  httplib::Server server;
  std::mutex mu;
  std::vector<std::string> auth;
  server.Post("/embed", [&](const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard<std::mutex> lock(mu);
      auth.push_back(req.get_header_value("Authorization"));
    }
    json out = {{"dimension", 2}, {"vectors", json::array()}};
    const json request = json::parse(req.body);
    for (const auto& t : request["texts"]) {
      out["vectors"].push_back({1.0, static_cast<double>(t.get<std::string>().size() % 3)});
    }
    res.set_content(out.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  config_["providers"]["embed"] = {{"url", "http://127.0.0.1:" + std::to_string(port)},
                                   {"token_env", "AUGGATE_CLI_TEST_TOKEN"}};
  ::setenv("AUGGATE_CLI_TEST_TOKEN", "from-env", 1);
  const Result a = Cli({"--config", WriteConfig(), "--out", Out(), "augment"});
  const Result g = Cli({"--config", WriteConfig(), "--out", Out(), "gate"});
  ::unsetenv("AUGGATE_CLI_TEST_TOKEN");
  server.stop();
  thread.join();
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(g.code, kExitOk) << g.err;
  ASSERT_FALSE(auth.empty());
  for (const auto& h : auth) EXPECT_EQ(h, "Bearer from-env");
  for (const auto& entry : std::filesystem::recursive_directory_iterator(Out())) {
    if (entry.is_regular_file()) {
      EXPECT_EQ(testing::ReadText(entry.path()).find("from-env"), std::string::npos)
          << entry.path();
    }
  }
}

TEST_F(CliTest, GatedOutputCannotBeGatedAgain) {
  ASSERT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "augment"}).code, kExitOk);
  ASSERT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "gate"}).code, kExitOk);
  const std::string accepted = Out() + "/gated/accepted.jsonl";
  const Result r = Cli({"--config", WriteConfig(), "--out", Out(), "gate", accepted});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("already gated"), std::string::npos);
}

TEST_F(CliTest, GateThresholdOverrideValidated) {
  ASSERT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "augment"}).code, kExitOk);
  EXPECT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "gate", "--threshold", "1.5"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "gate", "--threshold", "0.5"}).code,
            kExitOk);
  const json report = json::parse(testing::ReadText(dir_ / "out" / "gated" / "gate_report.json"));
  EXPECT_DOUBLE_EQ(report["threshold"].get<double>(), 0.5);
}

TEST_F(CliTest, ProbeSplitSizes) {
  const Result r =
      Cli({"--config", WriteConfig(), "--out", Out(), "probe", "--split-seed", "102"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string text = testing::ReadText(dir_ / "out" / "probe_report.txt");
  EXPECT_NE(text.find("split sizes: train 70 / validation 10 / test 20"), std::string::npos)
      << text;
}

TEST_F(CliTest, UntouchedAuditRoundTripReportsZero) {
  ASSERT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "augment"}).code, kExitOk);
  ASSERT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "gate"}).code, kExitOk);
  ASSERT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "audit", "export"}).code, kExitOk);
  const Result r = Cli({"--config", WriteConfig(), "--out", Out(), "audit", "import"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json report =
      json::parse(testing::ReadText(dir_ / "out" / "audit" / "alteration_report.json"));
  ASSERT_FALSE(report["per_method"].empty());
  for (const auto& [method, classes] : report["per_method"].items()) {
    for (const auto& [label, a] : classes.items()) {
      EXPECT_EQ(a["percent"].get<double>(), 0.0);
      EXPECT_EQ(a["audited"].get<int>(), 0);
    }
  }
  EXPECT_FALSE(report["issues"].empty());
}

TEST_F(CliTest, AuditImportWithoutExport) {
  EXPECT_EQ(Cli({"--config", WriteConfig(), "--out", Out(), "audit", "import"}).code,
            kExitUsage);
}

TEST(CliPipelineTest, StubPipelineMatchesGoldenSummary) {
  testing::TempDir dir;
  const std::string config = testing::TestData("pipeline/config.json").string();
  const std::string out = (dir / "run").string();
  for (std::vector<std::string> step :
       {std::vector<std::string>{"augment"}, {"gate"}, {"evaluate"}, {"audit", "export"},
        {"audit", "import"}, {"probe"}, {"report"}}) {
    std::vector<std::string> args = {"--config", config, "--out", out};
    args.insert(args.end(), step.begin(), step.end());
    const Result r = Cli(args);
    ASSERT_EQ(r.code, kExitOk) << step[0] << ": " << r.err;
  }
  EXPECT_EQ(testing::ReadText(dir / "run" / "summary.txt"),
            testing::ReadText(std::filesystem::path(AUGGATE_GOLDEN_DIR) / "stub_summary.txt"));
}

}  // namespace
}  // namespace auggate::cli
