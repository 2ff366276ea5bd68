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


#include "auggate/gate.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "auggate/error.h"
#include "auggate/stub_providers.h"
#include "test_support.h"

namespace auggate::gate {
namespace {

using augment::AugmentedCandidate;
using augment::Method;

EmbeddingVector V(std::vector<double> v) { return EmbeddingVector(std::move(v)); }

AugmentedCandidate Cand(std::string source, std::string text, Method m = Method::kWordNet) {
  AugmentedCandidate c;
  c.source_id = std::move(source);
  c.text = std::move(text);
  c.label = "1";
  c.method = m;
  return c;
}

// Map-backed embedder that counts requested texts and can be told to fail.
class MapEmbedder : public providers::Embedder {
 public:
  std::map<std::string, std::vector<double>> vectors;
  std::set<std::string> failing;
  std::map<std::string, int> requests;

  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override {
    std::vector<EmbeddingVector> out;
    for (const std::string& t : texts) {
      ++requests[t];
      if (failing.contains(t)) {
        throw ProviderError(ProviderError::Kind::kRemote, "boom on " + t, 500);
      }
      out.emplace_back(vectors.at(t));
    }
    return out;
  }
  std::string Describe() const override { return "test:map"; }
};

corpus::Dataset Originals() {
  return corpus::Dataset("d", {{"a", "alpha", "1"}, {"b", "beta", "0"}});
}

TEST(CosineTest, BasicIdentities) {
  EXPECT_DOUBLE_EQ(Cosine(V({1, 2, 3}), V({1, 2, 3})), 1.0);
  EXPECT_DOUBLE_EQ(Cosine(V({1, 0}), V({0, 5})), 0.0);
  EXPECT_DOUBLE_EQ(Cosine(V({1, 0}), V({-2, 0})), -1.0);
  EXPECT_NEAR(Cosine(V({3, 4}), V({4, 3})), 24.0 / 25.0, 1e-15);
}

TEST(CosineTest, ZeroNormIsDegenerate) {
  EXPECT_THROW(Cosine(V({0, 0}), V({1, 0})), PreconditionError);
  EXPECT_THROW(Cosine(V({1, 0}), V({1, 0, 0})), PreconditionError);
}

TEST(CosineTest, RandomPairsSymmetricAndScaleInvariant) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int i = 0; i < 500; ++i) {
    const size_t dim = 1 + gen() % 40;
    auto a = testing::RandomVector(gen, dim);
    auto b = testing::RandomVector(gen, dim);
    const double s = scale(gen);
    auto as = a;
    for (double& x : as) x *= s;
    const double c = Cosine(V(a), V(b));
    EXPECT_LE(std::abs(c), 1.0);
    EXPECT_NEAR(c, Cosine(V(b), V(a)), 1e-12);
    EXPECT_NEAR(c, Cosine(V(as), V(b)), 1e-12);
  }
}

TEST(PoolTest, MeanAndFirstToken) {
  std::vector<EmbeddingVector> tokens = {V({1, 2}), V({3, 6})};
  EXPECT_EQ(Pool(tokens, Pooling::kMeanTokens), V({2, 4}));
  EXPECT_EQ(Pool(tokens, Pooling::kFirstToken), V({1, 2}));
  std::vector<EmbeddingVector> single = {V({0.5, -1})};
  EXPECT_EQ(Pool(single, Pooling::kMeanTokens), single[0]);
  EXPECT_THROW(Pool({}, Pooling::kMeanTokens), PreconditionError);
  std::vector<EmbeddingVector> mixed = {V({1}), V({1, 2})};
  EXPECT_THROW(Pool(mixed, Pooling::kMeanTokens), PreconditionError);
}

TEST(PoolTest, NamesRoundTrip) {
  for (Pooling p : {Pooling::kMeanTokens, Pooling::kFirstToken}) {
    EXPECT_EQ(ParsePooling(PoolingName(p)), p);
  }
  EXPECT_THROW(ParsePooling("max"), ConfigError);
}

TEST(GateConfigTest, Validation) {
  GateConfig c;
  c.threshold = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.threshold = -0.1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.threshold = 0.0;
  EXPECT_NO_THROW(c.Validate());
  c.threshold = 1.0;
  EXPECT_NO_THROW(c.Validate());
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(ApplyThresholdTest, InclusiveBoundary) {
  ScoredCandidates scored;
  for (double s : {0.89, 0.90, 0.91}) {
    AugmentedCandidate c = Cand("a", "x" + std::to_string(s));
    c.similarity = s;
    scored.scored.push_back(c);
  }
  GateConfig inclusive;
  GateResult r = ApplyThreshold(scored, inclusive);
  EXPECT_EQ(r.accepted.size(), 2u);
  EXPECT_EQ(r.rejected.size(), 1u);
  GateConfig strict;
  strict.inclusive = false;
  r = ApplyThreshold(scored, strict);
  EXPECT_EQ(r.accepted.size(), 1u);
  EXPECT_DOUBLE_EQ(*r.accepted[0].similarity, 0.91);
}

TEST(ApplyThresholdTest, MeansAndDegenerateExcluded) {
  ScoredCandidates scored;
  AugmentedCandidate a = Cand("a", "p", Method::kMlm);
  a.similarity = 0.95;
  AugmentedCandidate b = Cand("a", "q", Method::kMlm);
  b.similarity = 0.5;
  AugmentedCandidate d = Cand("a", "r", Method::kMlm);
  d.gate_note = "degenerate";
  scored.scored = {a, b, d};
  GateResult r = ApplyThreshold(scored, GateConfig{});
  ASSERT_EQ(r.rejected.size(), 2u);
  EXPECT_FALSE(*r.rejected[1].accepted);
  const Tally& t = r.report.per_method.at("mlm");
  EXPECT_EQ(t.total, 3u);
  EXPECT_EQ(t.accepted, 1u);
  EXPECT_NEAR(*t.mean_similarity_all, 0.725, 1e-12);
  EXPECT_NEAR(*t.mean_similarity_accepted, 0.95, 1e-12);
}

TEST(ApplyThresholdTest, EmptyTallyHasNoMeans) {
  GateResult r = ApplyThreshold(ScoredCandidates{}, GateConfig{});
  EXPECT_EQ(r.report.overall.total, 0u);
  EXPECT_FALSE(r.report.overall.mean_similarity_all);
  EXPECT_TRUE(r.report.ToJson()["overall"]["mean_similarity_all"].is_null());
}

TEST(GateCandidatesTest, PartitionPreservesOrderAndEmbedsOnce) {
  MapEmbedder e;
  e.vectors = {{"alpha", {1, 0}}, {"beta", {0, 1}}, {"c1", {1, 0.1}},
               {"c2", {0.2, 1}}, {"c3", {1, 1}}, {"c4", {0, 1}}};
  std::vector<AugmentedCandidate> in = {Cand("a", "c1"), Cand("a", "c3"), Cand("b", "c2"),
                                        Cand("b", "c4"), Cand("a", "c1", Method::kMlm)};
  GateResult r = GateCandidates(Originals(), in, e, GateConfig{});
  ASSERT_EQ(r.accepted.size() + r.rejected.size() + r.ungated.size(), in.size());
  ASSERT_EQ(r.accepted.size(), 4u);
  EXPECT_EQ(r.accepted[0].text, "c1");
  EXPECT_EQ(r.accepted[1].text, "c2");
  EXPECT_EQ(r.accepted[2].text, "c4");
  EXPECT_EQ(r.accepted[3].method, Method::kMlm);
  EXPECT_EQ(r.rejected[0].text, "c3");
  EXPECT_NEAR(*r.rejected[0].similarity, std::sqrt(0.5), 1e-12);
  for (const auto& [text, n] : e.requests) EXPECT_EQ(n, 1) << text;
  EXPECT_EQ(r.report.per_method.at("wordnet").total, 4u);
  EXPECT_EQ(r.report.per_method.at("mlm").accepted, 1u);
  EXPECT_EQ(r.report.overall.accepted, 4u);
}

TEST(GateCandidatesTest, ZeroVectorCandidateIsDegenerate) {
  MapEmbedder e;
  e.vectors = {{"alpha", {1, 0}}, {"z", {0, 0}}};
  GateResult r = GateCandidates(Originals(), {Cand("a", "z")}, e, GateConfig{});
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].gate_note, "degenerate");
  EXPECT_FALSE(r.rejected[0].similarity);
  EXPECT_FALSE(r.report.overall.mean_similarity_all);
}

TEST(GateCandidatesTest, ProviderFailureLeavesCandidateUngated) {
  MapEmbedder e;
  e.vectors = {{"alpha", {1, 0}}, {"ok", {1, 0}}, {"bad", {1, 0}}};
  e.failing = {"bad"};
  GateResult r = GateCandidates(Originals(), {Cand("a", "ok"), Cand("a", "bad")}, e, GateConfig{});
  ASSERT_EQ(r.ungated.size(), 1u);
  EXPECT_EQ(r.ungated[0].text, "bad");
  EXPECT_NE(r.ungated[0].gate_note.find("ungated"), std::string::npos);
  EXPECT_FALSE(r.ungated[0].accepted);
  EXPECT_EQ(r.accepted.size(), 1u);
  EXPECT_EQ(r.report.overall.ungated, 1u);
  EXPECT_EQ(r.report.overall.total, 1u);
}

TEST(GateCandidatesTest, UnknownSourceThrows) {
  MapEmbedder e;
  EXPECT_THROW(GateCandidates(Originals(), {Cand("zz", "x")}, e, GateConfig{}),
               PreconditionError);
}

TEST(GateCandidatesTest, ThresholdOneKeepsOnlyExactDuplicates) {
  providers::HashEmbedder hash(32, 5);
  corpus::Dataset d("d", {{"a", "the cat sat", "1"}});
  std::vector<AugmentedCandidate> in = {Cand("a", "the cat sat"), Cand("a", "the cat sat."),
                                        Cand("a", "the cat sits")};
  GateConfig c;
  c.threshold = 1.0;
  GateResult r = GateCandidates(d, in, hash, c);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_EQ(r.accepted[0].text, "the cat sat");
}

TEST(ThresholdSweepTest, AcceptedSetsShrink) {
  providers::TrigramEmbedder tri(256);
  corpus::Dataset d("d", {{"a", "the quick brown fox jumps", "1"}});
  std::vector<AugmentedCandidate> in;
  for (const char* t : {"the quick brown fox jumped", "a quick brown fox jumps", "the slow red fox",
                        "quick fox", "completely different words here", "the quick brown dog jumps"}) {
    in.push_back(Cand("a", t));
  }
  std::vector<double> thresholds = {0.3, 0.5, 0.7, 0.9, 0.95};
  auto reports = ThresholdSweep(d, in, tri, thresholds);
  ASSERT_EQ(reports.size(), thresholds.size());
  for (size_t i = 1; i < reports.size(); ++i) {
    EXPECT_LE(reports[i].overall.accepted, reports[i - 1].overall.accepted);
    EXPECT_DOUBLE_EQ(reports[i].threshold, thresholds[i]);
  }
  std::vector<double> descending = {0.9, 0.5};
  EXPECT_THROW(ThresholdSweep(d, in, tri, descending), PreconditionError);
  EXPECT_NE(SweepTable(reports).find("0.95"), std::string::npos);
}

TEST(GateReportTest, JsonRoundTrip) {
  ScoredCandidates scored;
  for (double s : {0.2, 0.92, 0.97}) {
    AugmentedCandidate c = Cand("a", std::to_string(s), s > 0.5 ? Method::kLlm : Method::kWordNet);
    c.similarity = s;
    scored.scored.push_back(c);
  }
  scored.ungated.push_back(Cand("a", "u", Method::kBackTranslation));
  GateReport r = ApplyThreshold(scored, GateConfig{}).report;
  GateReport back = GateReport::FromJson(r.ToJson());
  EXPECT_EQ(back.ToJson(), r.ToJson());
  EXPECT_EQ(back.per_method.at("back_translation").ungated, 1u);
  const std::string table = r.ToTable();
  EXPECT_NE(table.find("llm"), std::string::npos);
  EXPECT_NE(table.find("all"), std::string::npos);
}

}  // namespace
}  // namespace auggate::gate
