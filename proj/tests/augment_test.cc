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

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "auggate/error.h"
#include "auggate/stub_providers.h"
#include "auggate/util/text.h"
#include "test_support.h"

namespace auggate::augment {
namespace {

using corpus::LabeledSentence;
using testing::TestData;

const lexicon::Thesaurus& WordNet() {
  static const lexicon::Thesaurus t = lexicon::Thesaurus::LoadWordNetDir(TestData("wordnet"));
  return t;
}

const lexicon::EmbeddingTable& Vectors() {
  static const lexicon::EmbeddingTable t = lexicon::LoadVecTable(TestData("neighbors.vec"));
  return t;
}

std::vector<std::string> TextsOf(const std::vector<AugmentedCandidate>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.text);
  return out;
}

uint64_t Permutations(int n, int l) {
  uint64_t p = 1;
  for (int i = 0; i < l; ++i) p *= static_cast<uint64_t>(n - i);
  return p;
}

TEST(MethodTest, NamesRoundTrip) {
  for (Method m : AllMethods()) EXPECT_EQ(ParseMethod(MethodName(m)), m);
  try {
    ParseMethod("synonym");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("back_translation"), std::string::npos);
  }
}

TEST(CandidateTest, JsonRoundTripAndFiles) {
  AugmentedCandidate c;
  c.source_id = "r1";
  c.text = "a \"quoted\" text";
  c.label = "1";
  c.method = Method::kMlm;
  c.detail = {{"iteration", 3}};
  c.similarity = 0.91;
  c.accepted = true;
  AugmentedCandidate back = AugmentedCandidate::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  testing::TempDir dir;
  AugmentedCandidate plain = c;
  plain.similarity.reset();
  plain.accepted.reset();
  WriteCandidates({c, plain}, dir / "c.jsonl");
  auto read = ReadCandidates(dir / "c.jsonl");
  ASSERT_EQ(read.size(), 2u);
  EXPECT_FALSE(read[1].similarity);
  EXPECT_FALSE(read[1].accepted);
  EXPECT_THROW(AugmentedCandidate::FromJson({{"text", "x"}}), ParseError);
  testing::WriteText(dir / "bad.jsonl", c.ToJson().dump() + "\n{\"method\":\"nope\"}\n");
  try {
    ReadCandidates(dir / "bad.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 1);
  }
}

TEST(LanguageChainTest, Validation) {
  EXPECT_EQ(LanguageChain({"ar", "it"}).Path(), "en>ar>it>en");
  EXPECT_THROW(LanguageChain({}), PreconditionError);
  EXPECT_THROW(LanguageChain({"ar", "en"}), PreconditionError);
  EXPECT_THROW(LanguageChain({"ar", "ar"}), PreconditionError);
  EXPECT_THROW(LanguageChain({"ar", "it", "hi"}, 2), PreconditionError);
  EXPECT_NO_THROW(LanguageChain({"ar", "it", "ar"}, 3));
}

TEST(EnumerateChainsTest, CountsMatchPermutationOracle) {
  const std::vector<std::string> pool = {"ar", "hi", "it", "de"};
  for (int n = 1; n <= 4; ++n) {
    std::set<std::string> langs(pool.begin(), pool.begin() + n);
    for (int max_len = 1; max_len <= 3; ++max_len) {
      uint64_t expected = 0;
      for (int l = 1; l <= std::min(n, max_len); ++l) expected += Permutations(n, l);
      auto chains = EnumerateChains(langs, max_len);
      EXPECT_EQ(chains.size(), expected) << n << " " << max_len;
      std::set<std::vector<std::string>> distinct;
      for (const auto& c : chains) distinct.insert(c.hops());
      EXPECT_EQ(distinct.size(), chains.size());
    }
  }
}

TEST(EnumerateChainsTest, OrderShortestThenLexicographic) {
  auto chains = EnumerateChains({"it", "ar", "hi"}, 2);
  std::vector<std::string> paths;
  for (const auto& c : chains) paths.push_back(c.Path());
  EXPECT_EQ(paths, (std::vector<std::string>{
                       "en>ar>en", "en>hi>en", "en>it>en", "en>ar>hi>en", "en>ar>it>en",
                       "en>hi>ar>en", "en>hi>it>en", "en>it>ar>en", "en>it>hi>en"}));
  EXPECT_THROW(EnumerateChains({}, 2), PreconditionError);
  EXPECT_THROW(EnumerateChains({"en", "ar"}, 2), PreconditionError);
}

TEST(MaskTest, CountRoundsHalfUp) {
  EXPECT_EQ(MaskCount(1, 0.15), 1);
  EXPECT_EQ(MaskCount(3, 0.15), 1);
  EXPECT_EQ(MaskCount(10, 0.15), 2);
  EXPECT_EQ(MaskCount(9, 0.15), 1);
  EXPECT_EQ(MaskCount(30, 0.15), 5);
  EXPECT_EQ(MaskCount(4, 1.0), 4);
}

TEST(MaskTest, PlansAreValid) {
  Rng rng(102);
  for (int n = 1; n <= 60; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      MaskPlan p = SampleMaskPlan(n, 0.15, rng);
      ASSERT_EQ(p.mask_count, MaskCount(n, 0.15));
      ASSERT_EQ(static_cast<int>(p.positions.size()), p.mask_count);
      for (size_t i = 0; i < p.positions.size(); ++i) {
        ASSERT_GE(p.positions[i], 0);
        ASSERT_LT(p.positions[i], n);
        if (i > 0) ASSERT_LT(p.positions[i - 1], p.positions[i]);
      }
    }
  }
  EXPECT_THROW(SampleMaskPlan(0, 0.15, rng), PreconditionError);
  EXPECT_THROW(SampleMaskPlan(5, 0.0, rng), PreconditionError);
}

TEST(EligibilityTest, StopwordsAndKeepList) {
  Eligibility e;
  e.stopwords = {"he", "is", "the"};
  e.keep_list = {"he"};
  EXPECT_TRUE(e.IsEligible("He"));
  EXPECT_FALSE(e.IsEligible("is"));
  EXPECT_TRUE(e.IsEligible("gay"));
  EXPECT_FALSE(e.IsEligible("2day"));
  EXPECT_FALSE(e.IsEligible(""));
}

TEST(BackTranslateTest, IdentityEmitsNothing) {
  providers::IdentityTranslator t;
  LabeledSentence s{"r", "You were naive", "0"};
  for (const auto& chain : EnumerateChains({"ar", "hi", "it"}, 3)) {
    EXPECT_FALSE(BackTranslate(s, chain, t)) << chain.Path();
  }
}

TEST(BackTranslateTest, DictionaryRoundTrip) {
  providers::DictionaryTranslator t;
  t.Add("en", "ar", "You were naive", "AR1");
  t.Add("ar", "en", "AR1", "You was innocent");
  t.Add("en", "it", "You were naive", "IT1");
  t.Add("it", "en", "IT1", "you WERE naive ");
  LabeledSentence s{"r", "You were naive", "0"};
  auto c = BackTranslate(s, LanguageChain({"ar"}), t);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->text, "You was innocent");
  EXPECT_EQ(c->method, Method::kBackTranslation);
  EXPECT_EQ(c->label, "0");
  EXPECT_EQ(c->detail["path"], "en>ar>en");
  // Differs only by case and spacing: not a new sentence.
  EXPECT_FALSE(BackTranslate(s, LanguageChain({"it"}), t));
}

TEST(BackTranslateTest, ErrorNamesTheChain) {
  providers::IdentityTranslator t({"en", "ar"});
  LabeledSentence s{"r", "hello", "0"};
  try {
    BackTranslate(s, LanguageChain({"ar", "hi"}), t);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("en>ar>hi>en"), std::string::npos);
    EXPECT_EQ(e.kind(), ProviderError::Kind::kUnsupported);
  }
}

TEST(WordNetTest, CountMatchesEnumerationOracle) {
  LabeledSentence s{"r", "The big car is funny!", "0"};
  WordNetOptions o;
  auto out = WordNetSubstitute(s, WordNet(), o);
  size_t oracle = 0;
  for (const std::string& token : SplitWhitespace(s.text)) {
    oracle += WordNet().Lookup(SplitTokenAffixes(token).core, o.pos).synonyms.size();
  }
  EXPECT_EQ(oracle, 10u);
  EXPECT_EQ(out.size(), oracle);
  EXPECT_EQ(out[0].text, "The large car is funny!");
  EXPECT_EQ(out.back().text, "The big car is comical!");
  EXPECT_EQ(out[0].detail["original"], "big");
  for (const auto& c : out) EXPECT_EQ(c.method, Method::kWordNet);
}

TEST(WordNetTest, RespectsEligibilityAndMultiword) {
  LabeledSentence s{"r", "movie car", "0"};
  WordNetOptions o;
  o.eligibility.stopwords = {"movie"};
  o.include_multiword = true;
  auto out = WordNetSubstitute(s, WordNet(), o);
  EXPECT_EQ(out.size(), 7u);
  EXPECT_EQ(out.back().text, "movie railroad car");
  o.pos = lexicon::PartOfSpeech::kVerb;
  EXPECT_TRUE(WordNetSubstitute(s, WordNet(), o).empty());
}

TEST(EmbeddingTest, OneWordAtATime) {
  LabeledSentence s{"r", "He is gay", "1"};
  EmbeddingOptions o;
  o.eligibility.stopwords = {"he", "is"};
  o.k = 5;
  auto out = EmbeddingSubstitute(s, Vectors(), o);
  EXPECT_EQ(TextsOf(out), (std::vector<std::string>{"He is lesbian", "He is queer", "He is sunny",
                                                    "He is brave", "He is festal"}));
  EXPECT_EQ(out[0].detail["positions"], nlohmann::json::array({2}));
  EXPECT_NEAR(out[0].detail["neighbor_scores"][0].get<double>(), 0.95, 1e-6);
}

TEST(EmbeddingTest, OneWordCountOracle) {
  LabeledSentence s{"r", "He is gay", "1"};
  EmbeddingOptions o;
  o.k = 3;
  // "he" and "gay" are in the vocabulary, "is" is not.
  EXPECT_EQ(EmbeddingSubstitute(s, Vectors(), o).size(), 2u * 3u);
}

TEST(EmbeddingTest, TwoWordsAtATime) {
  LabeledSentence s{"r", "He is gay", "1"};
  EmbeddingOptions o;
  o.k = 6;
  o.target_count = 2;
  auto out = EmbeddingSubstitute(s, Vectors(), o);
  EXPECT_EQ(out.size(), 36u);
  const auto texts = TextsOf(out);
  for (const char* want : {"She is lesbian", "She is homosexual", "She is brave",
                           "Afterwards is lesbian", "Afterwards is homosexual", "Afterwards is sunny"}) {
    EXPECT_NE(std::find(texts.begin(), texts.end(), want), texts.end()) << want;
  }
  EXPECT_EQ(out[0].text, "She is lesbian");
  EXPECT_EQ(out[0].detail["replacements"], nlohmann::json::array({"she", "lesbian"}));
}

TEST(EmbeddingTest, MaxTargetsLimitsPairs) {
  LabeledSentence s{"r", "he gay she queer", "1"};
  EmbeddingOptions o;
  o.k = 1;
  o.target_count = 2;
  o.max_targets = 2;
  // Only (he, gay) is paired.
  EXPECT_EQ(EmbeddingSubstitute(s, Vectors(), o).size(), 1u);
  o.max_targets = 4;
  EXPECT_EQ(EmbeddingSubstitute(s, Vectors(), o).size(), 6u);
  o.target_count = 3;
  EXPECT_THROW(EmbeddingSubstitute(s, Vectors(), o), PreconditionError);
}

TEST(MlmTest, FixtureFillsLeftToRight) {
  providers::FixtureMaskFiller f;
  f.AddPositional(0, {{"you", 0.5}, {"we", 0.2}});
  f.AddPositional(1, {{"call", 0.6}});
  f.AddPositional(2, {{"naive", 0.5}});
  LabeledSentence s{"r5", "You were naive", "0"};
  MlmOptions o;
  o.iterations = 1;
  o.mask_ratio = 1.0;
  auto out = MlmSubstitute(s, f, o);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "we call naive");
  EXPECT_EQ(out[0].detail["mask_count"], 3);
  EXPECT_EQ(out[0].detail["fills"], nlohmann::json::parse(R"(["we","call",null])"));
}

TEST(MlmTest, DeterministicAndDeduplicated) {
  providers::VocabMaskFiller f(102);
  LabeledSentence s{"r1", "the movie was not a waste of time at all", "1"};
  MlmOptions o;
  o.iterations = 30;
  auto a = MlmSubstitute(s, f, o);
  auto b = MlmSubstitute(s, f, o);
  EXPECT_EQ(TextsOf(a), TextsOf(b));
  std::set<std::string> distinct;
  for (const auto& c : a) {
    EXPECT_TRUE(distinct.insert(NormalizeForComparison(c.text)).second);
    EXPECT_NE(NormalizeForComparison(c.text), NormalizeForComparison(s.text));
    EXPECT_EQ(c.detail["mask_count"], 2);
  }
  o.seed = 7;
  EXPECT_NE(TextsOf(MlmSubstitute(s, f, o)), TextsOf(a));
}

class FlakyFiller : public providers::MaskFiller {
 public:
  int calls = 0;
  std::vector<providers::FillCandidate> FillMask(const std::string&, int) override {
    if (++calls == 1) throw ProviderError(ProviderError::Kind::kTransport, "down");
    return {{"zzz", 0.9}};
  }
  std::string Describe() const override { return "flaky"; }
};

TEST(MlmTest, IterationErrorsAreRecorded) {
  FlakyFiller f;
  LabeledSentence s{"r", "one two three", "1"};
  MlmOptions o;
  o.iterations = 3;
  std::vector<std::string> errors;
  auto out = MlmSubstitute(s, f, o, &errors);
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_NE(errors[0].find("iteration 0"), std::string::npos);
  EXPECT_FALSE(out.empty());
}

TEST(LlmTest, FiltersDeduplicatesAndTruncates) {
  providers::CannedChat chat;
  chat.Add("You were naive",
           "1. You were naive\n2. you were gullible\n3. You were gullible\n4. so naive\n5. na\xC3\xAFve");
  providers::ChatPromptSpec spec = providers::ChatPromptSpec::Default();
  spec.n_variants = 2;
  LabeledSentence s{"r", "You were naive", "0"};
  auto out = LlmGenerate(s, chat, spec);
  EXPECT_EQ(TextsOf(out), (std::vector<std::string>{"you were gullible", "so naive"}));
  EXPECT_EQ(out[0].label, "0");
  EXPECT_EQ(out[0].detail["model"], "gpt-3.5-turbo-0613");
}

TEST(LlmTest, UnknownLabelAndUnparseable) {
  providers::CannedChat chat("1.\n2.");
  providers::ChatPromptSpec spec = providers::ChatPromptSpec::Default();
  LabeledSentence odd{"r", "text", "Animal"};
  EXPECT_THROW(LlmGenerate(odd, chat, spec), PreconditionError);
  LabeledSentence s{"r", "text", "1"};
  std::vector<std::string> warnings;
  EXPECT_TRUE(LlmGenerate(s, chat, spec, &warnings).empty());
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("unparseable"), std::string::npos);
}

corpus::Dataset Small() {
  return corpus::Dataset("d", {{"a", "You were naive", "0"},
                               {"b", "the big car is really funny", "1"},
                               {"c", "he is gay", "1"},
                               {"d", "people hate that movie", "1"}});
}

TEST(RunStrategyTest, WorkersDoNotChangeOutput) {
  providers::PseudoTranslator t(102);
  providers::VocabMaskFiller f(102);
  providers::TemplateChat chat(102);
  Resources r{&WordNet(), &Vectors(), &t, &f, &chat};
  for (Method m : AllMethods()) {
    StrategyConfig c;
    c.method = m;
    c.mlm.iterations = 8;
    const auto serial = RunStrategy(Small(), c, r, 102);
    c.workers = 4;
    size_t calls = 0;
    RunStats stats;
    const auto parallel = RunStrategy(Small(), c, r, 102, &stats, [&](size_t done, size_t total) {
      ++calls;
      EXPECT_LE(done, total);
    });
    EXPECT_EQ(TextsOf(serial), TextsOf(parallel)) << MethodName(m);
    EXPECT_EQ(calls, 4u);
    EXPECT_EQ(stats.records, 4u);
    EXPECT_EQ(stats.candidates, parallel.size());
    EXPECT_EQ(stats.failed_records, 0u);
    // Grouped by record in dataset order.
    std::vector<std::string> order;
    for (const auto& cand : parallel) {
      if (order.empty() || order.back() != cand.source_id) order.push_back(cand.source_id);
    }
    EXPECT_TRUE(std::is_sorted(order.begin(), order.end())) << MethodName(m);
  }
}

TEST(RunStrategyTest, MissingResourcesAreConfigErrors) {
  StrategyConfig c;
  for (Method m : AllMethods()) {
    c.method = m;
    EXPECT_THROW(RunStrategy(Small(), c, Resources{}, 1), ConfigError) << MethodName(m);
  }
  providers::IdentityTranslator narrow({"en", "ar"});
  c.method = Method::kBackTranslation;
  Resources r;
  r.translator = &narrow;
  EXPECT_THROW(RunStrategy(Small(), c, r, 1), ConfigError);
}

class FailingTranslator : public providers::IdentityTranslator {
 public:
  std::vector<std::string> Translate(std::span<const std::string> texts, const std::string& s,
                                     const std::string& t) override {
    if (texts[0].find("car") != std::string::npos && t == "hi") {
      throw ProviderError(ProviderError::Kind::kRemote, "boom", 500);
    }
    std::vector<std::string> out(texts.begin(), texts.end());
    if (t == "en") out[0] += " " + s;
    return out;
  }
};

TEST(RunStrategyTest, PerChainFailuresAreCounted) {
  FailingTranslator t;
  StrategyConfig c;
  c.method = Method::kBackTranslation;
  c.max_chain_len = 1;
  Resources r;
  r.translator = &t;
  RunStats stats;
  auto out = RunStrategy(Small(), c, r, 1, &stats);
  EXPECT_EQ(stats.failed_records, 1u);
  ASSERT_EQ(stats.errors.size(), 1u);
  EXPECT_EQ(stats.errors[0].record_id, "b");
  EXPECT_NE(stats.errors[0].message.find("en>hi>en"), std::string::npos);
  // 4 records x 3 chains, minus the failed one.
  EXPECT_EQ(out.size(), 11u);
}

TEST(DeduplicateTest, KeepsFirstPerSource) {
  AugmentedCandidate a, b, c;
  a.source_id = b.source_id = "s";
  c.source_id = "t";
  a.text = b.text = c.text = "same";
  b.method = Method::kMlm;
  auto out = DeduplicateCandidates({a, b, c});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].method, Method::kWordNet);
  EXPECT_EQ(out[1].source_id, "t");
}

}  // namespace
}  // namespace auggate::augment
