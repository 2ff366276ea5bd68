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


#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "auggate/error.h"
#include "auggate/util/delimited.h"
#include "auggate/util/file_util.h"
#include "auggate/util/parallel.h"
#include "auggate/util/rng.h"
#include "auggate/util/text.h"
#include "test_support.h"

namespace auggate {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= x != c.Next();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, SubstreamsDependOnEveryTag) {
  const uint64_t base = Rng::Substream(102, {1, 2}).Next();
  EXPECT_EQ(base, Rng::Substream(102, {1, 2}).Next());
  EXPECT_NE(base, Rng::Substream(102, {2, 1}).Next());
  EXPECT_NE(base, Rng::Substream(103, {1, 2}).Next());
  EXPECT_NE(base, Rng::Substream(102, {1, 2, 0}).Next());
}

TEST(RngTest, BelowStaysInRangeAndCoversIt) {
  Rng r(1);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const uint64_t x = r.Below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, SampleWithoutReplacementIsDistinct) {
  Rng r(9);
  for (int n = 1; n <= 30; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<int> s = r.SampleWithoutReplacement(n, k);
      ASSERT_EQ(static_cast<int>(s.size()), k);
      std::set<int> u(s.begin(), s.end());
      ASSERT_EQ(u.size(), s.size());
      for (int x : s) ASSERT_TRUE(x >= 0 && x < n);
    }
  }
}

TEST(RngTest, ShuffleIsAPermutation) {
  Rng r(3);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  auto w = v;
  r.Shuffle(w);
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(RngTest, FnvKnownValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(TextTest, SplitAndJoin) {
  EXPECT_EQ(SplitWhitespace("  a \tb\n c  "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(SplitWhitespace("   ").empty());
  EXPECT_EQ(Split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(Join({"x", "y"}, "--"), "x--y");
  EXPECT_EQ(Trim("  hi there \n"), "hi there");
}

TEST(TextTest, Normalization) {
  EXPECT_EQ(NormalizeForComparison("  He   is GAY "), "he is gay");
  EXPECT_EQ(AsciiLower("AbC1"), "abc1");
}

TEST(TextTest, TokenAffixes) {
  TokenParts p = SplitTokenAffixes("\"Hello,\"");
  EXPECT_EQ(p.prefix, "\"");
  EXPECT_EQ(p.core, "Hello");
  EXPECT_EQ(p.suffix, ",\"");
  p = SplitTokenAffixes("don't!");
  EXPECT_EQ(p.core, "don't");
  EXPECT_EQ(p.suffix, "!");
  p = SplitTokenAffixes("'quoted'");
  EXPECT_EQ(p.core, "quoted");
  p = SplitTokenAffixes("!!!");
  EXPECT_EQ(p.core, "");
}

TEST(TextTest, CaseMatching) {
  EXPECT_EQ(MatchCase("Movie", "film"), "Film");
  EXPECT_EQ(MatchCase("GAY", "queer"), "QUEER");
  EXPECT_EQ(MatchCase("gay", "queer"), "queer");
  EXPECT_EQ(MatchCase("I", "we"), "We");
  EXPECT_EQ(MatchCase("123", "x"), "x");
}

TEST(TextTest, AlphabeticWords) {
  EXPECT_TRUE(IsAlphabeticWord("hello"));
  EXPECT_FALSE(IsAlphabeticWord("he11o"));
  EXPECT_FALSE(IsAlphabeticWord("don't"));
  EXPECT_FALSE(IsAlphabeticWord(""));
  EXPECT_EQ(FormatFixed(0.91234, 2), "0.91");
}

TEST(DelimitedTest, QuotedFieldsAndBlankLines) {
  std::istringstream in("a,b\n\n\"x, y\",\"say \"\"hi\"\"\"\n\"multi\nline\",z\n");
  DelimitedReader reader(in, ',');
  DelimitedRecord rec;
  ASSERT_TRUE(reader.Next(&rec));
  EXPECT_EQ(rec.fields, (std::vector<std::string>{"a", "b"}));
  ASSERT_TRUE(reader.Next(&rec));
  EXPECT_EQ(rec.fields, (std::vector<std::string>{"x, y", "say \"hi\""}));
  ASSERT_TRUE(reader.Next(&rec));
  EXPECT_EQ(rec.fields, (std::vector<std::string>{"multi\nline", "z"}));
  EXPECT_FALSE(reader.Next(&rec));
}

TEST(DelimitedTest, UnterminatedQuoteThrows) {
  std::istringstream in("a,\"open\n");
  DelimitedReader reader(in, ',');
  DelimitedRecord rec;
  EXPECT_THROW(reader.Next(&rec), ParseError);
}

TEST(DelimitedTest, FormatRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "q\"uote", " pad ", ""};
  std::istringstream in(FormatDelimitedRow(fields, ',') + "\n");
  DelimitedReader reader(in, ',');
  DelimitedRecord rec;
  ASSERT_TRUE(reader.Next(&rec));
  EXPECT_EQ(rec.fields, fields);
  EXPECT_EQ(DelimiterForPath("x.tsv"), '\t');
  EXPECT_EQ(DelimiterForPath("x.csv"), ',');
}

TEST(FileUtilTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(FileUtilTest, AtomicWriteAndJsonLines) {
  testing::TempDir dir;
  const auto path = dir / "out.jsonl";
  std::vector<nlohmann::json> values = {{{"a", 1}}, {{"b", "x"}}};
  WriteFileAtomic(path, FormatJsonLines(values));
  EXPECT_EQ(ReadJsonLines(path), values);
  EXPECT_EQ(ReadFileToString(path), "{\"a\":1}\n{\"b\":\"x\"}\n");
  EXPECT_THROW(ReadFileToString(dir / "missing"), IoError);
  testing::WriteText(dir / "bad.jsonl", "{\"a\":1}\n{oops\n");
  EXPECT_THROW(ReadJsonLines(dir / "bad.jsonl"), ParseError);
}

TEST(ParallelTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 8, [&](size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

}  // namespace
}  // namespace auggate
