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
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "auggate/error.h"
#include "auggate/lexicon.h"
#include "auggate/util/text.h"

namespace auggate::lexicon {

namespace fs = std::filesystem;

std::string_view PartOfSpeechName(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      return "noun";
    case PartOfSpeech::kVerb:
      return "verb";
    case PartOfSpeech::kAdj:
      return "adj";
    case PartOfSpeech::kAdv:
      return "adv";
    case PartOfSpeech::kAny:
      break;
  }
  return "any";
}

namespace {

PartOfSpeech PosFromPath(const fs::path& path) {
  std::string ext = AsciiLower(path.extension().string());
  if (ext == ".noun") return PartOfSpeech::kNoun;
  if (ext == ".verb") return PartOfSpeech::kVerb;
  if (ext == ".adj") return PartOfSpeech::kAdj;
  if (ext == ".adv") return PartOfSpeech::kAdv;
  throw ConfigError("cannot infer part of speech from " + path.string());
}

std::optional<uint64_t> ParseUnsigned(std::string_view s, int base = 10) {
  if (s.empty()) return std::nullopt;
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Reads a WordNet file line by line, skipping the indented license header
// and tracking each line's byte offset.
template <typename Fn>
void ForEachLine(const fs::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int64_t offset = 0;
  while (std::getline(in, line)) {
    const int64_t line_offset = offset;
    offset += static_cast<int64_t>(line.size()) + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == ' ') continue;
    fn(line, line_offset);
  }
}

// Adjective members may carry a syntactic marker: "galore(ip)".
std::string StripAdjMarker(const std::string& word) {
  size_t paren = word.find('(');
  if (paren != std::string::npos && !word.empty() && word.back() == ')') {
    return word.substr(0, paren);
  }
  return word;
}

std::string LemmaKey(std::string_view word) {
  std::string key = AsciiLower(Trim(word));
  for (char& c : key) {
    if (c == ' ') c = '_';
  }
  return key;
}

std::string DisplayLemma(std::string_view lemma) {
  std::string out(lemma);
  for (char& c : out) {
    if (c == '_') c = ' ';
  }
  return out;
}

}  // namespace

Thesaurus Thesaurus::LoadWordNet(std::span<const fs::path> index_paths,
                                 std::span<const fs::path> data_paths) {
  Thesaurus t;
  for (const fs::path& path : data_paths) {
    const PartOfSpeech pos = PosFromPath(path);
    const bool verbs = pos == PartOfSpeech::kVerb;
    ForEachLine(path, [&](const std::string& line, int64_t byte_offset) {
      auto fail = [&](const std::string& what) {
        throw ParseError(path.string() + ": " + what,
                         ParseError::Location::kByteOffset, byte_offset);
      };
      std::istringstream in(line);
      std::string tok;
      auto next = [&]() -> std::string {
        if (!(in >> tok)) fail("truncated synset line");
        return tok;
      };
      auto offset = ParseUnsigned(next());
      if (!offset) fail("bad synset offset");
      if (!ParseUnsigned(next())) fail("bad lex_filenum");
      const std::string ss_type = next();
      if (ss_type.size() != 1 || std::string_view("nvasr").find(ss_type[0]) ==
                                     std::string_view::npos) {
        fail("bad ss_type '" + ss_type + "'");
      }
      auto w_cnt = ParseUnsigned(next(), 16);
      if (!w_cnt || *w_cnt == 0) fail("bad w_cnt");
      std::vector<std::string> members;
      for (uint64_t i = 0; i < *w_cnt; ++i) {
        members.push_back(StripAdjMarker(next()));
        if (!ParseUnsigned(next(), 16)) fail("bad lex_id");
      }
      auto p_cnt = ParseUnsigned(next());
      if (!p_cnt) fail("bad p_cnt");
      for (uint64_t i = 0; i < *p_cnt; ++i) {
        next();  // pointer symbol
        if (!ParseUnsigned(next())) fail("bad pointer offset");
        next();  // pos
        if (!ParseUnsigned(next(), 16)) fail("bad pointer source/target");
      }
      if (verbs) {
        std::string f = next();
        if (f != "|") {
          auto f_cnt = ParseUnsigned(f);
          if (!f_cnt) fail("bad frame count");
          for (uint64_t i = 0; i < *f_cnt; ++i) {
            next();
            next();
            next();
          }
          if (next() != "|") fail("missing gloss separator");
        }
      } else if (next() != "|") {
        fail("missing gloss separator");
      }
      t.synsets_[{pos, *offset}] = std::move(members);
    });
  }
  for (const fs::path& path : index_paths) {
    const PartOfSpeech pos = PosFromPath(path);
    ForEachLine(path, [&](const std::string& line, int64_t byte_offset) {
      auto fail = [&](const std::string& what) {
        throw ParseError(path.string() + ": " + what,
                         ParseError::Location::kByteOffset, byte_offset);
      };
      std::vector<std::string> f = SplitWhitespace(line);
      if (f.size() < 6) fail("truncated index line");
      auto synset_cnt = ParseUnsigned(f[2]);
      auto p_cnt = ParseUnsigned(f[3]);
      if (!synset_cnt || !p_cnt) fail("bad counts");
      const size_t first = 4 + *p_cnt + 2;
      if (f.size() != first + *synset_cnt) fail("synset count mismatch");
      std::vector<uint64_t> offsets;
      for (size_t i = first; i < f.size(); ++i) {
        auto off = ParseUnsigned(f[i]);
        if (!off) fail("bad synset offset");
        offsets.push_back(*off);
      }
      t.index_[{AsciiLower(f[0]), pos}] = std::move(offsets);
    });
  }
  return t;
}

Thesaurus Thesaurus::LoadWordNetDir(const fs::path& dir) {
  std::vector<fs::path> index, data;
  for (const char* suffix : {"noun", "verb", "adj", "adv"}) {
    fs::path ip = dir / (std::string("index.") + suffix);
    fs::path dp = dir / (std::string("data.") + suffix);
    if (fs::exists(ip) && fs::exists(dp)) {
      index.push_back(ip);
      data.push_back(dp);
    }
  }
  if (index.empty()) {
    throw IoError("no WordNet index/data pairs found in " + dir.string());
  }
  return LoadWordNet(index, data);
}

const std::vector<std::string>* Thesaurus::Synset(PartOfSpeech pos,
                                                  uint64_t offset) const {
  auto it = synsets_.find({pos, offset});
  return it == synsets_.end() ? nullptr : &it->second;
}

SynonymSet Thesaurus::Lookup(std::string_view word, PartOfSpeech pos,
                             bool include_multiword) const {
  SynonymSet out;
  out.headword = std::string(word);
  out.part_of_speech = pos;
  const std::string key = LemmaKey(word);
  std::set<std::string> seen = {key};
  static constexpr PartOfSpeech kAll[] = {PartOfSpeech::kNoun,
                                          PartOfSpeech::kVerb,
                                          PartOfSpeech::kAdj,
                                          PartOfSpeech::kAdv};
  for (PartOfSpeech p : kAll) {
    if (pos != PartOfSpeech::kAny && pos != p) continue;
    auto it = index_.find({key, p});
    if (it == index_.end()) continue;
    for (uint64_t offset : it->second) {
      const std::vector<std::string>* members = Synset(p, offset);
      if (members == nullptr) continue;
      for (const std::string& lemma : *members) {
        if (!seen.insert(LemmaKey(lemma)).second) continue;
        std::string display = DisplayLemma(lemma);
        if (!include_multiword && display.find(' ') != std::string::npos) {
          continue;
        }
        out.synonyms.push_back(std::move(display));
      }
    }
  }
  return out;
}

}  // namespace auggate::lexicon
