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
#include "auggate/preprocess.h"

#include <cctype>
#include <fstream>
#include <vector>

#include "auggate/error.h"
#include "auggate/util/text.h"

namespace auggate::corpus {
namespace {

// Decodes one UTF-8 sequence at text[i]; returns the code point and advances
// i. Invalid bytes decode to U+FFFD and consume one byte.
char32_t DecodeUtf8(std::string_view text, size_t& i) {
  const auto byte = [&](size_t k) { return static_cast<unsigned char>(text[k]); };
  unsigned char c = byte(i);
  int len = 0;
  char32_t cp = 0;
  if (c < 0x80) {
    ++i;
    return c;
  } else if ((c & 0xE0) == 0xC0) {
    len = 2;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    cp = c & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > text.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char cc = byte(i + k);
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += len;
  return cp;
}

void EncodeUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Letter blocks of the scripts the corpora are expected to contain. Symbols,
// emoji and punctuation outside ASCII fall through and are stripped.
bool IsNonAsciiLetter(char32_t cp) {
  struct Range {
    char32_t lo, hi;
  };
  static constexpr Range kLetters[] = {
      {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x024F},
      {0x0300, 0x036F}, {0x0370, 0x03FF}, {0x0400, 0x04FF},
      {0x0590, 0x05FF}, {0x0600, 0x06FF}, {0x0900, 0x097F},
      {0x0E00, 0x0E7F}, {0x1E00, 0x1EFF}, {0x3040, 0x30FF},
      {0x4E00, 0x9FFF}, {0xAC00, 0xD7AF},
  };
  for (const Range& r : kLetters) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  return false;
}

char32_t ToLower(char32_t cp) {
  if (cp < 0x80) return static_cast<char32_t>(std::tolower(static_cast<int>(cp)));
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0391 && cp <= 0x03A9) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  return cp;
}

std::string StripSymbols(std::string_view text, const PreprocessConfig& config) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    char32_t cp = DecodeUtf8(text, i);
    bool keep = false;
    if (cp < 0x80) {
      char c = static_cast<char>(cp);
      if (std::isspace(static_cast<unsigned char>(c))) {
        out.push_back(' ');
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '\'') {
        keep = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        keep = !config.remove_digits;
      } else if (c == '.' || c == ',' || c == '!' || c == '?') {
        keep = config.keep_punctuation;
      }
    } else {
      keep = IsNonAsciiLetter(cp);
    }
    if (keep) EncodeUtf8(cp, out);
  }
  return out;
}

std::string Lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) EncodeUtf8(ToLower(DecodeUtf8(text, i)), out);
  return out;
}

std::string StripComment(const std::string& line) {
  size_t hash = line.find('#');
  return Trim(hash == std::string::npos ? line : line.substr(0, hash));
}

}  // namespace

std::set<std::string> PreprocessConfig::EffectiveStopwords() const {
  std::set<std::string> out;
  for (const std::string& w : stopwords) {
    if (!stopword_keep_list.contains(w)) out.insert(w);
  }
  return out;
}

std::string Preprocess(std::string_view text, const PreprocessConfig& config) {
  std::string s = config.strip_symbols ? StripSymbols(text, config)
                                       : std::string(text);
  if (config.lowercase) s = Lowercase(s);

  std::vector<std::string> tokens = SplitWhitespace(s);
  if (!config.slang_map.empty()) {
    std::vector<std::string> expanded;
    expanded.reserve(tokens.size());
    for (const std::string& token : tokens) {
      TokenParts parts = SplitTokenAffixes(token);
      auto it = config.slang_map.find(AsciiLower(parts.core));
      if (parts.core.empty() || it == config.slang_map.end()) {
        expanded.push_back(token);
        continue;
      }
      for (std::string& w : SplitWhitespace(parts.prefix + it->second + parts.suffix)) {
        expanded.push_back(std::move(w));
      }
    }
    tokens = std::move(expanded);
  }
  if (!config.stopwords.empty()) {
    const std::set<std::string> removable = config.EffectiveStopwords();
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (std::string& token : tokens) {
      std::string core = AsciiLower(SplitTokenAffixes(token).core);
      if (!core.empty() && removable.contains(core)) continue;
      kept.push_back(std::move(token));
    }
    tokens = std::move(kept);
  }
  return Join(tokens, " ");
}

std::map<std::string, std::string> LoadSlangMap(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = StripComment(line);
    if (body.empty()) continue;
    size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string() + ": expected 'key = expansion'",
                       ParseError::Location::kLine, line_no);
    }
    std::string key = AsciiLower(Trim(body.substr(0, eq)));
    std::string value = Trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(path.string() + ": empty slang key or expansion",
                       ParseError::Location::kLine, line_no);
    }
    out[key] = value;
  }
  return out;
}

std::set<std::string> LoadWordList(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = AsciiLower(StripComment(line));
    if (!word.empty()) out.insert(word);
  }
  return out;
}

PreprocessConfig LoadPreset(std::string_view name,
                            const std::filesystem::path& data_dir) {
  PreprocessConfig config;
  if (name == "none" || name == "review") return config;
  if (name != "hate") {
    throw ConfigError("unknown preprocessing preset '" + std::string(name) +
                      "' (expected hate, review or none)");
  }
  config.strip_symbols = true;
  config.remove_digits = true;
  config.keep_punctuation = false;
  config.lowercase = true;
  config.slang_map = LoadSlangMap(data_dir / "slang.txt");
  config.stopwords = LoadWordList(data_dir / "stopwords.txt");
  config.stopword_keep_list = LoadWordList(data_dir / "keep_words.txt");
  return config;
}

bool PresetTransformsText(std::string_view name) { return name == "hate"; }

}  // namespace auggate::corpus
