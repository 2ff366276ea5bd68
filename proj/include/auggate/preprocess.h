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
#ifndef AUGGATE_PREPROCESS_H_
#define AUGGATE_PREPROCESS_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace auggate::corpus {

struct PreprocessConfig {
  bool strip_symbols = false;
  // Only consulted when strip_symbols is set.
  bool remove_digits = false;
  // Keep . , ! ? when stripping symbols.
  bool keep_punctuation = true;
  bool lowercase = false;
  // Whole-word replacements, applied once, left to right.
  std::map<std::string, std::string> slang_map;
  std::set<std::string> stopwords;
  // Words never removed even when listed in stopwords.
  std::set<std::string> stopword_keep_list;

  // stopwords minus the keep list.
  std::set<std::string> EffectiveStopwords() const;
};

// Applies, in order: symbol stripping, lowercasing, slang expansion and
// stopword removal, then collapses whitespace. Total; idempotent on text
// already in normal form.
std::string Preprocess(std::string_view text, const PreprocessConfig& config);

// "key = expansion" per line; blank lines and '#' comments ignored.
std::map<std::string, std::string> LoadSlangMap(
    const std::filesystem::path& path);
// One word per line; blank lines and '#' comments ignored.
std::set<std::string> LoadWordList(const std::filesystem::path& path);

// Named presets backed by the data files in data_dir (slang.txt,
// stopwords.txt, keep_words.txt):
//   "hate"   - social-media text: strip symbols and digits, drop
//              punctuation, lowercase, expand slang, remove stopwords
//              except person indicators.
//   "review" - review/question corpora: no preprocessing.
//   "none"   - no preprocessing.
PreprocessConfig LoadPreset(std::string_view name,
                            const std::filesystem::path& data_dir);

// True when the preset changes text at all ("review"/"none" do not).
bool PresetTransformsText(std::string_view name);

}  // namespace auggate::corpus

#endif  // AUGGATE_PREPROCESS_H_
