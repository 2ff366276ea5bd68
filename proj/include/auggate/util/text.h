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
#ifndef AUGGATE_UTIL_TEXT_H_
#define AUGGATE_UTIL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace auggate {

std::vector<std::string> SplitWhitespace(std::string_view text);
std::vector<std::string> Split(std::string_view text, char separator);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);
std::string Trim(std::string_view text);
std::string AsciiLower(std::string_view text);

// Lowercase, collapse whitespace runs, trim. Used wherever two sentences are
// compared for "same text".
std::string NormalizeForComparison(std::string_view text);

// A whitespace token split into leading punctuation, word core and trailing
// punctuation: "(hello!" -> {"(", "hello", "!"}.
struct TokenParts {
  std::string prefix;
  std::string core;
  std::string suffix;
};
TokenParts SplitTokenAffixes(std::string_view token);

// True when every byte is an ASCII letter or part of a multi-byte UTF-8
// sequence, and the word is non-empty.
bool IsAlphabeticWord(std::string_view word);

// Applies the casing pattern of original (all-caps, Capitalized, or as-is) to
// replacement.
std::string MatchCase(std::string_view original, std::string_view replacement);

// printf-style fixed formatting of a double, e.g. FormatFixed(0.5, 2) == "0.50".
std::string FormatFixed(double value, int decimals);

}  // namespace auggate

#endif  // AUGGATE_UTIL_TEXT_H_
