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
#include "auggate/util/text.h"

#include <cctype>
#include <cstdio>

namespace auggate {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordByte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80 || c == '\'';
}

}  // namespace

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> Split(std::string_view text, char separator) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(separator, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string Trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && IsSpace(text[b])) ++b;
  while (e > b && IsSpace(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string NormalizeForComparison(std::string_view text) {
  return Join(SplitWhitespace(AsciiLower(text)), " ");
}

TokenParts SplitTokenAffixes(std::string_view token) {
  size_t b = 0, e = token.size();
  while (b < e && !IsWordByte(token[b])) ++b;
  while (e > b && !IsWordByte(token[e - 1])) --e;
  // Apostrophes only count as word characters inside the core.
  while (b < e && token[b] == '\'') ++b;
  while (e > b && token[e - 1] == '\'') --e;
  return {std::string(token.substr(0, b)), std::string(token.substr(b, e - b)),
          std::string(token.substr(e))};
}

bool IsAlphabeticWord(std::string_view word) {
  if (word.empty()) return false;
  for (unsigned char c : word) {
    if (!std::isalpha(c) && c < 0x80) return false;
  }
  return true;
}

std::string MatchCase(std::string_view original, std::string_view replacement) {
  bool has_alpha = false, all_upper = true;
  for (unsigned char c : original) {
    if (!std::isalpha(c)) continue;
    has_alpha = true;
    if (!std::isupper(c)) all_upper = false;
  }
  std::string out(replacement);
  if (!has_alpha) return out;
  if (all_upper && original.size() > 1) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (std::isupper(static_cast<unsigned char>(original[0])) && !out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

}  // namespace auggate
