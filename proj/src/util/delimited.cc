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
#include "auggate/util/delimited.h"

#include "auggate/error.h"
#include "auggate/util/text.h"

namespace auggate {

bool DelimitedReader::Next(DelimitedRecord* record) {
  std::string line;
  while (true) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  record->fields.clear();
  record->line = line_;

  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (in_quotes) {
        // Quoted field continues on the next physical line.
        std::string next;
        if (!std::getline(in_, next)) {
          throw ParseError("unterminated quoted field",
                           ParseError::Location::kLine, record->line);
        }
        ++line_;
        if (!next.empty() && next.back() == '\r') next.pop_back();
        field.push_back('\n');
        line = std::move(next);
        i = 0;
        continue;
      }
      record->fields.push_back(std::move(field));
      return true;
    }
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
      ++i;
      continue;
    }
    if (c == delimiter_) {
      record->fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
      ++i;
      continue;
    }
    field.push_back(c);
    ++i;
  }
}

std::string FormatDelimitedRow(const std::vector<std::string>& fields,
                               char delimiter) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(delimiter);
    const std::string& f = fields[i];
    bool needs_quotes = f.empty() && fields.size() == 1;
    for (char c : f) {
      if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
        needs_quotes = true;
        break;
      }
    }
    if (!f.empty() && (f.front() == ' ' || f.back() == ' ')) needs_quotes = true;
    if (!needs_quotes) {
      out.append(f);
      continue;
    }
    out.push_back('"');
    for (char c : f) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  }
  out.push_back('\n');
  return out;
}

char DelimiterForPath(const std::filesystem::path& path) {
  std::string ext = AsciiLower(path.extension().string());
  return (ext == ".tsv" || ext == ".tab") ? '\t' : ',';
}

}  // namespace auggate
