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
#ifndef AUGGATE_UTIL_DELIMITED_H_
#define AUGGATE_UTIL_DELIMITED_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace auggate {

// One logical record of an RFC-4180-style file. line is the 1-based physical
// line on which the record starts (quoted fields may span lines).
struct DelimitedRecord {
  std::vector<std::string> fields;
  int64_t line = 0;
};

class DelimitedReader {
 public:
  DelimitedReader(std::istream& in, char delimiter)
      : in_(in), delimiter_(delimiter) {}

  // Returns false at end of input. Throws ParseError on an unterminated
  // quoted field. Blank lines are skipped.
  bool Next(DelimitedRecord* record);

 private:
  std::istream& in_;
  char delimiter_;
  int64_t line_ = 0;
};

std::string FormatDelimitedRow(const std::vector<std::string>& fields,
                               char delimiter);

// '\t' for .tsv/.tab files, ',' otherwise.
char DelimiterForPath(const std::filesystem::path& path);

}  // namespace auggate

#endif  // AUGGATE_UTIL_DELIMITED_H_
