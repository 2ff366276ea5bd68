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
#ifndef AUGGATE_UTIL_FILE_UTIL_H_
#define AUGGATE_UTIL_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace auggate {

std::string ReadFileToString(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it into place, so readers
// never observe a partially written file. Throws IoError.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

// One JSON value per non-blank line. Throws ParseError naming the line.
std::vector<nlohmann::json> ReadJsonLines(const std::filesystem::path& path);
std::string FormatJsonLines(const std::vector<nlohmann::json>& values);

std::string Sha256Hex(std::string_view bytes);

}  // namespace auggate

#endif  // AUGGATE_UTIL_FILE_UTIL_H_
