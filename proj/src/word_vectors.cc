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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "auggate/error.h"
#include "auggate/lexicon.h"
#include "auggate/util/file_util.h"
#include "auggate/util/text.h"

namespace auggate::lexicon {

namespace fs = std::filesystem;

EmbeddingTable::EmbeddingTable(int dimension, std::vector<std::string> words,
                               std::vector<float> data, std::string source)
    : dimension_(dimension),
      words_(std::move(words)),
      data_(std::move(data)),
      source_(std::move(source)) {
  if (dimension_ <= 0) throw PreconditionError("table dimension must be positive");
  if (data_.size() != words_.size() * static_cast<size_t>(dimension_)) {
    throw PreconditionError("table data size does not match words x dimension");
  }
  norms_.resize(words_.size());
  for (size_t i = 0; i < words_.size(); ++i) {
    if (!exact_.emplace(words_[i], i).second) {
      throw PreconditionError("duplicate vocabulary word '" + words_[i] + "'");
    }
    folded_.emplace(AsciiLower(words_[i]), i);
    double sum = 0.0;
    for (float v : vector(i)) sum += static_cast<double>(v) * v;
    norms_[i] = std::sqrt(sum);
  }
}

std::optional<size_t> EmbeddingTable::Find(std::string_view word) const {
  const std::string lower = AsciiLower(word);
  if (auto it = exact_.find(lower); it != exact_.end()) return it->second;
  if (auto it = exact_.find(std::string(word)); it != exact_.end()) {
    return it->second;
  }
  if (auto it = folded_.find(lower); it != folded_.end()) return it->second;
  return std::nullopt;
}

namespace {

bool ParseFloat(std::string_view s, float* out) {
  double d = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(d)) {
    return false;
  }
  *out = static_cast<float>(d);
  return true;
}

bool IsHeader(const std::vector<std::string>& fields) {
  if (fields.size() != 2) return false;
  for (const std::string& f : fields) {
    if (f.empty() || !std::all_of(f.begin(), f.end(), ::isdigit)) return false;
  }
  return true;
}

}  // namespace

EmbeddingTable LoadVecTable(const fs::path& path, const VecLoadOptions& options,
                            std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int64_t line_no = 0;
  int dimension = 0;
  std::optional<size_t> declared_count;
  std::vector<std::string> words;
  std::vector<float> data;
  std::unordered_map<std::string, int64_t> first_line;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (line_no == 1 && IsHeader(fields)) {
      declared_count = std::stoull(fields[0]);
      dimension = std::stoi(fields[1]);
      if (dimension <= 0) {
        throw ParseError(path.string() + ": header dimension must be positive",
                         ParseError::Location::kLine, line_no);
      }
      continue;
    }
    if (options.limit && words.size() >= *options.limit) break;
    const int arity = static_cast<int>(fields.size()) - 1;
    if (dimension == 0) dimension = arity;
    if (arity != dimension || arity <= 0) {
      throw ParseError(path.string() + ": expected " + std::to_string(dimension) +
                           " components, found " + std::to_string(arity),
                       ParseError::Location::kLine, line_no);
    }
    for (int d = 0; d < dimension; ++d) {
      float v = 0;
      if (!ParseFloat(fields[d + 1], &v)) {
        throw ParseError(path.string() + ": non-numeric component '" +
                             fields[d + 1] + "'",
                         ParseError::Location::kLine, line_no);
      }
      data.push_back(v);
    }
    if (!first_line.emplace(fields[0], line_no).second) {
      throw ParseError(path.string() + ": duplicate word '" + fields[0] +
                           "' (first on line " +
                           std::to_string(first_line[fields[0]]) + ")",
                       ParseError::Location::kLine, line_no);
    }
    words.push_back(std::move(fields[0]));
  }
  if (words.empty()) {
    throw ParseError(path.string() + ": no word vectors found");
  }
  if (declared_count && *declared_count != words.size() && !options.limit) {
    std::string message = path.string() + ": header declares " +
                          std::to_string(*declared_count) + " words, found " +
                          std::to_string(words.size());
    if (options.strict) throw ParseError(message, ParseError::Location::kLine, 1);
    if (warnings != nullptr) warnings->push_back(message);
  }
  return EmbeddingTable(dimension, std::move(words), std::move(data),
                        path.string());
}

void WriteVecTable(const EmbeddingTable& table, const fs::path& path) {
  std::string out = std::to_string(table.size()) + " " +
                    std::to_string(table.dimension()) + "\n";
  char buf[32];
  for (size_t i = 0; i < table.size(); ++i) {
    out += table.word(i);
    for (float v : table.vector(i)) {
      // 9 significant digits round-trip any float exactly.
      std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(v));
      out += buf;
    }
    out.push_back('\n');
  }
  WriteFileAtomic(path, out);
}

NeighborList NearestNeighbors(const EmbeddingTable& table,
                              std::string_view word, int k) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  std::optional<size_t> q = table.Find(word);
  if (!q) {
    throw PreconditionError("'" + std::string(word) + "' is not in the vocabulary");
  }
  const double q_norm = table.norm(*q);
  if (q_norm == 0.0) {
    throw PreconditionError("'" + std::string(word) + "' has a zero vector");
  }
  const std::span<const float> qv = table.vector(*q);

  std::vector<Neighbor> scored;
  scored.reserve(table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    if (i == *q) continue;
    double score = 0.0;
    if (table.norm(i) > 0.0) {
      double dot = 0.0;
      std::span<const float> v = table.vector(i);
      for (size_t d = 0; d < v.size(); ++d) {
        dot += static_cast<double>(qv[d]) * v[d];
      }
      score = std::clamp(dot / (q_norm * table.norm(i)), -1.0, 1.0);
    }
    scored.push_back({table.word(i), score});
  }
  const size_t take = std::min(static_cast<size_t>(k), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(take),
                    scored.end(), [](const Neighbor& a, const Neighbor& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.word < b.word;
                    });
  scored.resize(take);
  return {table.word(*q), std::move(scored)};
}

}  // namespace auggate::lexicon
