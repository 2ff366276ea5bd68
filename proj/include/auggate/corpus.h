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
#ifndef AUGGATE_CORPUS_H_
#define AUGGATE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace auggate::corpus {

enum class Origin { kOriginal, kAugmented };

std::string_view OriginName(Origin origin);
Origin ParseOrigin(std::string_view name);

// One corpus record.
struct LabeledSentence {
  std::string id;
  std::string text;
  std::string label;
  Origin origin = Origin::kOriginal;
  // Id of the original record this one was derived from; empty for originals.
  std::string source_id;

  bool operator==(const LabeledSentence&) const = default;
};

// An ordered, validated collection of records. Immutable once built.
//
// Invariants enforced at construction: ids unique, texts non-blank, every
// label in label_set, and every augmented record's source_id names an
// original record in the same dataset.
class Dataset {
 public:
  Dataset() = default;
  // An empty label_set is inferred from the records.
  Dataset(std::string name, std::vector<LabeledSentence> records,
          std::set<std::string> label_set = {});

  const std::string& name() const { return name_; }
  const std::vector<LabeledSentence>& records() const { return records_; }
  const std::set<std::string>& label_set() const { return label_set_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Labels in canonical (sorted) order.
  std::vector<std::string> LabelOrder() const {
    return {label_set_.begin(), label_set_.end()};
  }
  const LabeledSentence* Find(std::string_view id) const;

  bool operator==(const Dataset& other) const {
    return name_ == other.name_ && records_ == other.records_ &&
           label_set_ == other.label_set_;
  }

 private:
  std::string name_;
  std::vector<LabeledSentence> records_;
  std::set<std::string> label_set_;
  std::unordered_map<std::string, size_t> index_;
};

enum class FileFormat { kDelimited, kJsonLines };

FileFormat ParseFileFormat(std::string_view name);
// .jsonl/.ndjson -> kJsonLines, everything else kDelimited.
FileFormat FormatForPath(const std::filesystem::path& path);

// Column (delimited) or field (JSON lines) names. An empty id_field means
// ids are synthesized as "<name>:<row#>".
struct Schema {
  std::string id_field;
  std::string text_field = "text";
  std::string label_field = "label";
  std::string origin_field = "origin";
  std::string source_id_field = "source_id";
};

struct LoadOptions {
  std::string name = "dataset";
  Schema schema;
  // Abort on the first malformed row; otherwise skip it and record an issue.
  bool strict = true;
  // When non-empty, labels outside this set are errors.
  std::set<std::string> declared_labels;
  // Delimiter for kDelimited; 0 picks it from the file extension.
  char delimiter = 0;
};

struct RowIssue {
  int64_t row = 0;  // 0-based data row (header excluded)
  std::string message;
};

Dataset LoadDataset(const std::filesystem::path& path, FileFormat format,
                    const LoadOptions& options,
                    std::vector<RowIssue>* issues = nullptr);

// Writes id, text, label, origin and source_id using schema's names (an
// empty id_field is written as "id"). Throws IoError.
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path,
                  FileFormat format, const Schema& schema = {},
                  char delimiter = 0);

struct SplitRatios {
  double train = 0.7;
  double validation = 0.1;
  double test = 0.2;
};

struct DatasetSplit {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Seeded shuffle, then validation and test get floor(n * ratio) records and
// train takes the remainder. Each split keeps the input's relative order and
// label set.
DatasetSplit SplitDataset(const Dataset& dataset, const SplitRatios& ratios,
                          uint64_t seed);

}  // namespace auggate::corpus

#endif  // AUGGATE_CORPUS_H_
