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
#include "auggate/corpus.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "auggate/error.h"
#include "auggate/util/delimited.h"
#include "auggate/util/file_util.h"
#include "auggate/util/rng.h"
#include "auggate/util/text.h"
#include "json.hpp"

namespace auggate::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view OriginName(Origin origin) {
  return origin == Origin::kOriginal ? "original" : "augmented";
}

Origin ParseOrigin(std::string_view name) {
  std::string lower = AsciiLower(Trim(name));
  if (lower.empty() || lower == "original") return Origin::kOriginal;
  if (lower == "augmented") return Origin::kAugmented;
  throw ParseError("unknown origin '" + std::string(name) + "'");
}

Dataset::Dataset(std::string name, std::vector<LabeledSentence> records,
                 std::set<std::string> label_set)
    : name_(std::move(name)),
      records_(std::move(records)),
      label_set_(std::move(label_set)) {
  const bool infer_labels = label_set_.empty();
  index_.reserve(records_.size());
  for (size_t i = 0; i < records_.size(); ++i) {
    const LabeledSentence& r = records_[i];
    if (r.id.empty()) {
      throw PreconditionError("record " + std::to_string(i) + " has empty id");
    }
    if (!index_.emplace(r.id, i).second) {
      throw PreconditionError("duplicate record id '" + r.id + "'");
    }
    if (Trim(r.text).empty()) {
      throw PreconditionError("record '" + r.id + "' has blank text");
    }
    if (infer_labels) {
      label_set_.insert(r.label);
    } else if (!label_set_.contains(r.label)) {
      throw PreconditionError("record '" + r.id + "' has label '" + r.label +
                              "' outside the label set");
    }
  }
  for (const LabeledSentence& r : records_) {
    if (r.origin != Origin::kAugmented) continue;
    const LabeledSentence* src = Find(r.source_id);
    if (src == nullptr || src->origin != Origin::kOriginal) {
      throw PreconditionError("augmented record '" + r.id +
                              "' references missing original '" +
                              r.source_id + "'");
    }
  }
}

const LabeledSentence* Dataset::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

FileFormat ParseFileFormat(std::string_view name) {
  std::string lower = AsciiLower(name);
  if (lower == "delimited" || lower == "csv" || lower == "tsv") {
    return FileFormat::kDelimited;
  }
  if (lower == "jsonl" || lower == "line-delimited-records" ||
      lower == "ndjson") {
    return FileFormat::kJsonLines;
  }
  throw ConfigError("unknown dataset format '" + std::string(name) + "'");
}

FileFormat FormatForPath(const fs::path& path) {
  std::string ext = AsciiLower(path.extension().string());
  return (ext == ".jsonl" || ext == ".ndjson") ? FileFormat::kJsonLines
                                               : FileFormat::kDelimited;
}

namespace {

// Raw field values for one row before validation.
struct RawRow {
  int64_t row = 0;
  int64_t line = 0;
  std::string id, text, label, origin, source_id;
  bool has_id = false;
  // Structural problem found while reading; validation reports it.
  std::string error;
};

std::vector<RawRow> ReadDelimitedRows(const fs::path& path,
                                      const Schema& schema, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  DelimitedReader reader(in, delimiter);
  DelimitedRecord header;
  if (!reader.Next(&header)) {
    throw ParseError(path.string() + ": missing header row",
                     ParseError::Location::kLine, 1);
  }
  auto column = [&](const std::string& name, bool required) -> int {
    if (name.empty()) return -1;
    for (size_t i = 0; i < header.fields.size(); ++i) {
      if (Trim(header.fields[i]) == name) return static_cast<int>(i);
    }
    if (required) {
      throw ParseError(path.string() + ": header lacks column '" + name + "'",
                       ParseError::Location::kLine, header.line);
    }
    return -1;
  };
  const int id_col = column(schema.id_field, true);
  const int text_col = column(schema.text_field, true);
  const int label_col = column(schema.label_field, true);
  const int origin_col = column(schema.origin_field, false);
  const int source_col = column(schema.source_id_field, false);

  std::vector<RawRow> rows;
  DelimitedRecord rec;
  int64_t row = 0;
  while (reader.Next(&rec)) {
    RawRow raw;
    raw.row = row++;
    raw.line = rec.line;
    if (rec.fields.size() != header.fields.size()) {
      raw.error = "expected " + std::to_string(header.fields.size()) +
                  " fields, got " + std::to_string(rec.fields.size());
      rows.push_back(std::move(raw));
      continue;
    }
    auto get = [&](int col) { return col < 0 ? std::string() : rec.fields[col]; };
    raw.has_id = id_col >= 0;
    raw.id = get(id_col);
    raw.text = get(text_col);
    raw.label = Trim(get(label_col));
    raw.origin = get(origin_col);
    raw.source_id = get(source_col);
    rows.push_back(std::move(raw));
  }
  return rows;
}

std::vector<RawRow> ReadJsonRows(const fs::path& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<RawRow> rows;
  std::string line;
  int64_t line_no = 0, row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    RawRow raw;
    raw.row = row++;
    raw.line = line_no;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      raw.error = "not a JSON object";
      rows.push_back(std::move(raw));
      continue;
    }
    if (!j.is_object()) {
      raw.error = "not a JSON object";
      rows.push_back(std::move(raw));
      continue;
    }
    auto get = [&](const std::string& key) -> std::string {
      if (key.empty() || !j.contains(key) || j[key].is_null()) return {};
      const json& v = j[key];
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    raw.has_id = !schema.id_field.empty();
    raw.id = get(schema.id_field);
    raw.text = get(schema.text_field);
    raw.label = get(schema.label_field);
    raw.origin = get(schema.origin_field);
    raw.source_id = get(schema.source_id_field);
    rows.push_back(std::move(raw));
  }
  return rows;
}

}  // namespace

Dataset LoadDataset(const fs::path& path, FileFormat format,
                    const LoadOptions& options, std::vector<RowIssue>* issues) {
  if (!fs::exists(path)) throw IoError("no such file: " + path.string());
  const char delimiter =
      options.delimiter != 0 ? options.delimiter : DelimiterForPath(path);
  std::vector<RawRow> rows = format == FileFormat::kDelimited
                                 ? ReadDelimitedRows(path, options.schema, delimiter)
                                 : ReadJsonRows(path, options.schema);

  std::vector<LabeledSentence> records;
  records.reserve(rows.size());
  for (RawRow& raw : rows) {
    std::string problem;
    if (!raw.error.empty()) {
      problem = raw.error;
    } else if (Trim(raw.text).empty()) {
      problem = "empty text field";
    } else if (raw.label.empty()) {
      problem = "empty label field";
    } else if (!options.declared_labels.empty() &&
               !options.declared_labels.contains(raw.label)) {
      problem = "unknown label '" + raw.label + "'";
    } else if (raw.has_id && raw.id.empty()) {
      problem = "empty id field";
    }
    Origin origin = Origin::kOriginal;
    if (problem.empty()) {
      try {
        origin = ParseOrigin(raw.origin);
      } catch (const ParseError& e) {
        problem = e.what();
      }
    }
    if (!problem.empty()) {
      std::string message = path.string() + ": " + problem;
      if (options.strict) {
        throw ParseError(message, ParseError::Location::kRow, raw.row);
      }
      if (issues != nullptr) issues->push_back({raw.row, message});
      continue;
    }
    LabeledSentence r;
    r.id = raw.has_id ? raw.id : options.name + ":" + std::to_string(raw.row);
    r.text = std::move(raw.text);
    r.label = std::move(raw.label);
    r.origin = origin;
    r.source_id = origin == Origin::kAugmented ? std::move(raw.source_id)
                                               : std::string();
    records.push_back(std::move(r));
  }
  return Dataset(options.name, std::move(records), options.declared_labels);
}

void WriteDataset(const Dataset& dataset, const fs::path& path,
                  FileFormat format, const Schema& schema, char delimiter) {
  const std::string id_field = schema.id_field.empty() ? "id" : schema.id_field;
  std::string out;
  if (format == FileFormat::kDelimited) {
    const char delim = delimiter != 0 ? delimiter : DelimiterForPath(path);
    out += FormatDelimitedRow({id_field, schema.text_field, schema.label_field,
                               schema.origin_field, schema.source_id_field},
                              delim);
    for (const LabeledSentence& r : dataset.records()) {
      out += FormatDelimitedRow({r.id, r.text, r.label,
                                 std::string(OriginName(r.origin)), r.source_id},
                                delim);
    }
  } else {
    for (const LabeledSentence& r : dataset.records()) {
      json j;
      j[id_field] = r.id;
      j[schema.text_field] = r.text;
      j[schema.label_field] = r.label;
      j[schema.origin_field] = OriginName(r.origin);
      j[schema.source_id_field] = r.source_id;
      out += j.dump();
      out.push_back('\n');
    }
  }
  WriteFileAtomic(path, out);
}

DatasetSplit SplitDataset(const Dataset& dataset, const SplitRatios& ratios,
                          uint64_t seed) {
  if (!(ratios.train > 0 && ratios.validation > 0 && ratios.test > 0)) {
    throw PreconditionError("split ratios must be positive");
  }
  if (std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    throw PreconditionError("split ratios must sum to 1");
  }
  const size_t n = dataset.size();
  if (n < 3) {
    throw PreconditionError("need at least 3 records for a three-way split");
  }
  // The epsilon keeps products such as 10 * 0.7 from flooring to 6.
  auto part = [n](double r) {
    return static_cast<size_t>(std::floor(static_cast<double>(n) * r + 1e-9));
  };
  const size_t n_val = part(ratios.validation);
  const size_t n_test = part(ratios.test);

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(order);

  // 0 = train, 1 = validation, 2 = test, indexed by original position.
  std::vector<int> assignment(n, 0);
  for (size_t i = 0; i < n_val; ++i) assignment[order[i]] = 1;
  for (size_t i = n_val; i < n_val + n_test; ++i) assignment[order[i]] = 2;

  std::vector<LabeledSentence> parts[3];
  for (size_t i = 0; i < n; ++i) {
    parts[assignment[i]].push_back(dataset.records()[i]);
  }
  // Every augmented record must land in the same split as its source.
  auto build = [&](std::vector<LabeledSentence> recs, const char* suffix) {
    std::unordered_map<std::string, bool> present;
    for (const auto& r : recs) present[r.id] = true;
    for (auto& r : recs) {
      if (r.origin == Origin::kAugmented && !present.contains(r.source_id)) {
        throw PreconditionError(
            "cannot split a dataset whose augmented records would be "
            "separated from their sources; split the originals first");
      }
    }
    return Dataset(dataset.name() + "/" + suffix, std::move(recs),
                   dataset.label_set());
  };
  return {build(std::move(parts[0]), "train"),
          build(std::move(parts[1]), "validation"),
          build(std::move(parts[2]), "test")};
}

}  // namespace auggate::corpus
