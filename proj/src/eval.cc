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

#include "auggate/eval.h"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "auggate/error.h"
#include "auggate/util/delimited.h"
#include "auggate/util/file_util.h"
#include "auggate/util/rng.h"
#include "auggate/util/text.h"

namespace auggate::eval {

using augment::AugmentedCandidate;
using nlohmann::json;

namespace {

json Opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string Cell(const std::optional<double>& v, int decimals) {
  return v ? FormatFixed(*v, decimals) : "-";
}

double Factor(size_t count, size_t original) {
  return original == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(original);
}

}  // namespace

json ExpansionReport::ToJson() const {
  json methods = json::object();
  for (const auto& [name, m] : per_method) {
    methods[name] = {{"candidates", m.candidates},
                     {"candidate_factor", m.candidate_factor},
                     {"accepted", m.accepted ? json(*m.accepted) : json(nullptr)},
                     {"accepted_factor", Opt(m.accepted_factor)}};
  }
  return {{"dataset", dataset}, {"original_count", original_count}, {"per_method", methods}};
}

std::string ExpansionReport::ToTable() const {
  std::string out = "dataset " + dataset + ", " + std::to_string(original_count) +
                    " original records\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %10s %8s %10s %8s\n", "method", "generated",
                "factor", "accepted", "factor");
  out += buf;
  for (const auto& [name, m] : per_method) {
    std::snprintf(buf, sizeof(buf), "%-18s %10zu %8s %10s %8s\n", name.c_str(),
                  m.candidates, FormatFixed(m.candidate_factor, 2).c_str(),
                  m.accepted ? std::to_string(*m.accepted).c_str() : "-",
                  Cell(m.accepted_factor, 2).c_str());
    out += buf;
  }
  return out;
}

ExpansionReport ExpansionStats(const corpus::Dataset& original,
                               std::span<const AugmentedCandidate> generated,
                               std::optional<std::span<const AugmentedCandidate>> accepted,
                               std::span<const augment::Method> include) {
  ExpansionReport report;
  report.dataset = original.name();
  report.original_count = original.size();
  for (augment::Method m : include) report.per_method[std::string(augment::MethodName(m))];
  for (const AugmentedCandidate& c : generated) {
    ++report.per_method[std::string(augment::MethodName(c.method))].candidates;
  }
  if (accepted) {
    for (auto& [name, m] : report.per_method) m.accepted = 0;
    for (const AugmentedCandidate& c : *accepted) {
      auto& m = report.per_method[std::string(augment::MethodName(c.method))];
      m.accepted = m.accepted.value_or(0) + 1;
    }
  }
  for (auto& [name, m] : report.per_method) {
    m.candidate_factor = Factor(m.candidates, report.original_count);
    if (m.accepted) m.accepted_factor = Factor(*m.accepted, report.original_count);
  }
  return report;
}

ExpansionReport ExpansionStatsFromFiles(const corpus::Dataset& original,
                                        std::span<const std::filesystem::path> generated_files,
                                        std::optional<std::filesystem::path> accepted_file) {
  std::vector<AugmentedCandidate> generated;
  for (const auto& path : generated_files) {
    for (auto& c : augment::ReadCandidates(path)) generated.push_back(std::move(c));
  }
  if (!accepted_file) return ExpansionStats(original, generated);
  const std::vector<AugmentedCandidate> accepted = augment::ReadCandidates(*accepted_file);
  return ExpansionStats(original, generated, std::span<const AugmentedCandidate>(accepted));
}

std::map<std::string, SimilarityRow> AverageSimilarity(
    std::span<const AugmentedCandidate> gated) {
  struct Sums {
    double all = 0, accepted = 0;
    size_t n_all = 0, n_accepted = 0;
  };
  std::map<std::string, Sums> sums;
  for (const AugmentedCandidate& c : gated) {
    if (!c.similarity) {
      if (c.gate_note.empty()) {
        throw PreconditionError("candidate for '" + c.source_id + "' has not been gated");
      }
      continue;
    }
    Sums& s = sums[std::string(augment::MethodName(c.method))];
    s.all += *c.similarity;
    ++s.n_all;
    if (c.accepted.value_or(false)) {
      s.accepted += *c.similarity;
      ++s.n_accepted;
    }
  }
  std::map<std::string, SimilarityRow> out;
  for (const auto& [name, s] : sums) {
    SimilarityRow row;
    row.n_all = s.n_all;
    row.mean_all = s.all / static_cast<double>(s.n_all);
    row.n_accepted = s.n_accepted;
    if (s.n_accepted > 0) row.mean_accepted = s.accepted / static_cast<double>(s.n_accepted);
    out[name] = row;
  }
  return out;
}

json SimilarityJson(const std::map<std::string, SimilarityRow>& rows) {
  json out = json::object();
  for (const auto& [name, r] : rows) {
    out[name] = {{"n_all", r.n_all},
                 {"mean_all", r.mean_all},
                 {"n_accepted", r.n_accepted},
                 {"mean_accepted", Opt(r.mean_accepted)}};
  }
  return out;
}

std::string SimilarityTable(const std::map<std::string, SimilarityRow>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %8s %10s %10s %10s\n", "method", "n_all",
                "mean_all", "n_accepted", "mean_acc");
  out += buf;
  for (const auto& [name, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%-18s %8zu %10s %10zu %10s\n", name.c_str(), r.n_all,
                  FormatFixed(r.mean_all, 4).c_str(), r.n_accepted,
                  Cell(r.mean_accepted, 4).c_str());
    out += buf;
  }
  return out;
}

namespace {

const char* ModeName(SampleMode mode) { return mode == SampleMode::kFirst ? "first" : "random"; }

SampleMode ParseMode(const std::string& s) {
  if (s == "first") return SampleMode::kFirst;
  if (s == "random") return SampleMode::kRandom;
  throw ParseError("unknown audit sample mode '" + s + "'");
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

const std::vector<std::string> kSheetColumns = {"round_trip_id", "source_text",
                                                "candidate_text", "inherited_label",
                                                "human_label", "same_meaning", "notes"};

}  // namespace

AuditBatch ExportAudit(const corpus::Dataset& originals,
                       std::span<const AugmentedCandidate> candidates,
                       const AuditOptions& options) {
  if (options.n == 0) throw PreconditionError("audit sample size must be at least 1");
  AuditBatch batch;
  batch.mode = options.mode;
  batch.seed = options.seed;
  batch.blind = options.blind;
  batch.per_method = options.per_method;
  batch.label_set = originals.LabelOrder();

  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const std::string key =
        options.per_method ? std::string(augment::MethodName(candidates[i].method)) : "";
    groups[key].push_back(i);
  }
  std::vector<size_t> picks;
  for (const auto& [method, members] : groups) {
    size_t n = options.n;
    if (n > members.size()) {
      batch.warnings.push_back((method.empty() ? std::string() : method + ": ") + "requested " +
                               std::to_string(options.n) + " rows but only " +
                               std::to_string(members.size()) +
                               " candidates are available; exporting all");
      n = members.size();
    }
    std::vector<size_t> chosen;
    if (options.mode == SampleMode::kFirst) {
      chosen.assign(members.begin(), members.begin() + n);
    } else {
      Rng rng = Rng::Substream(options.seed, {Fnv1a64("audit"), Fnv1a64(method)});
      for (int k : rng.SampleWithoutReplacement(static_cast<int>(members.size()),
                                                static_cast<int>(n))) {
        chosen.push_back(members[k]);
      }
      std::sort(chosen.begin(), chosen.end());
    }
    picks.insert(picks.end(), chosen.begin(), chosen.end());
  }
  if (candidates.empty()) {
    batch.warnings.push_back("requested " + std::to_string(options.n) +
                             " rows but there are no candidates");
  }

  std::string fingerprint = std::string(ModeName(options.mode)) + '\x1e' +
                            std::to_string(options.seed) + '\x1e' +
                            (options.per_method ? "per_method" : "overall") + '\x1e';
  for (size_t i : picks) {
    fingerprint += candidates[i].source_id + '\x1f' + candidates[i].text + '\x1e';
  }
  batch.batch_id = Hex64(Fnv1a64(fingerprint));

  for (size_t row = 0; row < picks.size(); ++row) {
    const AugmentedCandidate& c = candidates[picks[row]];
    const corpus::LabeledSentence* source = originals.Find(c.source_id);
    if (source == nullptr) {
      throw PreconditionError("candidate references unknown source '" + c.source_id + "'");
    }
    AuditRow r;
    r.round_trip_id = batch.batch_id + ":" + std::to_string(row);
    r.source_id = c.source_id;
    r.method = std::string(augment::MethodName(c.method));
    r.source_text = source->text;
    r.candidate_text = c.text;
    r.inherited_label = c.label;
    batch.rows.push_back(std::move(r));
  }
  return batch;
}

void WriteAuditBatch(const AuditBatch& batch, const std::filesystem::path& sheet,
                     const std::filesystem::path& key) {
  const char delim = DelimiterForPath(sheet);
  std::vector<std::string> header = kSheetColumns;
  if (!batch.blind) header.push_back("method");
  std::string out = FormatDelimitedRow(header, delim);
  for (const AuditRow& r : batch.rows) {
    std::vector<std::string> fields = {r.round_trip_id,   r.source_text, r.candidate_text,
                                       r.inherited_label, r.human_label, r.same_meaning,
                                       r.notes};
    if (!batch.blind) fields.push_back(r.method);
    out += FormatDelimitedRow(fields, delim);
  }
  WriteFileAtomic(sheet, out);

  json rows = json::array();
  for (const AuditRow& r : batch.rows) {
    rows.push_back({{"round_trip_id", r.round_trip_id},
                    {"source_id", r.source_id},
                    {"method", r.method},
                    {"inherited_label", r.inherited_label},
                    {"source_text", r.source_text},
                    {"candidate_text", r.candidate_text}});
  }
  json j = {{"batch_id", batch.batch_id}, {"mode", ModeName(batch.mode)},
            {"seed", batch.seed},         {"blind", batch.blind},
            {"per_method", batch.per_method},
            {"label_set", batch.label_set}, {"warnings", batch.warnings},
            {"rows", rows}};
  WriteFileAtomic(key, j.dump(2) + "\n");
}

AuditBatch ReadAuditKey(const std::filesystem::path& key) {
  json j;
  try {
    j = json::parse(ReadFileToString(key));
  } catch (const json::parse_error& e) {
    throw ParseError(key.string() + ": " + e.what(), ParseError::Location::kByteOffset,
                     static_cast<int64_t>(e.byte));
  }
  AuditBatch batch;
  try {
    batch.batch_id = j.at("batch_id").get<std::string>();
    batch.mode = ParseMode(j.at("mode").get<std::string>());
    batch.seed = j.at("seed").get<uint64_t>();
    batch.blind = j.at("blind").get<bool>();
    batch.per_method = j.value("per_method", true);
    batch.label_set = j.at("label_set").get<std::vector<std::string>>();
    batch.warnings = j.value("warnings", std::vector<std::string>{});
    for (const json& r : j.at("rows")) {
      AuditRow row;
      row.round_trip_id = r.at("round_trip_id").get<std::string>();
      row.source_id = r.at("source_id").get<std::string>();
      row.method = r.at("method").get<std::string>();
      row.inherited_label = r.at("inherited_label").get<std::string>();
      row.source_text = r.value("source_text", "");
      row.candidate_text = r.value("candidate_text", "");
      batch.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ParseError(key.string() + ": malformed audit key: " + e.what());
  }
  return batch;
}

std::vector<AuditRow> ReadAuditSheet(const std::filesystem::path& sheet) {
  std::ifstream in(sheet, std::ios::binary);
  if (!in) throw IoError("cannot open " + sheet.string());
  DelimitedReader reader(in, DelimiterForPath(sheet));
  DelimitedRecord header;
  if (!reader.Next(&header)) throw ParseError(sheet.string() + ": empty audit sheet");
  std::map<std::string, size_t> column;
  for (size_t i = 0; i < header.fields.size(); ++i) column[Trim(header.fields[i])] = i;
  for (const char* required : {"round_trip_id", "human_label"}) {
    if (!column.contains(required)) {
      throw ParseError(sheet.string() + ": missing column '" + required + "'");
    }
  }
  std::vector<AuditRow> rows;
  DelimitedRecord record;
  int64_t row = 0;
  while (reader.Next(&record)) {
    ++row;
    auto get = [&](const char* name) -> std::string {
      auto it = column.find(name);
      if (it == column.end() || it->second >= record.fields.size()) return "";
      return record.fields[it->second];
    };
    AuditRow r;
    r.round_trip_id = Trim(get("round_trip_id"));
    if (r.round_trip_id.empty()) {
      throw ParseError(sheet.string() + ": row without round_trip_id",
                       ParseError::Location::kRow, row);
    }
    r.source_text = get("source_text");
    r.candidate_text = get("candidate_text");
    r.inherited_label = get("inherited_label");
    r.human_label = Trim(get("human_label"));
    r.same_meaning = Trim(get("same_meaning"));
    r.notes = get("notes");
    r.method = get("method");
    rows.push_back(std::move(r));
  }
  return rows;
}

json AlterationReport::ToJson() const {
  json methods = json::object();
  for (const auto& [method, classes] : per_method) {
    json c = json::object();
    for (const auto& [label, a] : classes) {
      c[label] = {{"audited", a.audited}, {"altered", a.altered}, {"percent", a.percent}};
    }
    methods[method] = c;
  }
  json issues = json::array();
  for (const AuditIssue& i : this->issues) {
    issues.push_back({{"round_trip_id", i.round_trip_id}, {"reason", i.reason}});
  }
  return {{"batch_id", batch_id}, {"per_method", methods}, {"issues", issues}};
}

std::string AlterationReport::ToTable() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %-10s %8s %8s %9s\n", "method", "label", "audited",
                "altered", "altered%");
  out += buf;
  for (const auto& [method, classes] : per_method) {
    for (const auto& [label, a] : classes) {
      std::snprintf(buf, sizeof(buf), "%-18s %-10s %8zu %8zu %8s%%\n", method.c_str(),
                    label.c_str(), a.audited, a.altered, FormatFixed(a.percent, 1).c_str());
      out += buf;
    }
  }
  if (!issues.empty()) out += std::to_string(issues.size()) + " rows excluded\n";
  return out;
}

AlterationReport ScoreAudit(const AuditBatch& key, std::span<const AuditRow> filled) {
  std::unordered_map<std::string, const AuditRow*> by_id;
  AlterationReport report;
  report.batch_id = key.batch_id;
  const std::set<std::string> labels(key.label_set.begin(), key.label_set.end());
  for (const AuditRow& r : key.rows) {
    by_id[r.round_trip_id] = &r;
    for (const std::string& label : labels) report.per_method[r.method][label];
  }
  std::set<std::string> seen;
  for (const AuditRow& row : filled) {
    auto it = by_id.find(row.round_trip_id);
    if (it == by_id.end()) {
      throw ParseError("round-trip id '" + row.round_trip_id + "' does not belong to batch " +
                       key.batch_id);
    }
    if (!seen.insert(row.round_trip_id).second) {
      report.issues.push_back({row.round_trip_id, "duplicate row"});
      continue;
    }
    if (row.human_label.empty()) {
      report.issues.push_back({row.round_trip_id, "missing human_label"});
      continue;
    }
    if (!labels.contains(row.human_label)) {
      report.issues.push_back({row.round_trip_id, "unknown label '" + row.human_label + "'"});
      continue;
    }
    const AuditRow& source = *it->second;
    ClassAlteration& a = report.per_method[source.method][source.inherited_label];
    ++a.audited;
    if (row.human_label != source.inherited_label) ++a.altered;
  }
  for (const AuditRow& r : key.rows) {
    if (!seen.contains(r.round_trip_id)) report.issues.push_back({r.round_trip_id, "row missing"});
  }
  for (auto& [method, classes] : report.per_method) {
    for (auto& [label, a] : classes) {
      a.percent = a.audited == 0 ? 0.0
                                 : 100.0 * static_cast<double>(a.altered) /
                                       static_cast<double>(a.audited);
    }
  }
  return report;
}

AlterationReport ImportAudit(const AuditBatch& key, const std::filesystem::path& sheet) {
  const std::vector<AuditRow> rows = ReadAuditSheet(sheet);
  return ScoreAudit(key, rows);
}

std::vector<OverfitRow> OverfitCurve(const classify::FeatureSet& train,
                                     const classify::FeatureSet& validation,
                                     const std::map<std::string, classify::FeatureSet>& pools,
                                     std::span<const int> levels, size_t dimension,
                                     const std::vector<std::string>& labels,
                                     const classify::TrainConfig& config,
                                     const std::string& positive) {
  for (int level : levels) {
    if (level < 0) throw PreconditionError("overfit levels must not be negative");
  }
  std::vector<OverfitRow> rows;
  for (const auto& [name, pool] : pools) {
    for (int level : levels) {
      OverfitRow row;
      row.pool = name;
      row.level = level;
      row.requested = static_cast<size_t>(level) * train.rows.size();
      row.used = std::min(row.requested, pool.rows.size());
      row.truncated = row.used < row.requested;
      classify::FeatureSet combined = train;
      for (size_t i = 0; i < row.used; ++i) {
        combined.rows.push_back(pool.rows[i]);
        combined.targets.push_back(pool.targets[i]);
      }
      row.train_size = combined.rows.size();
      const classify::TrainResult fit =
          classify::TrainOnFeatures(combined, dimension, labels, config);
      row.train_f1 = classify::EvaluateFeatures(fit.model, combined, positive).f1;
      row.validation_f1 = validation.rows.empty()
                              ? 0.0
                              : classify::EvaluateFeatures(fit.model, validation, positive).f1;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

classify::FeatureSet Featurize(const std::vector<std::string>& texts,
                               const std::vector<std::string>& gold,
                               const std::vector<std::string>& labels,
                               providers::Embedder& embedder) {
  classify::FeatureSet f;
  for (const std::string& g : gold) {
    auto it = std::find(labels.begin(), labels.end(), g);
    if (it == labels.end()) throw PreconditionError("label '" + g + "' not in training labels");
    f.targets.push_back(static_cast<int>(it - labels.begin()));
  }
  if (!texts.empty()) f.rows = classify::EmbedTexts(embedder, texts);
  return f;
}

classify::FeatureSet FeaturizeDataset(const corpus::Dataset& d,
                                      const std::vector<std::string>& labels,
                                      providers::Embedder& embedder) {
  std::vector<std::string> texts, gold;
  for (const auto& r : d.records()) {
    texts.push_back(r.text);
    gold.push_back(r.label);
  }
  return Featurize(texts, gold, labels, embedder);
}

}  // namespace

std::vector<OverfitRow> OverfitCurve(
    const corpus::Dataset& train, const corpus::Dataset& validation,
    const std::map<std::string, std::vector<AugmentedCandidate>>& pools,
    std::span<const int> levels, providers::Embedder& embedder,
    const classify::TrainConfig& config, const std::string& positive) {
  if (train.empty()) throw PreconditionError("overfit curve needs training records");
  const std::vector<std::string> labels = train.LabelOrder();
  const classify::FeatureSet train_f = FeaturizeDataset(train, labels, embedder);
  const classify::FeatureSet val_f = FeaturizeDataset(validation, labels, embedder);
  size_t max_level = 0;
  for (int level : levels) max_level = std::max(max_level, static_cast<size_t>(std::max(level, 0)));
  std::map<std::string, classify::FeatureSet> pool_f;
  for (const auto& [name, candidates] : pools) {
    std::vector<std::string> texts, gold;
    const size_t limit = std::min(candidates.size(), max_level * train.size());
    for (size_t i = 0; i < limit; ++i) {
      texts.push_back(candidates[i].text);
      gold.push_back(candidates[i].label);
    }
    pool_f[name] = Featurize(texts, gold, labels, embedder);
  }
  const size_t dim = train_f.rows.front().size();
  return OverfitCurve(train_f, val_f, pool_f, levels, dim, labels, config, positive);
}

json OverfitJson(std::span<const OverfitRow> rows) {
  json out = json::array();
  for (const OverfitRow& r : rows) {
    out.push_back({{"pool", r.pool},
                   {"level", r.level},
                   {"requested", r.requested},
                   {"used", r.used},
                   {"train_size", r.train_size},
                   {"truncated", r.truncated},
                   {"train_f1", r.train_f1},
                   {"validation_f1", r.validation_f1}});
  }
  return out;
}

std::string OverfitTable(std::span<const OverfitRow> rows) {
  std::string out;
  char buf[200];
  std::snprintf(buf, sizeof(buf), "%-18s %6s %10s %8s %10s %9s\n", "pool", "level", "train_n",
                "added", "train_f1", "val_f1");
  out += buf;
  for (const OverfitRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-18s %6d %10zu %8zu %10s %9s%s\n", r.pool.c_str(),
                  r.level, r.train_size, r.used, FormatFixed(r.train_f1, 4).c_str(),
                  FormatFixed(r.validation_f1, 4).c_str(), r.truncated ? "  (truncated)" : "");
    out += buf;
  }
  return out;
}

}  // namespace auggate::eval
