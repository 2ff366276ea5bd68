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


#ifndef AUGGATE_EVAL_H_
#define AUGGATE_EVAL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auggate/augment.h"
#include "auggate/classify.h"
#include "auggate/corpus.h"
#include "auggate/providers.h"
#include "json.hpp"

namespace auggate::eval {

struct MethodExpansion {
  size_t candidates = 0;
  double candidate_factor = 0;
  // Present once the method's output has been gated.
  std::optional<size_t> accepted;
  std::optional<double> accepted_factor;
};

struct ExpansionReport {
  std::string dataset;
  size_t original_count = 0;
  std::map<std::string, MethodExpansion> per_method;

  nlohmann::json ToJson() const;
  std::string ToTable() const;
};

// Counts generated candidates per method and, when accepted is given, the
// accepted ones too. Methods in include appear even with no candidates.
// Factors are count / original_count, or zero for an empty dataset.
ExpansionReport ExpansionStats(
    const corpus::Dataset& original,
    std::span<const augment::AugmentedCandidate> generated,
    std::optional<std::span<const augment::AugmentedCandidate>> accepted = std::nullopt,
    std::span<const augment::Method> include = {});

// Reads candidate files (one or more per method) and counts their records.
ExpansionReport ExpansionStatsFromFiles(
    const corpus::Dataset& original,
    std::span<const std::filesystem::path> generated_files,
    std::optional<std::filesystem::path> accepted_file = std::nullopt);

struct SimilarityRow {
  size_t n_all = 0;
  double mean_all = 0;
  size_t n_accepted = 0;
  std::optional<double> mean_accepted;
};

// Means per method over every scored candidate and over accepted ones.
// Candidates marked degenerate or ungated are skipped; a candidate that was
// never gated throws PreconditionError. Methods without scored candidates
// are absent.
std::map<std::string, SimilarityRow> AverageSimilarity(
    std::span<const augment::AugmentedCandidate> gated);
nlohmann::json SimilarityJson(const std::map<std::string, SimilarityRow>& rows);
std::string SimilarityTable(const std::map<std::string, SimilarityRow>& rows);

enum class SampleMode { kFirst, kRandom };

struct AuditOptions {
  size_t n = 500;
  SampleMode mode = SampleMode::kFirst;
  uint64_t seed = 102;
  // Leave the method out of the annotator file.
  bool blind = true;
  // Sample n rows from each method rather than n overall.
  bool per_method = true;
};

struct AuditRow {
  std::string round_trip_id;
  std::string source_id;
  std::string method;
  std::string source_text;
  std::string candidate_text;
  std::string inherited_label;
  std::string human_label;
  std::string same_meaning;
  std::string notes;
};

struct AuditBatch {
  std::string batch_id;
  SampleMode mode = SampleMode::kFirst;
  uint64_t seed = 0;
  bool blind = true;
  bool per_method = true;
  std::vector<std::string> label_set;
  std::vector<AuditRow> rows;
  std::vector<std::string> warnings;
};

// Samples candidates for human review, per method (in method-name order)
// or overall. Requesting more rows than exist exports them all and records
// a warning. Throws PreconditionError for
// n == 0 or an unknown source.
AuditBatch ExportAudit(const corpus::Dataset& originals,
                       std::span<const augment::AugmentedCandidate> candidates,
                       const AuditOptions& options);

// The annotator file and the key that maps its rows back to sources and
// methods.
void WriteAuditBatch(const AuditBatch& batch, const std::filesystem::path& sheet,
                     const std::filesystem::path& key);
AuditBatch ReadAuditKey(const std::filesystem::path& key);
// Rows of a filled annotator file; columns are matched by header name.
std::vector<AuditRow> ReadAuditSheet(const std::filesystem::path& sheet);

struct ClassAlteration {
  size_t audited = 0;
  size_t altered = 0;
  // altered / audited * 100, zero when nothing was audited.
  double percent = 0;
};

struct AuditIssue {
  std::string round_trip_id;
  std::string reason;
};

struct AlterationReport {
  std::string batch_id;
  // method -> inherited label -> tally
  std::map<std::string, std::map<std::string, ClassAlteration>> per_method;
  std::vector<AuditIssue> issues;

  nlohmann::json ToJson() const;
  std::string ToTable() const;
};

// Compares human labels with inherited ones. Rows with a missing or unknown
// human label are listed as issues and left out of the denominators. Throws
// ParseError for a round-trip id that does not belong to the batch.
AlterationReport ScoreAudit(const AuditBatch& key, std::span<const AuditRow> filled);
AlterationReport ImportAudit(const AuditBatch& key, const std::filesystem::path& sheet);

struct OverfitRow {
  std::string pool;
  int level = 0;
  size_t requested = 0;
  size_t used = 0;
  size_t train_size = 0;
  bool truncated = false;
  double train_f1 = 0;
  double validation_f1 = 0;
};

// For each pool and level L, trains on the originals plus the first
// min(L * |train|, available) pool rows and scores train and validation.
// Level 0 is the unaugmented baseline.
std::vector<OverfitRow> OverfitCurve(
    const classify::FeatureSet& train, const classify::FeatureSet& validation,
    const std::map<std::string, classify::FeatureSet>& pools, std::span<const int> levels,
    size_t dimension, const std::vector<std::string>& labels,
    const classify::TrainConfig& config, const std::string& positive = "1");

// Embeds the datasets and pools and runs the curve.
std::vector<OverfitRow> OverfitCurve(
    const corpus::Dataset& train, const corpus::Dataset& validation,
    const std::map<std::string, std::vector<augment::AugmentedCandidate>>& pools,
    std::span<const int> levels, providers::Embedder& embedder,
    const classify::TrainConfig& config, const std::string& positive = "1");

nlohmann::json OverfitJson(std::span<const OverfitRow> rows);
std::string OverfitTable(std::span<const OverfitRow> rows);

}  // namespace auggate::eval

#endif  // AUGGATE_EVAL_H_
