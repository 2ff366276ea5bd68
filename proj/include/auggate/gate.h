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


#ifndef AUGGATE_GATE_H_
#define AUGGATE_GATE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "auggate/augment.h"
#include "auggate/corpus.h"
#include "auggate/embedding_vector.h"
#include "auggate/providers.h"
#include "json.hpp"

namespace auggate::gate {

enum class Pooling { kMeanTokens, kFirstToken };

std::string_view PoolingName(Pooling pooling);
// Accepts "mean_tokens" and "first_token"; throws ConfigError otherwise.
Pooling ParsePooling(std::string_view name);

struct GateConfig {
  double threshold = 0.90;
  Pooling pooling = Pooling::kMeanTokens;
  // true: accept when similarity >= threshold; false: strictly greater.
  bool inclusive = true;
  // Texts per embedding request.
  size_t batch_size = 32;

  // Throws ConfigError.
  void Validate() const;
  bool Accepts(double similarity) const {
    return inclusive ? similarity >= threshold : similarity > threshold;
  }
};

struct Tally {
  size_t total = 0;  // accepted + rejected
  size_t accepted = 0;
  size_t rejected = 0;
  size_t ungated = 0;
  // Absent when nothing contributed.
  std::optional<double> mean_similarity_accepted;
  std::optional<double> mean_similarity_all;

  nlohmann::json ToJson() const;
};

struct GateReport {
  double threshold = 0.90;
  bool inclusive = true;
  Tally overall;
  // Keyed by method name.
  std::map<std::string, Tally> per_method;

  nlohmann::json ToJson() const;
  static GateReport FromJson(const nlohmann::json& j);
  // Fixed-width text table, one row per method plus a total row.
  std::string ToTable() const;
};

// Throws PreconditionError on an empty list or mixed dimensions.
EmbeddingVector Pool(std::span<const EmbeddingVector> token_vectors, Pooling pooling);

// Throws PreconditionError on mismatched dimensions or a zero-norm input.
// The result is clamped to [-1, 1].
double Cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Candidates with similarity filled in (or gate_note "degenerate"), plus
// those that could not be embedded (gate_note carries the error).
struct ScoredCandidates {
  std::vector<augment::AugmentedCandidate> scored;
  std::vector<augment::AugmentedCandidate> ungated;
};

// One embedding pass: each distinct original and candidate text is embedded
// once. Throws PreconditionError if a source_id is unknown.
ScoredCandidates ScoreCandidates(const corpus::Dataset& originals,
                                 std::vector<augment::AugmentedCandidate> candidates,
                                 providers::Embedder& embedder,
                                 const GateConfig& config);

struct GateResult {
  std::vector<augment::AugmentedCandidate> accepted;
  std::vector<augment::AugmentedCandidate> rejected;
  std::vector<augment::AugmentedCandidate> ungated;
  GateReport report;
};

// Pure decision over already-scored candidates; order is preserved within
// each partition.
GateResult ApplyThreshold(const ScoredCandidates& scored, const GateConfig& config);

GateResult GateCandidates(const corpus::Dataset& originals,
                          std::vector<augment::AugmentedCandidate> candidates,
                          providers::Embedder& embedder, const GateConfig& config);

// One report per threshold from a single scoring pass. Thresholds must be
// ascending.
std::vector<GateReport> ThresholdSweep(const corpus::Dataset& originals,
                                       std::vector<augment::AugmentedCandidate> candidates,
                                       providers::Embedder& embedder,
                                       std::span<const double> thresholds,
                                       const GateConfig& base = {});
std::vector<GateReport> ThresholdSweep(const ScoredCandidates& scored,
                                       std::span<const double> thresholds,
                                       const GateConfig& base = {});

std::string SweepTable(std::span<const GateReport> reports);

}  // namespace auggate::gate

#endif  // AUGGATE_GATE_H_
