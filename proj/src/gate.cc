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

#include "auggate/gate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "auggate/error.h"
#include "auggate/util/text.h"

namespace auggate::gate {

using augment::AugmentedCandidate;
using nlohmann::json;

std::string_view PoolingName(Pooling pooling) {
  return pooling == Pooling::kMeanTokens ? "mean_tokens" : "first_token";
}

Pooling ParsePooling(std::string_view name) {
  if (name == "mean_tokens") return Pooling::kMeanTokens;
  if (name == "first_token") return Pooling::kFirstToken;
  throw ConfigError("unknown pooling '" + std::string(name) + "'");
}

void GateConfig::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("gate threshold must be in [0, 1], got " + FormatFixed(threshold, 4));
  }
  if (batch_size == 0) throw ConfigError("gate batch_size must be positive");
}

namespace {

json OptionalJson(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> OptionalFromJson(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

Tally TallyFromJson(const json& j) {
  Tally t;
  t.total = j.at("total").get<size_t>();
  t.accepted = j.at("accepted").get<size_t>();
  t.rejected = j.at("rejected").get<size_t>();
  t.ungated = j.value("ungated", size_t{0});
  t.mean_similarity_accepted = OptionalFromJson(j, "mean_similarity_accepted");
  t.mean_similarity_all = OptionalFromJson(j, "mean_similarity_all");
  return t;
}

std::string Cell(const std::optional<double>& v) { return v ? FormatFixed(*v, 4) : "-"; }

std::string Row(std::string_view name, const Tally& t) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %8zu %9zu %9zu %8zu %10s %10s\n",
                std::string(name).c_str(), t.total, t.accepted, t.rejected,
                t.ungated, Cell(t.mean_similarity_accepted).c_str(),
                Cell(t.mean_similarity_all).c_str());
  return buf;
}

// Running sums for one tally.
struct Accumulator {
  Tally tally;
  double sum_all = 0;
  double sum_accepted = 0;
  size_t n_all = 0;

  void Scored(const AugmentedCandidate& c, bool accepted) {
    ++tally.total;
    accepted ? ++tally.accepted : ++tally.rejected;
    if (c.similarity) {
      sum_all += *c.similarity;
      ++n_all;
      if (accepted) sum_accepted += *c.similarity;
    }
  }

  Tally Finish() const {
    Tally t = tally;
    if (n_all > 0) t.mean_similarity_all = sum_all / n_all;
    if (t.accepted > 0) t.mean_similarity_accepted = sum_accepted / t.accepted;
    return t;
  }
};

}  // namespace

json Tally::ToJson() const {
  return {{"total", total},
          {"accepted", accepted},
          {"rejected", rejected},
          {"ungated", ungated},
          {"mean_similarity_accepted", OptionalJson(mean_similarity_accepted)},
          {"mean_similarity_all", OptionalJson(mean_similarity_all)}};
}

json GateReport::ToJson() const {
  json methods = json::object();
  for (const auto& [name, t] : per_method) methods[name] = t.ToJson();
  json j = overall.ToJson();
  j["threshold"] = threshold;
  j["inclusive"] = inclusive;
  j["per_method"] = methods;
  return j;
}

GateReport GateReport::FromJson(const json& j) {
  try {
    GateReport r;
    r.threshold = j.at("threshold").get<double>();
    r.inclusive = j.value("inclusive", true);
    r.overall = TallyFromJson(j);
    if (j.contains("per_method")) {
      for (const auto& [name, t] : j["per_method"].items()) {
        r.per_method[name] = TallyFromJson(t);
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed gate report: ") + e.what());
  }
}

std::string GateReport::ToTable() const {
  std::string out = "threshold " + std::string(inclusive ? ">= " : "> ") +
                    FormatFixed(threshold, 2) + "\n";
  char head[160];
  std::snprintf(head, sizeof(head), "%-18s %8s %9s %9s %8s %10s %10s\n", "method",
                "total", "accepted", "rejected", "ungated", "mean_acc", "mean_all");
  out += head;
  for (const auto& [name, t] : per_method) out += Row(name, t);
  out += Row("all", overall);
  return out;
}

EmbeddingVector Pool(std::span<const EmbeddingVector> token_vectors, Pooling pooling) {
  if (token_vectors.empty()) throw PreconditionError("cannot pool an empty list");
  const size_t dim = token_vectors.front().dimension();
  for (const EmbeddingVector& v : token_vectors) {
    if (v.dimension() != dim) {
      throw PreconditionError("cannot pool vectors of mixed dimension");
    }
  }
  if (pooling == Pooling::kFirstToken || token_vectors.size() == 1) {
    return token_vectors.front();
  }
  std::vector<double> sum(dim, 0.0);
  for (const EmbeddingVector& v : token_vectors) {
    for (size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  const double n = static_cast<double>(token_vectors.size());
  for (double& x : sum) x /= n;
  return EmbeddingVector(std::move(sum));
}

double Cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw PreconditionError("cosine of vectors with dimensions " +
                            std::to_string(a.dimension()) + " and " +
                            std::to_string(b.dimension()));
  }
  const double na = a.Norm();
  const double nb = b.Norm();
  if (na == 0.0 || nb == 0.0) throw PreconditionError("degenerate");
  // Rounding in na * nb can leave identical inputs just under 1.
  if (a == b) return 1.0;
  double dot = 0.0;
  for (size_t i = 0; i < a.dimension(); ++i) dot += a[i] * b[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

namespace {

// Embeds distinct texts in batches. A failing batch is retried one text at a
// time so a single bad input does not poison its neighbours.
class BatchEmbedder {
 public:
  BatchEmbedder(providers::Embedder& embedder, const GateConfig& config)
      : embedder_(embedder), config_(config) {}

  void Request(const std::string& text) {
    if (index_.emplace(text, pending_.size()).second) pending_.push_back(text);
  }

  void Run() {
    vectors_.assign(pending_.size(), std::nullopt);
    errors_.assign(pending_.size(), {});
    for (size_t start = 0; start < pending_.size(); start += config_.batch_size) {
      const size_t end = std::min(pending_.size(), start + config_.batch_size);
      std::span<const std::string> batch(pending_.data() + start, end - start);
      try {
        std::vector<EmbeddingVector> out = providers::Embed(embedder_, batch);
        for (size_t i = 0; i < out.size(); ++i) Store(start + i, std::move(out[i]));
      } catch (const ProviderError&) {
        for (size_t i = start; i < end; ++i) {
          try {
            std::vector<EmbeddingVector> one =
                providers::Embed(embedder_, std::span(&pending_[i], 1));
            Store(i, std::move(one.front()));
          } catch (const Error& e) {
            errors_[i] = e.what();
          }
        }
      } catch (const PreconditionError& e) {
        // Blank text in the batch; isolate per text as well.
        for (size_t i = start; i < end; ++i) {
          try {
            Store(i, std::move(providers::Embed(embedder_, std::span(&pending_[i], 1)).front()));
          } catch (const Error& e2) {
            errors_[i] = e2.what();
          }
        }
      }
    }
  }

  const std::optional<EmbeddingVector>& Vector(const std::string& text) const {
    return vectors_[index_.at(text)];
  }
  const std::string& ErrorFor(const std::string& text) const {
    return errors_[index_.at(text)];
  }

 private:
  void Store(size_t i, EmbeddingVector v) {
    EmbeddingVector pooled = Pool(std::span(&v, 1), config_.pooling);
    vectors_[i] = std::move(pooled);
  }

  providers::Embedder& embedder_;
  const GateConfig& config_;
  std::vector<std::string> pending_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<std::optional<EmbeddingVector>> vectors_;
  std::vector<std::string> errors_;
};

}  // namespace

ScoredCandidates ScoreCandidates(const corpus::Dataset& originals,
                                 std::vector<AugmentedCandidate> candidates,
                                 providers::Embedder& embedder,
                                 const GateConfig& config) {
  config.Validate();
  std::vector<const corpus::LabeledSentence*> sources;
  sources.reserve(candidates.size());
  for (const AugmentedCandidate& c : candidates) {
    const corpus::LabeledSentence* source = originals.Find(c.source_id);
    if (source == nullptr) {
      throw PreconditionError("candidate references unknown source '" + c.source_id + "'");
    }
    sources.push_back(source);
  }

  BatchEmbedder batch(embedder, config);
  for (size_t i = 0; i < candidates.size(); ++i) {
    batch.Request(sources[i]->text);
    batch.Request(candidates[i].text);
  }
  batch.Run();

  ScoredCandidates out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    AugmentedCandidate& c = candidates[i];
    c.similarity.reset();
    c.accepted.reset();
    c.gate_note.clear();
    const auto& a = batch.Vector(sources[i]->text);
    const auto& b = batch.Vector(c.text);
    if (!a || !b) {
      const std::string& err = a ? batch.ErrorFor(c.text) : batch.ErrorFor(sources[i]->text);
      c.gate_note = "ungated: " + err;
      out.ungated.push_back(std::move(c));
      continue;
    }
    if (a->Norm() == 0.0 || b->Norm() == 0.0 || a->dimension() != b->dimension()) {
      c.gate_note = "degenerate";
    } else {
      c.similarity = Cosine(*a, *b);
    }
    out.scored.push_back(std::move(c));
  }
  return out;
}

GateResult ApplyThreshold(const ScoredCandidates& scored, const GateConfig& config) {
  config.Validate();
  GateResult result;
  Accumulator overall;
  std::map<std::string, Accumulator> methods;
  for (const AugmentedCandidate& source : scored.scored) {
    AugmentedCandidate c = source;
    const bool accepted = c.similarity && config.Accepts(*c.similarity);
    c.accepted = accepted;
    overall.Scored(c, accepted);
    methods[std::string(augment::MethodName(c.method))].Scored(c, accepted);
    (accepted ? result.accepted : result.rejected).push_back(std::move(c));
  }
  for (const AugmentedCandidate& c : scored.ungated) {
    ++overall.tally.ungated;
    ++methods[std::string(augment::MethodName(c.method))].tally.ungated;
    result.ungated.push_back(c);
  }
  result.report.threshold = config.threshold;
  result.report.inclusive = config.inclusive;
  result.report.overall = overall.Finish();
  for (const auto& [name, acc] : methods) result.report.per_method[name] = acc.Finish();
  return result;
}

GateResult GateCandidates(const corpus::Dataset& originals,
                          std::vector<AugmentedCandidate> candidates,
                          providers::Embedder& embedder, const GateConfig& config) {
  return ApplyThreshold(ScoreCandidates(originals, std::move(candidates), embedder, config),
                        config);
}

std::vector<GateReport> ThresholdSweep(const ScoredCandidates& scored,
                                       std::span<const double> thresholds,
                                       const GateConfig& base) {
  if (thresholds.empty()) throw PreconditionError("sweep needs at least one threshold");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw PreconditionError("sweep thresholds must be ascending");
  }
  std::vector<GateReport> reports;
  for (double t : thresholds) {
    GateConfig config = base;
    config.threshold = t;
    reports.push_back(ApplyThreshold(scored, config).report);
  }
  return reports;
}

std::vector<GateReport> ThresholdSweep(const corpus::Dataset& originals,
                                       std::vector<AugmentedCandidate> candidates,
                                       providers::Embedder& embedder,
                                       std::span<const double> thresholds,
                                       const GateConfig& base) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw PreconditionError("sweep thresholds must be ascending");
  }
  return ThresholdSweep(ScoreCandidates(originals, std::move(candidates), embedder, base),
                        thresholds, base);
}

std::string SweepTable(std::span<const GateReport> reports) {
  std::set<std::string> methods;
  for (const GateReport& r : reports) {
    for (const auto& [name, t] : r.per_method) methods.insert(name);
  }
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s", "method");
  out += buf;
  for (const GateReport& r : reports) {
    std::snprintf(buf, sizeof(buf), " %10s",
                  ((r.inclusive ? ">=" : ">") + FormatFixed(r.threshold, 2)).c_str());
    out += buf;
  }
  out += "\n";
  auto row = [&](const std::string& name, auto get) {
    std::snprintf(buf, sizeof(buf), "%-18s", name.c_str());
    out += buf;
    for (const GateReport& r : reports) {
      std::snprintf(buf, sizeof(buf), " %10zu", get(r));
      out += buf;
    }
    out += "\n";
  };
  for (const std::string& m : methods) {
    row(m, [&](const GateReport& r) {
      auto it = r.per_method.find(m);
      return it == r.per_method.end() ? size_t{0} : it->second.accepted;
    });
  }
  row("all", [](const GateReport& r) { return r.overall.accepted; });
  return out;
}

}  // namespace auggate::gate
