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

#include "auggate/cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "auggate/augment.h"
#include "auggate/classify.h"
#include "auggate/coverage.h"
#include "auggate/error.h"
#include "auggate/eval.h"
#include "auggate/gate.h"
#include "auggate/stats.h"
#include "auggate/util/file_util.h"
#include "auggate/util/text.h"

namespace auggate::cli {

namespace fs = std::filesystem;
using augment::AugmentedCandidate;
using nlohmann::json;

std::string UtcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

fs::path OutDir(CommandContext& ctx) { return ctx.workspace.config().OutputPath(); }

void WriteJson(const fs::path& path, const json& j) { WriteFileAtomic(path, j.dump(2) + "\n"); }

// Output-relative name for reports, so nothing records absolute paths.
std::string DisplayName(CommandContext& ctx, const fs::path& path) {
  const fs::path rel = path.lexically_relative(OutDir(ctx));
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return path.filename().generic_string();
}

void WriteManifest(CommandContext& ctx, const std::string& command, json body) {
  const RunConfig& config = ctx.workspace.config();
  json effective = config.ToJson();
  effective.erase("output_dir");
  body["command"] = command;
  body["config_hash"] = ConfigHash(config);
  body["seed"] = config.seed ? json(*config.seed) : json(nullptr);
  body["config"] = effective;
  body["providers"] = ctx.workspace.ProviderIdentities();
  body["created_at"] = ctx.clock ? ctx.clock() : UtcTimestamp();
  fs::create_directories(OutDir(ctx) / layout::kManifests);
  WriteJson(OutDir(ctx) / layout::kManifests / (command + ".json"), body);
}

std::vector<fs::path> CandidateFiles(CommandContext& ctx) {
  const fs::path dir = OutDir(ctx) / layout::kCandidates;
  std::vector<fs::path> files;
  if (fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<fs::path> RequireCandidateFiles(CommandContext& ctx,
                                            const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files = inputs.empty() ? CandidateFiles(ctx) : inputs;
  if (files.empty()) {
    throw ConfigError("no candidate files in " +
                      (OutDir(ctx) / layout::kCandidates).string() + "; run augment first");
  }
  for (const fs::path& f : files) {
    if (!fs::exists(f)) throw ConfigError("candidate file not found: " + f.string());
  }
  return files;
}

std::vector<AugmentedCandidate> ReadAll(const std::vector<fs::path>& files) {
  std::vector<AugmentedCandidate> all;
  for (const fs::path& f : files) {
    for (auto& c : augment::ReadCandidates(f)) all.push_back(std::move(c));
  }
  return all;
}

// Candidate pool for gating: ungated records only, exact repeats within a
// method removed. Cross-method collisions stay so per-method tallies are
// complete; Expand() drops them when building the combined dataset.
std::vector<AugmentedCandidate> GateablePool(const std::vector<fs::path>& files) {
  std::vector<AugmentedCandidate> pool = ReadAll(files);
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  std::vector<AugmentedCandidate> out;
  for (AugmentedCandidate& c : pool) {
    if (c.accepted || c.similarity || !c.gate_note.empty()) {
      throw ConfigError("input already gated (candidate for '" + c.source_id +
                        "' carries a gate decision); gate the raw candidate files instead");
    }
    if (seen.emplace(std::string(augment::MethodName(c.method)), c.source_id, c.text).second) {
      out.push_back(std::move(c));
    }
  }
  return out;
}

fs::path GatedPath(CommandContext& ctx, const char* name) {
  return OutDir(ctx) / layout::kGated / name;
}

std::optional<std::vector<AugmentedCandidate>> ReadIfExists(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  return augment::ReadCandidates(path);
}

std::optional<json> ReadJsonIfExists(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    return json::parse(ReadFileToString(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// Originals followed by accepted candidates as augmented records.
corpus::Dataset Expand(const corpus::Dataset& originals,
                       const std::vector<AugmentedCandidate>& accepted,
                       const std::string& name,
                       const std::set<std::string>* restrict_sources = nullptr) {
  std::vector<corpus::LabeledSentence> records = originals.records();
  std::map<std::string, int> per_source;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : records) seen.emplace(r.id, r.text);
  for (const AugmentedCandidate& c : accepted) {
    if (restrict_sources != nullptr && !restrict_sources->contains(c.source_id)) continue;
    if (!seen.emplace(c.source_id, c.text).second) continue;
    corpus::LabeledSentence r;
    r.id = c.source_id + "~" + std::to_string(per_source[c.source_id]++);
    r.text = c.text;
    r.label = c.label;
    r.origin = corpus::Origin::kAugmented;
    r.source_id = c.source_id;
    records.push_back(std::move(r));
  }
  return corpus::Dataset(name, std::move(records), originals.label_set());
}

std::map<std::string, std::vector<AugmentedCandidate>> ByMethod(
    const std::vector<AugmentedCandidate>& candidates) {
  std::map<std::string, std::vector<AugmentedCandidate>> out;
  for (const AugmentedCandidate& c : candidates) {
    out[std::string(augment::MethodName(c.method))].push_back(c);
  }
  return out;
}

std::vector<std::vector<double>> EmbedAll(providers::Embedder& embedder,
                                          const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  return classify::EmbedTexts(embedder, texts);
}

}  // namespace

int CmdAugment(CommandContext& ctx) {
  Workspace& ws = ctx.workspace;
  const RunConfig& config = ws.config();
  const uint64_t seed = ws.seed();
  if (config.strategies.empty()) {
    throw ConfigError("no strategies configured (valid: wordnet, embedding, back_translation, "
                      "mlm, llm)");
  }
  const corpus::Dataset& data = ws.originals();
  const fs::path dir = OutDir(ctx) / layout::kCandidates;
  fs::create_directories(dir);

  json strategies = json::object();
  bool over_tolerance = false;
  for (const StrategySpec& spec : config.strategies) {
    augment::StrategyConfig sc = spec.config;
    sc.workers = config.workers;
    augment::Resources res;
    switch (sc.method) {
      case augment::Method::kWordNet:
        sc.wordnet.eligibility = ws.StrategyEligibility(spec.use_stopwords);
        res.thesaurus = &ws.thesaurus();
        break;
      case augment::Method::kEmbedding:
        sc.embedding.eligibility = ws.StrategyEligibility(spec.use_stopwords);
        res.table = &ws.table();
        break;
      case augment::Method::kBackTranslation:
        res.translator = &ws.translator(sc.languages);
        break;
      case augment::Method::kMlm:
        res.filler = &ws.filler();
        break;
      case augment::Method::kLlm:
        res.chat = &ws.chat();
        break;
    }
    size_t last_decile = 0;
    auto progress = [&](size_t done, size_t total) {
      const size_t decile = total == 0 ? 10 : done * 10 / total;
      if (decile > last_decile) {
        last_decile = decile;
        ctx.err << spec.name << ": " << done << "/" << total << " records\r" << std::flush;
      }
    };
    augment::RunStats stats;
    const std::vector<AugmentedCandidate> candidates =
        augment::RunStrategy(data, sc, res, seed, &stats, progress);
    if (data.size() > 0) ctx.err << "\n";
    const fs::path file = dir / (spec.name + ".jsonl");
    augment::WriteCandidates(candidates, file);

    ctx.out << spec.name << ": " << stats.records << " records, " << stats.candidates
            << " candidates, " << stats.failed_records << " failed\n";
    json errors = json::array();
    for (const augment::RecordError& e : stats.errors) {
      errors.push_back({{"record_id", e.record_id}, {"message", e.message}});
      ctx.err << spec.name << ": " << e.record_id << ": " << e.message << "\n";
    }
    const double failed_fraction =
        stats.records == 0 ? 0.0
                           : static_cast<double>(stats.failed_records) /
                                 static_cast<double>(stats.records);
    if (failed_fraction > config.failure_tolerance) over_tolerance = true;
    strategies[spec.name] = {{"method", augment::MethodName(sc.method)},
                             {"file", DisplayName(ctx, file)},
                             {"records", stats.records},
                             {"candidates", stats.candidates},
                             {"failed_records", stats.failed_records},
                             {"errors", errors},
                             {"warnings", stats.warnings}};
  }
  WriteManifest(ctx, "augment",
                {{"dataset", {{"name", data.name()}, {"records", data.size()}}},
                 {"strategies", strategies}});
  return over_tolerance ? kExitPartialFailure : kExitOk;
}

int CmdGate(CommandContext& ctx, const std::vector<fs::path>& inputs) {
  Workspace& ws = ctx.workspace;
  const RunConfig& config = ws.config();
  const std::vector<fs::path> files = RequireCandidateFiles(ctx, inputs);
  std::vector<AugmentedCandidate> pool = GateablePool(files);
  const corpus::Dataset& data = ws.originals();
  const gate::GateResult result = gate::GateCandidates(data, pool, ws.embedder(), config.gate);

  fs::create_directories(OutDir(ctx) / layout::kGated);
  augment::WriteCandidates(result.accepted, GatedPath(ctx, "accepted.jsonl"));
  augment::WriteCandidates(result.rejected, GatedPath(ctx, "rejected.jsonl"));
  augment::WriteCandidates(result.ungated, GatedPath(ctx, "ungated.jsonl"));
  json report = result.report.ToJson();
  report["pooling"] = gate::PoolingName(config.gate.pooling);
  json names = json::array();
  for (const fs::path& f : files) names.push_back(DisplayName(ctx, f));
  report["inputs"] = names;
  WriteJson(GatedPath(ctx, "gate_report.json"), report);
  const std::string table = result.report.ToTable();
  WriteFileAtomic(GatedPath(ctx, "gate_report.txt"), table);

  const corpus::Dataset expanded = Expand(data, result.accepted, data.name() + "/expanded");
  corpus::WriteDataset(expanded, GatedPath(ctx, "expanded.jsonl"), corpus::FileFormat::kJsonLines);

  ctx.out << table;
  ctx.out << "expanded dataset: " << expanded.size() << " records (" << data.size()
          << " original + " << expanded.size() - data.size() << " distinct accepted)\n";
  WriteManifest(ctx, "gate",
                {{"inputs", names},
                 {"candidates", pool.size()},
                 {"accepted", result.accepted.size()},
                 {"rejected", result.rejected.size()},
                 {"ungated", result.ungated.size()},
                 {"expanded_records", expanded.size()}});
  const double ungated_fraction =
      pool.empty() ? 0.0
                   : static_cast<double>(result.ungated.size()) / static_cast<double>(pool.size());
  return ungated_fraction > config.failure_tolerance ? kExitPartialFailure : kExitOk;
}

int CmdSweep(CommandContext& ctx, const std::vector<fs::path>& inputs) {
  Workspace& ws = ctx.workspace;
  const RunConfig& config = ws.config();
  const std::vector<fs::path> files = RequireCandidateFiles(ctx, inputs);
  const gate::ScoredCandidates scored =
      gate::ScoreCandidates(ws.originals(), GateablePool(files), ws.embedder(), config.gate);
  const std::vector<gate::GateReport> reports =
      gate::ThresholdSweep(scored, config.sweep, config.gate);
  json j = json::array();
  for (const gate::GateReport& r : reports) j.push_back(r.ToJson());
  fs::create_directories(OutDir(ctx));
  WriteJson(OutDir(ctx) / "sweep_report.json", j);
  const std::string table = "accepted candidates per threshold\n" + gate::SweepTable(reports);
  WriteFileAtomic(OutDir(ctx) / "sweep_report.txt", table);
  ctx.out << table;
  WriteManifest(ctx, "sweep", {{"thresholds", config.sweep}, {"candidates", scored.scored.size() + scored.ungated.size()}});
  return kExitOk;
}

int CmdEvaluate(CommandContext& ctx) {
  Workspace& ws = ctx.workspace;
  const RunConfig& config = ws.config();
  const corpus::Dataset& data = ws.originals();
  const std::vector<fs::path> files = RequireCandidateFiles(ctx, {});
  const std::vector<AugmentedCandidate> generated = ReadAll(files);
  const auto accepted = ReadIfExists(GatedPath(ctx, "accepted.jsonl"));

  json report = json::object();
  std::string text;

  eval::ExpansionReport expansion =
      accepted ? eval::ExpansionStats(data, generated,
                                      std::span<const AugmentedCandidate>(*accepted))
               : eval::ExpansionStats(data, generated);
  report["expansion"] = expansion.ToJson();
  text += "== expansion\n" + expansion.ToTable();

  if (accepted) {
    std::vector<AugmentedCandidate> gated = *accepted;
    for (const char* name : {"rejected.jsonl", "ungated.jsonl"}) {
      if (auto more = ReadIfExists(GatedPath(ctx, name))) {
        gated.insert(gated.end(), more->begin(), more->end());
      }
    }
    const auto similarity = eval::AverageSimilarity(gated);
    report["similarity"] = eval::SimilarityJson(similarity);
    text += "\n== average cosine similarity\n" + eval::SimilarityTable(similarity);

    std::vector<std::string> original_texts;
    for (const auto& r : data.records()) original_texts.push_back(r.text);
    json coverage = json::object();
    text += "\n== embedding coverage (" + std::to_string(config.coverage_dimension) +
            "-d hull after projection)\n";
    try {
      const auto original_vectors = EmbedAll(ws.embedder(), original_texts);
      std::map<std::string, std::vector<AugmentedCandidate>> groups = ByMethod(*accepted);
      groups["all"] = *accepted;
      for (const auto& [method, members] : groups) {
        std::vector<std::string> texts;
        for (const auto& c : members) texts.push_back(c.text);
        try {
          const coverage::CoverageReport cov = coverage::Coverage(
              original_vectors, EmbedAll(ws.embedder(), texts), config.coverage_dimension);
          coverage[method] = cov.ToJson();
          char buf[200];
          std::snprintf(buf, sizeof(buf), "%-18s increase %8s%%  nn-distance %s -> %s\n",
                        method.c_str(), FormatFixed(cov.increase_percent, 2).c_str(),
                        FormatFixed(cov.density_original, 4).c_str(),
                        FormatFixed(cov.density_combined, 4).c_str());
          text += buf;
        } catch (const PreconditionError& e) {
          coverage[method] = {{"error", e.what()}};
          text += method + ": " + e.what() + "\n";
        }
      }
    } catch (const PreconditionError& e) {
      coverage["error"] = e.what();
      text += std::string(e.what()) + "\n";
    }
    report["coverage"] = coverage;
  } else {
    text += "\n(no gated output yet; run gate for similarity and coverage)\n";
  }

  if (!config.paired_scores.empty()) {
    const fs::path scores = config.Resolve(config.paired_scores);
    if (!fs::exists(scores)) throw ConfigError("paired score file not found: " + scores.string());
    const stats::CorrelationReport corr = stats::PairedScoreFile(scores);
    report["correlation"] = corr.ToJson();
    text += "\n== correlation with human scores\nr = " + FormatFixed(corr.r, 4) +
            "  p = " + FormatFixed(corr.p_value, 4) + "  n = " + std::to_string(corr.n) + "\n";
  }

  fs::create_directories(OutDir(ctx));
  WriteJson(OutDir(ctx) / "evaluate_report.json", report);
  WriteFileAtomic(OutDir(ctx) / "evaluate_report.txt", text);
  ctx.out << text;
  WriteManifest(ctx, "evaluate", {{"generated", generated.size()},
                                  {"accepted", accepted ? json(accepted->size()) : json(nullptr)}});
  return kExitOk;
}

int CmdAuditExport(CommandContext& ctx) {
  Workspace& ws = ctx.workspace;
  const auto accepted = ReadIfExists(GatedPath(ctx, "accepted.jsonl"));
  std::vector<AugmentedCandidate> pool;
  std::string source;
  if (accepted) {
    pool = *accepted;
    source = "gated/accepted.jsonl";
  } else {
    pool = augment::DeduplicateCandidates(ReadAll(RequireCandidateFiles(ctx, {})));
    source = "candidates";
  }
  const eval::AuditBatch batch = eval::ExportAudit(ws.originals(), pool, ws.config().audit);
  const fs::path dir = OutDir(ctx) / layout::kAudit;
  fs::create_directories(dir);
  eval::WriteAuditBatch(batch, dir / "audit_batch.csv", dir / "audit_key.json");
  for (const std::string& w : batch.warnings) ctx.err << "warning: " << w << "\n";
  ctx.out << "exported " << batch.rows.size() << " rows from " << source
          << " to audit/audit_batch.csv (batch " << batch.batch_id << ")\n";
  WriteManifest(ctx, "audit_export", {{"batch_id", batch.batch_id},
                                      {"rows", batch.rows.size()},
                                      {"source", source},
                                      {"warnings", batch.warnings}});
  return kExitOk;
}

int CmdAuditImport(CommandContext& ctx, const fs::path& sheet_arg) {
  const fs::path dir = OutDir(ctx) / layout::kAudit;
  const fs::path key_path = dir / "audit_key.json";
  const fs::path sheet = sheet_arg.empty() ? dir / "audit_batch.csv" : sheet_arg;
  if (!fs::exists(key_path)) {
    throw ConfigError("audit key not found: " + key_path.string() + "; run audit export first");
  }
  if (!fs::exists(sheet)) throw ConfigError("audit sheet not found: " + sheet.string());
  const eval::AuditBatch key = eval::ReadAuditKey(key_path);
  const eval::AlterationReport report = eval::ImportAudit(key, sheet);
  WriteJson(dir / "alteration_report.json", report.ToJson());
  const std::string table = report.ToTable();
  WriteFileAtomic(dir / "alteration_report.txt", table);
  ctx.out << table;
  if (!report.issues.empty()) {
    ctx.err << report.issues.size() << " audit rows excluded (first: "
            << report.issues.front().round_trip_id << ": " << report.issues.front().reason
            << ")\n";
  }
  WriteManifest(ctx, "audit_import", {{"batch_id", key.batch_id},
                                      {"rows", key.rows.size()},
                                      {"excluded", report.issues.size()}});
  return kExitOk;
}

int CmdProbe(CommandContext& ctx) {
  Workspace& ws = ctx.workspace;
  const RunConfig& config = ws.config();
  const corpus::Dataset& data = ws.originals();
  const corpus::DatasetSplit split =
      corpus::SplitDataset(data, config.split, config.split_seed);
  ctx.out << "split sizes: train " << split.train.size() << " / validation "
          << split.validation.size() << " / test " << split.test.size() << "\n";

  providers::Embedder& embedder = ws.embedder();
  const std::string& positive = config.positive_label;
  const classify::TrainResult baseline = classify::TrainProbe(split.train, embedder, config.probe);
  const classify::Metrics base_test =
      classify::Evaluate(baseline.model, split.test, embedder, positive);

  json report = {
      {"split",
       {{"seed", config.split_seed},
        {"train", split.train.size()},
        {"validation", split.validation.size()},
        {"test", split.test.size()}}},
      {"train_config",
       {{"learning_rate", config.probe.learning_rate},
        {"epochs", config.probe.epochs},
        {"batch_size", config.probe.batch_size},
        {"seed", config.probe.seed}}},
  };
  json base = {{"train_size", split.train.size()},
               {"initial_loss", baseline.initial_loss},
               {"final_loss", baseline.final_loss()},
               {"test", base_test.ToJson()}};
  if (!split.validation.empty()) {
    base["validation"] =
        classify::Evaluate(baseline.model, split.validation, embedder, positive).ToJson();
  }
  report["baseline"] = base;

  std::string text = "split sizes: train " + std::to_string(split.train.size()) +
                     " / validation " + std::to_string(split.validation.size()) + " / test " +
                     std::to_string(split.test.size()) + "\n";
  char buf[200];
  std::snprintf(buf, sizeof(buf), "%-18s %10s %10s %10s %10s\n", "model", "train_n",
                "accuracy", "f1", "f1_delta");
  text += buf;
  std::snprintf(buf, sizeof(buf), "%-18s %10zu %10s %10s %10s\n", "baseline",
                split.train.size(), FormatFixed(base_test.accuracy, 4).c_str(),
                FormatFixed(base_test.f1, 4).c_str(), "-");
  text += buf;

  json methods = json::object();
  const auto accepted = ReadIfExists(GatedPath(ctx, "accepted.jsonl"));
  std::map<std::string, std::vector<AugmentedCandidate>> pools;
  if (accepted) {
    std::set<std::string> train_ids;
    for (const auto& r : split.train.records()) train_ids.insert(r.id);
    std::vector<AugmentedCandidate> in_train;
    for (const AugmentedCandidate& c : *accepted) {
      if (train_ids.contains(c.source_id)) in_train.push_back(c);
    }
    pools = ByMethod(in_train);
    for (const auto& [method, members] : pools) {
      const corpus::Dataset augmented =
          Expand(split.train, members, split.train.name() + "+" + method);
      const classify::TrainResult fit = classify::TrainProbe(augmented, embedder, config.probe);
      const classify::Metrics m = classify::Evaluate(fit.model, split.test, embedder, positive);
      methods[method] = {{"train_size", augmented.size()},
                         {"added", members.size()},
                         {"final_loss", fit.final_loss()},
                         {"test", m.ToJson()},
                         {"f1_delta", m.f1 - base_test.f1}};
      std::snprintf(buf, sizeof(buf), "%-18s %10zu %10s %10s %10s\n", method.c_str(),
                    augmented.size(), FormatFixed(m.accuracy, 4).c_str(),
                    FormatFixed(m.f1, 4).c_str(), FormatFixed(m.f1 - base_test.f1, 4).c_str());
      text += buf;
    }
  }
  report["methods"] = methods;
  report["f1_averaging"] = base_test.averaging == classify::Averaging::kBinary ? "binary" : "macro";

  if (!pools.empty() && !config.overfit_levels.empty()) {
    const std::vector<eval::OverfitRow> rows = eval::OverfitCurve(
        split.train, split.validation, pools, config.overfit_levels, embedder, config.probe,
        positive);
    report["overfit"] = eval::OverfitJson(rows);
    text += "\noverfitting curve (f1 on train and validation)\n" + eval::OverfitTable(rows);
  }

  fs::create_directories(OutDir(ctx));
  WriteJson(OutDir(ctx) / "probe_report.json", report);
  WriteFileAtomic(OutDir(ctx) / "probe_report.txt", text);
  ctx.out << text.substr(text.find('\n') + 1);
  WriteManifest(ctx, "probe", {{"split_seed", config.split_seed}});
  return kExitOk;
}

int CmdReport(CommandContext& ctx) {
  Workspace& ws = ctx.workspace;
  const corpus::Dataset& data = ws.originals();
  const std::vector<AugmentedCandidate> generated = ReadAll(RequireCandidateFiles(ctx, {}));
  const auto gate_report = ReadJsonIfExists(GatedPath(ctx, "gate_report.json"));
  const auto accepted = ReadIfExists(GatedPath(ctx, "accepted.jsonl"));
  const auto alteration =
      ReadJsonIfExists(OutDir(ctx) / layout::kAudit / "alteration_report.json");
  const auto probe = ReadJsonIfExists(OutDir(ctx) / "probe_report.json");

  const eval::ExpansionReport expansion =
      accepted ? eval::ExpansionStats(data, generated,
                                      std::span<const AugmentedCandidate>(*accepted))
               : eval::ExpansionStats(data, generated);

  json rows = json::object();
  std::string text = "augmentation summary\n";
  text += "dataset " + data.name() + ": " + std::to_string(data.size()) + " records\n";
  if (gate_report) {
    text += "gate: cosine " + std::string(gate_report->value("inclusive", true) ? ">= " : "> ") +
            FormatFixed(gate_report->at("threshold").get<double>(), 2) + "\n";
  }
  char buf[220];
  std::snprintf(buf, sizeof(buf), "%-18s %9s %9s %7s %9s %9s %8s %9s\n", "method", "generated",
                "accepted", "size_x", "mean_cos", "altered%", "f1", "f1_delta");
  text += buf;
  auto cell = [](const json& v, int decimals) {
    return v.is_null() ? std::string("-") : FormatFixed(v.get<double>(), decimals);
  };
  for (const auto& [method, m] : expansion.per_method) {
    json row = {{"generated", m.candidates},
                {"accepted", m.accepted ? json(*m.accepted) : json(nullptr)},
                {"size_factor", m.accepted_factor ? json(*m.accepted_factor)
                                                  : json(m.candidate_factor)}};
    row["mean_similarity_accepted"] = nullptr;
    if (gate_report && gate_report->contains("per_method") &&
        (*gate_report)["per_method"].contains(method)) {
      row["mean_similarity_accepted"] =
          (*gate_report)["per_method"][method]["mean_similarity_accepted"];
    }
    row["altered_percent"] = nullptr;
    if (alteration && (*alteration)["per_method"].contains(method)) {
      size_t audited = 0, altered = 0;
      for (const auto& [label, a] : (*alteration)["per_method"][method].items()) {
        audited += a["audited"].get<size_t>();
        altered += a["altered"].get<size_t>();
      }
      row["audited"] = audited;
      row["altered_percent"] =
          audited == 0 ? 0.0 : 100.0 * static_cast<double>(altered) / static_cast<double>(audited);
    }
    row["f1"] = nullptr;
    row["f1_delta"] = nullptr;
    if (probe && (*probe)["methods"].contains(method)) {
      row["f1"] = (*probe)["methods"][method]["test"]["f1"];
      row["f1_delta"] = (*probe)["methods"][method]["f1_delta"];
    }
    std::snprintf(buf, sizeof(buf), "%-18s %9zu %9s %7s %9s %9s %8s %9s\n", method.c_str(),
                  m.candidates, m.accepted ? std::to_string(*m.accepted).c_str() : "-",
                  cell(row["size_factor"], 2).c_str(),
                  cell(row["mean_similarity_accepted"], 4).c_str(),
                  cell(row["altered_percent"], 1).c_str(), cell(row["f1"], 4).c_str(),
                  cell(row["f1_delta"], 4).c_str());
    text += buf;
    rows[method] = row;
  }
  json summary = {{"dataset", data.name()},
                  {"original_records", data.size()},
                  {"config_hash", ConfigHash(ws.config())},
                  {"methods", rows}};
  if (probe) {
    const double f1 = (*probe)["baseline"]["test"]["f1"].get<double>();
    summary["baseline_f1"] = f1;
    text += "baseline probe f1 " + FormatFixed(f1, 4) + " (" +
            (*probe)["f1_averaging"].get<std::string>() + ")\n";
  }
  fs::create_directories(OutDir(ctx));
  WriteJson(OutDir(ctx) / "summary.json", summary);
  WriteFileAtomic(OutDir(ctx) / "summary.txt", text);
  ctx.out << text;
  return kExitOk;
}

}  // namespace auggate::cli
