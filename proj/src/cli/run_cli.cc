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

#include <memory>

#include "CLI11.hpp"
#include "auggate/cli/commands.h"
#include "auggate/cli/run_config.h"
#include "auggate/error.h"
#include "auggate/util/text.h"

namespace auggate::cli {

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"auggate: augment labeled text corpora and filter candidates with a "
               "contextual cosine-similarity gate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "auggate 0.1.0");

  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> out_dir;
  bool stub_providers = false;
  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("--seed", seed, "Run seed (overrides config)");
  app.add_option("--out", out_dir, "Output directory (overrides config)");
  app.add_flag("--stub-providers", stub_providers,
               "Use offline stub providers for every unconfigured provider kind");

  std::string strategies;
  auto* augment = app.add_subcommand("augment", "Generate candidates with each strategy");
  augment->add_option("--strategies", strategies,
                      "Comma-separated strategy names (wordnet, embedding, back_translation, "
                      "mlm, llm)");

  std::optional<double> threshold;
  std::vector<std::string> gate_inputs;
  auto* gate = app.add_subcommand("gate", "Score candidates and split at the threshold");
  gate->add_option("--threshold", threshold, "Cosine threshold in [0, 1]");
  gate->add_option("inputs", gate_inputs, "Candidate files (default: all generated)");

  std::vector<std::string> sweep_inputs;
  auto* sweep = app.add_subcommand("sweep", "Accepted counts over the configured thresholds");
  sweep->add_option("inputs", sweep_inputs, "Candidate files (default: all generated)");

  auto* evaluate = app.add_subcommand("evaluate", "Expansion, similarity, coverage reports");

  auto* audit = app.add_subcommand("audit", "Human label-alteration audit");
  audit->require_subcommand(1);
  auto* audit_export = audit->add_subcommand("export", "Write a blinded audit sheet");
  std::string sheet;
  auto* audit_import = audit->add_subcommand("import", "Score a filled audit sheet");
  audit_import->add_option("sheet", sheet, "Filled sheet (default: the exported one)");

  std::optional<uint64_t> split_seed;
  auto* probe = app.add_subcommand("probe", "Train and score the linear probe");
  probe->add_option("--split-seed", split_seed, "Seed of the train/validation/test split");

  auto* report = app.add_subcommand("report", "Combined per-method summary");

  std::vector<std::string> argv_storage = {"auggate"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config = LoadRunConfig(config_path);
    Overrides overrides;
    overrides.seed = seed;
    overrides.output_dir = out_dir;
    overrides.threshold = threshold;
    overrides.split_seed = split_seed;
    overrides.stub_providers = stub_providers;
    if (augment->parsed() && !strategies.empty()) {
      std::vector<std::string> names;
      for (const std::string& s : Split(strategies, ',')) {
        if (!Trim(s).empty()) names.push_back(Trim(s));
      }
      overrides.strategies = names;
    }
    ApplyOverrides(&config, overrides);
    config.RequireSeed();
    Workspace workspace(std::move(config));
    CommandContext ctx{workspace, out, err, UtcTimestamp};

    auto paths = [](const std::vector<std::string>& in) {
      return std::vector<std::filesystem::path>(in.begin(), in.end());
    };
    if (augment->parsed()) return CmdAugment(ctx);
    if (gate->parsed()) return CmdGate(ctx, paths(gate_inputs));
    if (sweep->parsed()) return CmdSweep(ctx, paths(sweep_inputs));
    if (evaluate->parsed()) return CmdEvaluate(ctx);
    if (audit_export->parsed()) return CmdAuditExport(ctx);
    if (audit_import->parsed()) return CmdAuditImport(ctx, sheet);
    if (probe->parsed()) return CmdProbe(ctx);
    if (report->parsed()) return CmdReport(ctx);
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartialFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartialFailure;
  }
}

}  // namespace auggate::cli
