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


#ifndef AUGGATE_CLI_COMMANDS_H_
#define AUGGATE_CLI_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "auggate/cli/workspace.h"

namespace auggate::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandContext {
  Workspace& workspace;
  std::ostream& out;
  std::ostream& err;
  // Wall-clock stamp for manifests; the only nondeterministic output.
  std::function<std::string()> clock;
};

// Output layout below the output directory.
namespace layout {
inline constexpr char kCandidates[] = "candidates";
inline constexpr char kGated[] = "gated";
inline constexpr char kAudit[] = "audit";
inline constexpr char kManifests[] = "manifests";
}  // namespace layout

// Each command returns an exit code. Configuration problems throw
// ConfigError; RunCli maps exceptions to codes.
int CmdAugment(CommandContext& ctx);
// Gates every candidate file (or those given) as one deduplicated pool.
int CmdGate(CommandContext& ctx, const std::vector<std::filesystem::path>& inputs = {});
int CmdSweep(CommandContext& ctx, const std::vector<std::filesystem::path>& inputs = {});
int CmdEvaluate(CommandContext& ctx);
int CmdAuditExport(CommandContext& ctx);
int CmdAuditImport(CommandContext& ctx, const std::filesystem::path& sheet = {});
int CmdProbe(CommandContext& ctx);
int CmdReport(CommandContext& ctx);

// Parses argv-style arguments (without the program name) and runs one
// subcommand.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string UtcTimestamp();

}  // namespace auggate::cli

#endif  // AUGGATE_CLI_COMMANDS_H_
