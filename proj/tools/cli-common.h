// tools/cli-common.h

// Copyright 2026  The spoofbench Authors

// See ../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOOFBENCH_TOOLS_CLI_COMMON_H_
#define SPOOFBENCH_TOOLS_CLI_COMMON_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spoofbench/metrics.h"
#include "spoofbench/run-config.h"
#include "spoofbench/score-io.h"

namespace spoofbench::cli {

/// Options shared by every subcommand.
struct Globals {
  std::string config_path;
  RunConfig config;
};

/// A registered subcommand and the function that runs it.
struct Command {
  CLI::App *app;
  std::function<int()> run;
};

void RegisterScoreCommands(CLI::App &app, Globals &g, std::vector<Command> &out);
void RegisterAudioCommands(CLI::App &app, Globals &g, std::vector<Command> &out);

// Flag-over-config resolution.
CostModel ResolveCostModel(const std::string &flag, const Globals &g);
int ResolveWorkers(int flag, const Globals &g);
/// Returns the output directory (created) or nullopt when neither the flag
/// nor the config names one.
std::optional<std::filesystem::path> ResolveOut(const std::string &flag,
                                                const Globals &g);
std::filesystem::path RequireOut(const std::string &flag, const Globals &g);

/// Reads a score file and joins a key onto it; warnings go to stderr.
ScoreSet ReadLabeled(const std::string &scores, const std::string &key);

std::string Fixed(double v, int digits = 4);

}  // namespace spoofbench::cli

#endif  // SPOOFBENCH_TOOLS_CLI_COMMON_H_
