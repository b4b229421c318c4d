// tools/spoofbench.cc

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

// spoofbench: score evaluation, fusion, calibration, cascading, waveform
// augmentation and LFCC extraction for spoofing-robust speaker verification.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 external tool error.

#include <iostream>

#include "CLI11.hpp"
#include "cli-common.h"
#include "spoofbench/error.h"

int main(int argc, char **argv) {
  using namespace spoofbench;
  CLI::App app{"Evaluation and augmentation toolkit for spoofing-robust "
               "speaker verification"};
  app.require_subcommand(1);
  cli::Globals globals;
  app.add_option("--config", globals.config_path,
                 "JSON run config (cost_model, optimizer, augment_plan, workers, "
                 "out); flags override it")
      ->check(CLI::ExistingFile);

  std::vector<cli::Command> commands;
  cli::RegisterScoreCommands(app, globals, commands);
  cli::RegisterAudioCommands(app, globals, commands);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!globals.config_path.empty())
      globals.config = LoadRunConfig(globals.config_path);
    for (const auto &cmd : commands)
      if (cmd.app->parsed()) return cmd.run();
    return 2;
  } catch (const UsageError &e) {
    std::cerr << "spoofbench: usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError &e) {
    std::cerr << "spoofbench: data error: " << e.what() << "\n";
    return 3;
  } catch (const ExternalToolError &e) {
    std::cerr << "spoofbench: external tool error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception &e) {
    std::cerr << "spoofbench: error: " << e.what() << "\n";
    return 1;
  }
}
