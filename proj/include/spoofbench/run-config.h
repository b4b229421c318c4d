// include/spoofbench/run-config.h

// Copyright 2026  The spoofbench Authors

// See ../../COPYING for clarification regarding multiple authors
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

#ifndef SPOOFBENCH_RUN_CONFIG_H_
#define SPOOFBENCH_RUN_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>

#include "spoofbench/fusion.h"
#include "spoofbench/metrics.h"

namespace spoofbench {

/// {"dcf": {"c_miss", "c_fa", "p_target"},
///  "adcf": {"c_miss", "c_fa_nontarget", "c_fa_spoof",
///           "p_target", "p_nontarget", "p_spoof"}}
/// Missing fields keep their defaults; unknown keys are rejected.
CostModel ParseCostModel(const std::string &json,
                         const std::string &source = "<cost model>");
CostModel LoadCostModel(const std::filesystem::path &path);

/// Shared settings for every subcommand.  Command-line flags override
/// these values.
struct RunConfig {
  std::optional<CostModel> cost_model;
  std::optional<OptimizerSettings> optimizer;
  std::optional<std::filesystem::path> augment_plan;
  std::optional<int> workers;
  std::optional<std::filesystem::path> out;
};

/// Keys: cost_model (inline object or path), optimizer {rho_begin, rho_end,
/// max_evaluations, polish_step, polish_radius, unconstrained},
/// augment_plan, workers, out.  Relative paths resolve against base_dir.
RunConfig ParseRunConfig(const std::string &json,
                         const std::string &source = "<config>",
                         const std::filesystem::path &base_dir = {});
RunConfig LoadRunConfig(const std::filesystem::path &path);

}  // namespace spoofbench

#endif  // SPOOFBENCH_RUN_CONFIG_H_
