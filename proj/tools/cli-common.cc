// tools/cli-common.cc

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

#include "cli-common.h"

#include <cstdio>
#include <iostream>

#include "spoofbench/error.h"

namespace spoofbench::cli {

CostModel ResolveCostModel(const std::string &flag, const Globals &g) {
  if (!flag.empty()) return LoadCostModel(flag);
  if (g.config.cost_model) return *g.config.cost_model;
  return CostModel{};
}

int ResolveWorkers(int flag, const Globals &g) {
  if (flag > 0) return flag;
  if (g.config.workers) return *g.config.workers;
  return 1;
}

std::optional<std::filesystem::path> ResolveOut(const std::string &flag,
                                                const Globals &g) {
  std::optional<std::filesystem::path> out;
  if (!flag.empty())
    out = flag;
  else if (g.config.out)
    out = *g.config.out;
  if (out) {
    std::error_code ec;
    std::filesystem::create_directories(*out, ec);
    if (ec) throw UsageError("cannot create output directory '" + out->string() +
                             "': " + ec.message());
  }
  return out;
}

std::filesystem::path RequireOut(const std::string &flag, const Globals &g) {
  auto out = ResolveOut(flag, g);
  if (!out) throw UsageError("--out DIR is required");
  return *out;
}

ScoreSet ReadLabeled(const std::string &scores, const std::string &key) {
  JoinResult joined = JoinKey(ReadScoreFile(scores), ReadKeyFile(key));
  for (const auto &d : joined.diagnostics)
    std::cerr << "warning: " << scores << ": " << d << "\n";
  return joined.scores;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace spoofbench::cli
