// include/spoofbench/fusion.h

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

#ifndef SPOOFBENCH_FUSION_H_
#define SPOOFBENCH_FUSION_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spoofbench/metrics.h"
#include "spoofbench/score-io.h"

namespace spoofbench {

/// Per-system linear fusion weights.  Simplex weights are nonnegative and
/// sum to one within 1e-9; affine weights only sum to one.
class FusionWeights {
 public:
  FusionWeights() = default;
  explicit FusionWeights(std::vector<double> w, bool simplex = true);

  static FusionWeights Uniform(std::size_t n);
  static FusionWeights Vertex(std::size_t n, std::size_t i);

  const std::vector<double> &values() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  bool simplex() const { return simplex_; }

 private:
  std::vector<double> w_;
  bool simplex_ = true;
};

/// sum_i w_i * columns[i][t] for every trial t.
std::vector<double> FuseColumns(const std::vector<std::vector<double>> &columns,
                                std::span<const double> weights);

/// Fused score set over the aligned trials, labels carried through.
ScoreSet Fuse(const AlignedScores &systems, const FusionWeights &weights);

enum class NormalizeMethod { kNone, kZScore, kMinMax };

NormalizeMethod ParseNormalizeMethod(const std::string &name);

/// zscore uses the population standard deviation; minmax maps to [0, 1].
ScoreSet NormalizeScores(const ScoreSet &scores, NormalizeMethod method);
/// Applies NormalizeScores to each system column independently.
AlignedScores NormalizeSystems(const AlignedScores &systems,
                               NormalizeMethod method);

enum class FusionObjective { kMinDcf, kEer };

struct OptimizerSettings {
  double rho_begin = 0.2;
  double rho_end = 1e-4;
  int max_evaluations = 4000;
  /// Final local refinement: pairwise weight transfers of k * polish_step,
  /// k = 1..polish_radius, accepted while they strictly lower the objective.
  double polish_step = 1e-3;
  int polish_radius = 5;
  /// Drop the nonnegativity constraints (weights still sum to one).
  bool unconstrained = false;
  /// Evaluation budget of the simplex-lattice sweep that seeds the seeded
  /// search.  The finest lattice (at most 100 divisions) within the budget
  /// is used; 0 disables the sweep.
  int lattice_budget = 20000;
};

/// Fusion weight search: aligned, labeled systems (SASV labels are viewed
/// as bonafide vs spoof) and the dev-set objective to minimise.
class FusionProblem {
 public:
  FusionProblem(AlignedScores systems, FusionObjective objective,
                DcfCost cost = {}, OptimizerSettings settings = {});

  const AlignedScores &systems() const { return systems_; }
  std::size_t num_systems() const { return systems_.num_systems(); }
  FusionObjective objective_kind() const { return objective_; }
  const DcfCost &cost() const { return cost_; }
  const OptimizerSettings &settings() const { return settings_; }

  /// Objective of fuse(weights); weights need not be feasible.
  double Evaluate(std::span<const double> weights) const;

 private:
  AlignedScores systems_;
  FusionObjective objective_;
  DcfCost cost_;
  OptimizerSettings settings_;
  std::vector<std::size_t> positive_rows_, negative_rows_;
};

/// A new best weight vector found during a run.
struct WeightTraceEntry {
  std::string phase;  // e.g. "cobyla:vertex", "polish:uniform"
  int evaluation = 0;
  double objective = 0.0;
  std::vector<double> weights;
};

struct OptimizeResult {
  FusionWeights weights;
  double objective = 0.0;
  int evaluations = 0;
  /// False when no evaluated point beat the initial weights.
  bool improved = false;
  bool budget_exhausted = false;
  std::vector<WeightTraceEntry> trace;
};

using WeightMonitor = std::function<void(const WeightTraceEntry &)>;

/// COBYLA over the first n-1 weights (the last is 1 - sum), then polish.
/// The initial weights must be feasible.  The returned objective is
/// Evaluate(returned weights).
OptimizeResult OptimizeWeights(const FusionProblem &problem,
                               const FusionWeights &initial,
                               const WeightMonitor &monitor = {},
                               const std::string &label = "initial");

/// Runs OptimizeWeights from the best single-system vertex and from uniform
/// weights and returns the better result (the vertex run wins ties).  The
/// trace holds the vertex sweep and both runs.
OptimizeResult OptimizeWeightsSeeded(const FusionProblem &problem,
                                     const WeightMonitor &monitor = {});

/// Same system at several inference crop durations; the sets must cover
/// identical trial lists.
ScoreSet MultiDurationFuse(std::span<const ScoreSet> per_duration,
                           const FusionWeights &weights);

/// `system_name<TAB>weight` lines.
std::vector<std::pair<std::string, double>> ParseWeights(
    std::istream &in, const std::string &source = "<stream>");
std::vector<std::pair<std::string, double>> ReadWeightsFile(
    const std::filesystem::path &path);
void WriteWeights(std::ostream &out, std::span<const std::string> names,
                  const FusionWeights &weights);

}  // namespace spoofbench

#endif  // SPOOFBENCH_FUSION_H_
