// src/fusion.cc

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

#include "spoofbench/fusion.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "spoofbench/cobyla.h"
#include "spoofbench/error.h"

namespace spoofbench {

FusionWeights::FusionWeights(std::vector<double> w, bool simplex)
    : w_(std::move(w)), simplex_(simplex) {
  if (w_.empty()) throw UsageError("fusion weights are empty");
  double sum = 0.0;
  for (double v : w_) {
    if (!std::isfinite(v)) throw UsageError("fusion weight is not finite");
    if (simplex_ && v < 0.0) throw UsageError("fusion weight is negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw UsageError("fusion weights sum to " + FormatReal(sum) +
                     ", expected 1");
}

FusionWeights FusionWeights::Uniform(std::size_t n) {
  return FusionWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FusionWeights FusionWeights::Vertex(std::size_t n, std::size_t i) {
  std::vector<double> w(n, 0.0);
  w.at(i) = 1.0;
  return FusionWeights(std::move(w));
}

std::vector<double> FuseColumns(const std::vector<std::vector<double>> &columns,
                                std::span<const double> weights) {
  if (columns.size() != weights.size())
    throw UsageError("fusion got " + std::to_string(weights.size()) +
                     " weights for " + std::to_string(columns.size()) +
                     " systems");
  const std::size_t n = columns.empty() ? 0 : columns[0].size();
  std::vector<double> fused(n, 0.0);
  for (std::size_t s = 0; s < columns.size(); ++s) {
    if (columns[s].size() != n) throw UsageError("ragged score columns");
    const double w = weights[s];
    for (std::size_t t = 0; t < n; ++t) fused[t] += w * columns[s][t];
  }
  return fused;
}

ScoreSet Fuse(const AlignedScores &systems, const FusionWeights &weights) {
  return systems.ToScoreSet(FuseColumns(systems.columns, weights.values()));
}

NormalizeMethod ParseNormalizeMethod(const std::string &name) {
  if (name == "none") return NormalizeMethod::kNone;
  if (name == "zscore") return NormalizeMethod::kZScore;
  if (name == "minmax") return NormalizeMethod::kMinMax;
  throw UsageError("unknown normalisation '" + name +
                   "' (expected none, zscore or minmax)");
}

namespace {

std::vector<double> NormalizeColumn(std::vector<double> v,
                                    NormalizeMethod method) {
  if (method == NormalizeMethod::kNone || v.empty()) return v;
  if (method == NormalizeMethod::kZScore) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= n;
    if (!(var > 0.0)) throw DataError("zscore normalisation of zero variance");
    const double sd = std::sqrt(var);
    for (double &x : v) x = (x - mean) / sd;
    return v;
  }
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double min = *lo, range = *hi - *lo;
  if (!(range > 0.0)) throw DataError("minmax normalisation of zero range");
  for (double &x : v) x = (x - min) / range;
  return v;
}

}  // namespace

ScoreSet NormalizeScores(const ScoreSet &scores, NormalizeMethod method) {
  return scores.WithScores(NormalizeColumn(scores.Scores(), method));
}

AlignedScores NormalizeSystems(const AlignedScores &systems,
                               NormalizeMethod method) {
  AlignedScores out = systems;
  for (auto &column : out.columns)
    column = NormalizeColumn(std::move(column), method);
  return out;
}

FusionProblem::FusionProblem(AlignedScores systems, FusionObjective objective,
                             DcfCost cost, OptimizerSettings settings)
    : systems_(std::move(systems)),
      objective_(objective),
      cost_(cost),
      settings_(settings) {
  if (systems_.num_systems() < 2)
    throw UsageError("fusion needs at least two systems");
  if (systems_.num_trials() == 0 || !systems_.labels[0])
    throw DataError("fusion problem needs labeled trials");
  cost_.Validate();
  for (std::size_t t = 0; t < systems_.num_trials(); ++t) {
    if (IsSpoof(*systems_.labels[t]))
      negative_rows_.push_back(t);
    else
      positive_rows_.push_back(t);
  }
  if (positive_rows_.empty() || negative_rows_.empty())
    throw DataError("fusion objective needs bonafide and spoof trials");
}

double FusionProblem::Evaluate(std::span<const double> weights) const {
  if (weights.size() != num_systems())
    throw UsageError("weight count does not match system count");
  auto fused_rows = [&](const std::vector<std::size_t> &rows) {
    std::vector<double> out(rows.size(), 0.0);
    for (std::size_t s = 0; s < num_systems(); ++s) {
      const auto &col = systems_.columns[s];
      const double w = weights[s];
      for (std::size_t i = 0; i < rows.size(); ++i) out[i] += w * col[rows[i]];
    }
    return out;
  };
  std::vector<double> pos = fused_rows(positive_rows_);
  std::vector<double> neg = fused_rows(negative_rows_);
  if (objective_ == FusionObjective::kEer)
    return ComputeEer(ComputeDetCurve(pos, neg));
  return MinDcf(pos, neg, cost_).value;
}

namespace {

std::vector<double> WeightsFromFree(std::span<const double> free) {
  std::vector<double> w(free.begin(), free.end());
  w.push_back(1.0 - std::accumulate(free.begin(), free.end(), 0.0));
  return w;
}

/// Clear rounding-level infeasibility so FusionWeights accepts the vector.
std::vector<double> Feasible(std::vector<double> w, bool simplex) {
  if (simplex)
    for (double &v : w) v = std::max(v, 0.0);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (simplex) {
    for (double &v : w) v /= sum;
  } else {
    w.back() += 1.0 - sum;
  }
  return w;
}

constexpr int kMaxLatticeDivisions = 100;

int LatticeDivisions(std::size_t n, int budget) {
  // Number of lattice points is C(k + n - 1, n - 1).
  auto points = [n](int k) {
    double c = 1.0;
    for (std::size_t j = 1; j < n; ++j) c = c * (k + static_cast<double>(j)) / j;
    return c;
  };
  int best = 0;
  for (int k = 1; k <= kMaxLatticeDivisions && points(k) <= budget; ++k) best = k;
  return best;
}

}  // namespace

OptimizeResult OptimizeWeights(const FusionProblem &problem,
                               const FusionWeights &initial,
                               const WeightMonitor &monitor,
                               const std::string &label) {
  const std::size_t n = problem.num_systems();
  const OptimizerSettings &settings = problem.settings();
  if (initial.size() != n)
    throw UsageError("initial weights do not match the system count");
  if (!settings.unconstrained && !initial.simplex())
    throw UsageError("initial weights are infeasible for simplex fusion");

  OptimizeResult result;
  auto record = [&](const std::string &phase, int evaluation, double objective,
                    std::vector<double> weights) {
    WeightTraceEntry entry{phase, evaluation, objective, std::move(weights)};
    if (monitor) monitor(entry);
    result.trace.push_back(std::move(entry));
  };

  // COBYLA in the n-1 free coordinates.
  std::vector<double> x0(initial.values().begin(), initial.values().end() - 1);
  ObjectiveFn objective = [&](std::span<const double> free) {
    return problem.Evaluate(WeightsFromFree(free));
  };
  std::vector<ConstraintFn> constraints;
  if (!settings.unconstrained) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      constraints.push_back([i](std::span<const double> free) { return free[i]; });
    constraints.push_back([](std::span<const double> free) {
      return 1.0 - std::accumulate(free.begin(), free.end(), 0.0);
    });
  }
  CobylaOptions options;
  options.rho_begin = settings.rho_begin;
  options.rho_end = settings.rho_end;
  options.max_evaluations = settings.max_evaluations;
  CobylaResult cobyla = MinimizeCobyla(
      objective, x0, constraints, options, [&](const CobylaIterate &it) {
        record("cobyla:" + label, it.evaluation, it.objective,
               WeightsFromFree(it.x));
      });
  result.evaluations = cobyla.evaluations;
  result.budget_exhausted = cobyla.status == CobylaStatus::kBudgetExhausted;

  std::vector<double> best = Feasible(WeightsFromFree(cobyla.x),
                                      !settings.unconstrained);
  if (cobyla.max_violation > 1e-9) best = initial.values();
  double best_value = problem.Evaluate(best);
  ++result.evaluations;
  const double initial_value = cobyla.evaluations > 0
                                   ? problem.Evaluate(initial.values())
                                   : best_value;
  if (initial_value <= best_value) {
    best = initial.values();
    best_value = initial_value;
  }

  // Pairwise-transfer pattern search on a polish_step grid around the
  // COBYLA answer.  The objective is piecewise constant in the weights, so
  // this catches improvements inside the final trust region.
  const double step = settings.polish_step;
  int polish_budget = settings.max_evaluations;
  bool moved = step > 0.0 && settings.polish_radius > 0;
  while (moved && polish_budget > 0) {
    moved = false;
    std::vector<double> round_best = best;
    double round_value = best_value;
    for (std::size_t to = 0; to < n && polish_budget > 0; ++to) {
      for (std::size_t from = 0; from < n && polish_budget > 0; ++from) {
        if (to == from) continue;
        for (int k = 1; k <= settings.polish_radius && polish_budget > 0; ++k) {
          double amount = k * step;
          if (!settings.unconstrained) {
            if (best[from] <= 0.0) break;
            amount = std::min(amount, best[from]);
          }
          std::vector<double> candidate = best;
          candidate[to] += amount;
          candidate[from] -= amount;
          if (!settings.unconstrained && amount == best[from])
            candidate[from] = 0.0;
          const double v = problem.Evaluate(candidate);
          ++result.evaluations;
          --polish_budget;
          if (v < round_value) {
            round_value = v;
            round_best = std::move(candidate);
          }
          if (!settings.unconstrained && amount == best[from]) break;
        }
      }
    }
    if (round_value < best_value) {
      best = Feasible(std::move(round_best), !settings.unconstrained);
      best_value = problem.Evaluate(best);
      ++result.evaluations;
      record("polish:" + label, result.evaluations, best_value, best);
      moved = true;
    }
  }

  result.weights = FusionWeights(best, !settings.unconstrained);
  result.objective = best_value;
  result.improved = best_value < initial_value;
  return result;
}

OptimizeResult OptimizeWeightsSeeded(const FusionProblem &problem,
                                     const WeightMonitor &monitor) {
  const std::size_t n = problem.num_systems();
  std::vector<WeightTraceEntry> prelude;
  auto record = [&](WeightTraceEntry entry) {
    if (monitor) monitor(entry);
    prelude.push_back(std::move(entry));
  };
  int evaluations = 0;

  std::size_t best_vertex = 0;
  double best_vertex_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    FusionWeights vertex = FusionWeights::Vertex(n, i);
    const double v = problem.Evaluate(vertex.values());
    ++evaluations;
    record({"sweep", evaluations, v, vertex.values()});
    if (v < best_vertex_value) {
      best_vertex_value = v;
      best_vertex = i;
    }
  }

  // Regular simplex lattice; only running-best points enter the trace.
  std::optional<FusionWeights> lattice_best;
  const int k = LatticeDivisions(n, problem.settings().lattice_budget);
  if (k > 0) {
    double lattice_value = std::numeric_limits<double>::infinity();
    std::vector<int> counts(n, 0);
    std::vector<double> w(n);
    std::function<void(std::size_t, int)> visit = [&](std::size_t i, int left) {
      if (i + 1 == n) {
        counts[i] = left;
        for (std::size_t j = 0; j < n; ++j) w[j] = static_cast<double>(counts[j]) / k;
        const double v = problem.Evaluate(w);
        ++evaluations;
        if (v < lattice_value) {
          lattice_value = v;
          lattice_best = FusionWeights(w, true);
          record({"lattice", evaluations, v, w});
        }
        return;
      }
      for (int c = left; c >= 0; --c) {
        counts[i] = c;
        visit(i + 1, left - c);
      }
    };
    visit(0, k);
  }

  std::vector<OptimizeResult> runs;
  runs.push_back(OptimizeWeights(problem, FusionWeights::Vertex(n, best_vertex), monitor,
                                 "vertex"));
  runs.push_back(OptimizeWeights(problem, FusionWeights::Uniform(n), monitor, "uniform"));
  if (lattice_best)
    runs.push_back(OptimizeWeights(problem, *lattice_best, monitor, "lattice"));

  std::size_t pick = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].objective < runs[pick].objective) pick = r;
  OptimizeResult best = runs[pick];
  best.evaluations = evaluations;
  best.budget_exhausted = true;
  for (const auto &r : runs) {
    best.evaluations += r.evaluations;
    best.budget_exhausted = best.budget_exhausted && r.budget_exhausted;
  }
  best.improved = best.objective < best_vertex_value;
  best.trace = std::move(prelude);
  for (const auto &r : runs) best.trace.insert(best.trace.end(), r.trace.begin(), r.trace.end());
  return best;
}

ScoreSet MultiDurationFuse(std::span<const ScoreSet> per_duration,
                           const FusionWeights &weights) {
  AlignedScores aligned = AlignSystems(per_duration);
  for (std::size_t s = 0; s < aligned.dropped.size(); ++s)
    if (aligned.dropped[s] != 0 || per_duration[s].size() != aligned.num_trials())
      throw DataError("multi-duration score sets must cover identical trial "
                      "lists");
  return Fuse(aligned, weights);
}

std::vector<std::pair<std::string, double>> ParseWeights(
    std::istream &in, const std::string &source) {
  std::vector<std::pair<std::string, double>> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string name, value, extra;
    if (!(fields >> name) || name[0] == '#') continue;
    if (!(fields >> value) || (fields >> extra))
      throw DataError(source, n, "expected `system_name<TAB>weight`");
    char *end = nullptr;
    const double w = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || !std::isfinite(w))
      throw DataError(source, n, "malformed weight '" + value + "'");
    for (const auto &[existing, _] : out)
      if (existing == name)
        throw DataError(source, n, "duplicate system " + name);
    out.emplace_back(name, w);
  }
  return out;
}

std::vector<std::pair<std::string, double>> ReadWeightsFile(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return ParseWeights(in, path.string());
}

void WriteWeights(std::ostream &out, std::span<const std::string> names,
                  const FusionWeights &weights) {
  if (names.size() != weights.size())
    throw UsageError("system name count does not match weight count");
  for (std::size_t i = 0; i < names.size(); ++i)
    out << names[i] << '\t' << FormatReal(weights[i]) << '\n';
}

}  // namespace spoofbench
