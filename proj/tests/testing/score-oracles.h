// tests/testing/score-oracles.h

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

#ifndef SPOOFBENCH_TESTS_TESTING_SCORE_ORACLES_H_
#define SPOOFBENCH_TESTS_TESTING_SCORE_ORACLES_H_

#include <cmath>
#include <string>
#include <vector>

#include "spoofbench/metrics.h"
#include "spoofbench/score-io.h"
#include "testing/oracles.h"

namespace spoofbench::testing {

/// Brute-force objective of fixed weights, independent of FusionProblem.
inline double OracleObjective(const AlignedScores &m, const std::vector<double> &w,
                              const DcfCost &cost) {
  std::vector<double> pos, neg;
  for (std::size_t t = 0; t < m.num_trials(); ++t) {
    double f = 0.0;
    for (std::size_t s = 0; s < m.num_systems(); ++s) f += w[s] * m.columns[s][t];
    (IsSpoof(*m.labels[t]) ? neg : pos).push_back(f);
  }
  return BruteMinDcf(pos, neg, cost.c_miss, cost.c_fa, cost.p_target).value;
}

/// Standardized design matrix (leading 1) and targets, built independently
/// of the library.
inline void Design(const ScoreSet &dev, const std::vector<std::string> &schema,
                   std::vector<std::vector<double>> *x, std::vector<double> *y) {
  const std::size_t n = dev.size(), p = schema.size() + 1;
  std::vector<std::vector<double>> raw(n, std::vector<double>(p));
  for (std::size_t i = 0; i < n; ++i) {
    raw[i][0] = dev[i].score;
    for (std::size_t j = 1; j < p; ++j) raw[i][j] = dev[i].qualities.at(schema[j - 1]);
  }
  x->assign(n, std::vector<double>(p + 1, 1.0));
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0, var = 0.0;
    for (const auto &r : raw) mean += r[j];
    mean /= n;
    for (const auto &r : raw) var += (r[j] - mean) * (r[j] - mean);
    const double sd = std::sqrt(var / n);
    for (std::size_t i = 0; i < n; ++i) (*x)[i][j + 1] = (raw[i][j] - mean) / sd;
  }
  y->clear();
  for (const auto &r : dev.records()) y->push_back(IsPositive(*r.label) ? 1.0 : 0.0);
}

struct Sweep {
  double tau;
  double value;
};

// Exhaustive sweep written from the definition: every gate midpoint, the
// cascade output per trial, then brute-force min a-DCF.
inline Sweep BruteSelect(const ScoreSet &gate, const ScoreSet &scorer, double alpha,
                         const ADcfCost &c) {
  Sweep best{0.0, kInf};
  for (double tau : BruteThresholds(gate.Scores())) {
    std::vector<double> tar, non, spf;
    for (std::size_t i = 0; i < gate.size(); ++i) {
      const double s = gate[i].score >= tau ? scorer[i].score : alpha;
      const Label l = *gate[i].label;
      (l == Label::kTarget ? tar : l == Label::kNonTarget ? non : spf).push_back(s);
    }
    const double v = BruteMinADcf(tar, non, spf, c.c_miss, c.c_fa_nontarget, c.c_fa_spoof,
                                  c.p_target, c.p_nontarget, c.p_spoof)
                         .value;
    if (v < best.value) best = {tau, v};
  }
  return best;
}

}  // namespace spoofbench::testing

#endif  // SPOOFBENCH_TESTS_TESTING_SCORE_ORACLES_H_
