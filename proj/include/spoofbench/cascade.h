// include/spoofbench/cascade.h

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

#ifndef SPOOFBENCH_CASCADE_H_
#define SPOOFBENCH_CASCADE_H_

#include <string>

#include "spoofbench/metrics.h"
#include "spoofbench/score-io.h"

namespace spoofbench {

/// Which module makes the hard decision.  The other one supplies the score.
enum class GateRole { kAsvGatesCm, kCmGatesAsv };

GateRole ParseGateRole(const std::string &name);
std::string GateRoleName(GateRole role);

/// Tandem SASV system: trials the gate accepts (gate score >= threshold)
/// keep the scorer's raw score, rejected trials get the floor score.
///
/// gate_threshold may be -inf (gate always open) or +inf (always closed);
/// those are the sentinels of the threshold sweep.  floor_score is finite.
struct CascadeConfig {
  GateRole gate_role = GateRole::kAsvGatesCm;
  double gate_threshold = 0.0;
  double floor_score = 0.0;

  void Validate() const;
};

/// Gate and scorer must cover the same trial set; output follows the gate's
/// order and carries the gate's labels (or the scorer's if the gate has
/// none).
ScoreSet CascadeScore(const ScoreSet &gate, const ScoreSet &scorer,
                      const CascadeConfig &config);

/// Minimum dev scorer score.
double ComputeFloor(const ScoreSet &dev_scorer);

/// Floor used by default: dev minimum minus `margin`, so rejected trials
/// rank strictly below every accepted dev trial.
double DefaultFloor(const ScoreSet &dev_scorer, double margin = 1e-6);

struct GateSelection {
  double gate_threshold = 0.0;
  double dev_min_adcf = 0.0;
  std::size_t candidates = 0;
};

/// Sweeps the gate over its dev midpoint-threshold set, scores each cascade
/// with min a-DCF on the SASV dev labels, and returns the lowest (ties go to
/// the smaller threshold).  `config.gate_threshold` is ignored.
GateSelection SelectGateThreshold(const ScoreSet &dev_gate,
                                  const ScoreSet &dev_scorer,
                                  const CascadeConfig &config,
                                  const ADcfCost &cost);

}  // namespace spoofbench

#endif  // SPOOFBENCH_CASCADE_H_
