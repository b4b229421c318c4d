// src/cascade.cc

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

#include "spoofbench/cascade.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spoofbench/error.h"

namespace spoofbench {

GateRole ParseGateRole(const std::string &name) {
  if (name == "asv-gates-cm") return GateRole::kAsvGatesCm;
  if (name == "cm-gates-asv") return GateRole::kCmGatesAsv;
  throw UsageError("unknown gate role '" + name +
                   "' (expected asv-gates-cm or cm-gates-asv)");
}

std::string GateRoleName(GateRole role) {
  return role == GateRole::kAsvGatesCm ? "asv-gates-cm" : "cm-gates-asv";
}

void CascadeConfig::Validate() const {
  if (std::isnan(gate_threshold))
    throw UsageError("cascade gate threshold is NaN");
  if (!std::isfinite(floor_score))
    throw UsageError("cascade floor score must be finite");
}

namespace {

/// Scorer scores in the gate's trial order.
std::vector<double> AlignScorer(const ScoreSet &gate, const ScoreSet &scorer) {
  if (gate.size() != scorer.size())
    throw DataError("cascade gate and scorer trial lists differ in size");
  std::vector<double> out;
  out.reserve(gate.size());
  for (const auto &g : gate.records()) {
    const ScoreRecord *s = scorer.Find(g.trial);
    if (s == nullptr)
      throw DataError("cascade scorer has no score for trial " + g.trial);
    out.push_back(s->score);
  }
  return out;
}

}  // namespace

ScoreSet CascadeScore(const ScoreSet &gate, const ScoreSet &scorer,
                      const CascadeConfig &config) {
  config.Validate();
  std::vector<double> scorer_scores = AlignScorer(gate, scorer);
  std::vector<ScoreRecord> out = gate.records();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool accept = gate[i].score >= config.gate_threshold;
    out[i].score = accept ? scorer_scores[i] : config.floor_score;
    out[i].qualities.clear();
    if (!out[i].label) {
      const ScoreRecord *s = scorer.Find(out[i].trial);
      out[i].label = s->label;
      out[i].attack = s->attack;
    }
  }
  return ScoreSet(std::move(out));
}

double ComputeFloor(const ScoreSet &dev_scorer) {
  if (dev_scorer.empty())
    throw DataError("cannot take the floor score of an empty dev set");
  double lowest = dev_scorer[0].score;
  for (const auto &r : dev_scorer.records()) lowest = std::min(lowest, r.score);
  return lowest;
}

double DefaultFloor(const ScoreSet &dev_scorer, double margin) {
  return ComputeFloor(dev_scorer) - margin;
}

// TODO: the sweep is O(n^2 log n) in the dev trial count; an incremental
// update over scorer ranks would make full challenge dev sets practical.
GateSelection SelectGateThreshold(const ScoreSet &dev_gate,
                                  const ScoreSet &dev_scorer,
                                  const CascadeConfig &config,
                                  const ADcfCost &cost) {
  if (!std::isfinite(config.floor_score))
    throw UsageError("cascade floor score must be finite");
  std::vector<double> scorer_scores = AlignScorer(dev_gate, dev_scorer);
  const ScoreSet &labels = dev_gate.labeled() ? dev_gate : dev_scorer;
  if (labels.domain() != LabelDomain::kSasv)
    throw DataError("gate threshold selection needs SASV dev labels");
  std::vector<Label> label_of;
  label_of.reserve(dev_gate.size());
  for (const auto &g : dev_gate.records())
    label_of.push_back(*labels.Find(g.trial)->label);

  std::vector<double> gate_scores = dev_gate.Scores();
  std::vector<double> candidates = CandidateThresholds(gate_scores);
  if (candidates.empty()) throw DataError("empty gate threshold candidate set");

  GateSelection best;
  best.dev_min_adcf = std::numeric_limits<double>::infinity();
  best.candidates = candidates.size();
  std::vector<double> targets, nontargets, spoofs;
  for (double tau : candidates) {
    targets.clear();
    nontargets.clear();
    spoofs.clear();
    for (std::size_t i = 0; i < gate_scores.size(); ++i) {
      const double s = gate_scores[i] >= tau ? scorer_scores[i] : config.floor_score;
      switch (label_of[i]) {
        case Label::kTarget: targets.push_back(s); break;
        case Label::kNonTarget: nontargets.push_back(s); break;
        default: spoofs.push_back(s); break;
      }
    }
    const double v = MinADcf(targets, nontargets, spoofs, cost).value;
    if (v < best.dev_min_adcf) {
      best.dev_min_adcf = v;
      best.gate_threshold = tau;
    }
  }
  return best;
}

}  // namespace spoofbench
