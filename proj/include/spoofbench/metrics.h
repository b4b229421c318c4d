// include/spoofbench/metrics.h

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

#ifndef SPOOFBENCH_METRICS_H_
#define SPOOFBENCH_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spoofbench/score-io.h"

namespace spoofbench {

/// Costs and prior of the two-class detection cost function.
struct DcfCost {
  double c_miss = 1.0;
  double c_fa = 10.0;
  double p_target = 0.95;

  /// Throws UsageError unless costs >= 0 with one positive and the prior is
  /// in (0, 1).
  void Validate() const;
  /// Cost of the best trivial system, min(c_miss p_target, c_fa (1 - p)).
  double Normalizer() const;
};

/// Costs and priors of the SASV architecture-agnostic DCF.
struct ADcfCost {
  double c_miss = 1.0;
  double c_fa_nontarget = 10.0;
  double c_fa_spoof = 10.0;
  double p_target = 0.9;
  double p_nontarget = 0.05;
  double p_spoof = 0.05;

  /// Priors must be >= 0, p_target > 0, and sum to 1 within 1e-12.
  void Validate() const;
};

struct CostModel {
  DcfCost dcf;
  ADcfCost adcf;
};

/// One threshold of a sweep.  Decision rule: accept iff score >= threshold.
/// For SASV curves p_fa pools both negative classes and the per-class rates
/// are filled in; for CM curves the per-class rates stay zero.
struct OperatingPoint {
  double threshold = 0.0;
  double p_miss = 0.0;
  double p_fa = 0.0;
  double p_fa_nontarget = 0.0;
  double p_fa_spoof = 0.0;
};

/// Operating points at -inf, every midpoint between consecutive distinct
/// scores, and +inf, in increasing threshold order.
struct DetCurve {
  std::vector<OperatingPoint> points;
  bool sasv = false;
};

/// Threshold placed strictly between lo < hi.  This is the midpoint unless
/// lo and hi are adjacent doubles, in which case it is hi, so that
/// `score >= threshold` still separates the two values.
double MidpointThreshold(double lo, double hi);

/// The candidate threshold set of a score list: -inf, midpoints between
/// consecutive distinct values, +inf.
std::vector<double> CandidateThresholds(std::span<const double> scores);

DetCurve ComputeDetCurve(std::span<const double> positives,
                         std::span<const double> negatives);
DetCurve ComputeSasvDetCurve(std::span<const double> targets,
                             std::span<const double> nontargets,
                             std::span<const double> spoofs);

/// Labeled set dispatch: CM sets use bonafide as the positive class, SASV
/// sets use target against nontarget + spoof.
DetCurve ComputeDetCurve(const ScoreSet &labeled);

/// Linear interpolation at the sign change of p_miss - p_fa.
double ComputeEer(const DetCurve &curve);
double ComputeEer(const ScoreSet &labeled);

struct DcfResult {
  double value = 0.0;
  double threshold = 0.0;
};

DcfResult MinDcf(std::span<const double> positives,
                 std::span<const double> negatives, const DcfCost &cost,
                 bool normalize = true);
/// Requires a CM-labeled set (see ToCmView for SASV keys).
DcfResult MinDcf(const ScoreSet &labeled, const DcfCost &cost,
                 bool normalize = true);

/// a-DCF minimised over the exhaustive threshold set.  Empty nontarget or
/// spoof classes drop their terms from both the cost and the normaliser.
DcfResult MinADcf(std::span<const double> targets,
                  std::span<const double> nontargets,
                  std::span<const double> spoofs, const ADcfCost &cost,
                  bool normalize = true);
/// Requires a SASV-labeled set.
DcfResult MinADcf(const ScoreSet &labeled, const ADcfCost &cost,
                  bool normalize = true);

/// Scores split by class.  CM: positives/negatives.  SASV: positives are
/// targets, nontargets and spoofs are filled and negatives holds both.
struct ClassScores {
  std::vector<double> positives;
  std::vector<double> negatives;
  std::vector<double> nontargets;
  std::vector<double> spoofs;
};
ClassScores SplitByClass(const ScoreSet &labeled);

struct AttackRow {
  std::string attack;  // "pooled" for the last row
  std::size_t num_spoof = 0;
  /// minDCF for CM sets, min a-DCF for SASV sets.
  double cost = 0.0;
  double eer = 0.0;
};

struct AttackBreakdown {
  LabelDomain domain = LabelDomain::kCm;
  /// One row per attack in natural order ("A9" before "A10"), then pooled.
  std::vector<AttackRow> rows;
};

/// Each attack's row is computed on every non-spoof trial plus the spoof
/// trials carrying that attack tag.  Every spoof trial must be tagged.
AttackBreakdown PerAttackBreakdown(const ScoreSet &labeled,
                                   const CostModel &cost,
                                   bool normalize = true, int workers = 1);

}  // namespace spoofbench

#endif  // SPOOFBENCH_METRICS_H_
