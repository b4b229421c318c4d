// src/metrics.cc

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

#include "spoofbench/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>

#include "spoofbench/error.h"
#include "spoofbench/parallel.h"

namespace spoofbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckFinite(std::span<const double> scores) {
  for (double s : scores)
    if (!std::isfinite(s)) throw DataError("non-finite score in metric input");
}

/// Sweep with one positive class and up to two negative classes.  Counts are
/// kept as integers so rates are exact ratios of class sizes.
std::vector<OperatingPoint> Sweep(std::span<const double> positives,
                                  std::span<const double> neg_a,
                                  std::span<const double> neg_b, bool sasv) {
  CheckFinite(positives);
  CheckFinite(neg_a);
  CheckFinite(neg_b);
  struct Tagged {
    double score;
    int cls;
  };
  std::vector<Tagged> all;
  all.reserve(positives.size() + neg_a.size() + neg_b.size());
  for (double s : positives) all.push_back({s, 0});
  for (double s : neg_a) all.push_back({s, 1});
  for (double s : neg_b) all.push_back({s, 2});
  std::sort(all.begin(), all.end(),
            [](const Tagged &x, const Tagged &y) { return x.score < y.score; });

  const double n_pos = static_cast<double>(positives.size());
  const double n_a = static_cast<double>(neg_a.size());
  const double n_b = static_cast<double>(neg_b.size());
  std::size_t miss = 0, fa_a = neg_a.size(), fa_b = neg_b.size();

  auto make_point = [&](double threshold) {
    OperatingPoint p;
    p.threshold = threshold;
    p.p_miss = miss / n_pos;
    if (sasv) {
      p.p_fa_nontarget = n_a > 0 ? fa_a / n_a : 0.0;
      p.p_fa_spoof = n_b > 0 ? fa_b / n_b : 0.0;
      p.p_fa = static_cast<double>(fa_a + fa_b) / (n_a + n_b);
    } else {
      p.p_fa = fa_a / n_a;
    }
    return p;
  };

  std::vector<OperatingPoint> points;
  points.push_back(make_point(-kInf));
  std::size_t i = 0;
  while (i < all.size()) {
    const double value = all[i].score;
    while (i < all.size() && all[i].score == value) {
      switch (all[i].cls) {
        case 0: ++miss; break;
        case 1: --fa_a; break;
        default: --fa_b; break;
      }
      ++i;
    }
    const double threshold =
        i < all.size() ? MidpointThreshold(value, all[i].score) : kInf;
    points.push_back(make_point(threshold));
  }
  return points;
}

double DcfAt(const OperatingPoint &p, const DcfCost &cost) {
  return cost.c_miss * cost.p_target * p.p_miss +
         cost.c_fa * (1.0 - cost.p_target) * p.p_fa;
}

}  // namespace

void DcfCost::Validate() const {
  if (!(c_miss >= 0.0) || !(c_fa >= 0.0) || !std::isfinite(c_miss) ||
      !std::isfinite(c_fa))
    throw UsageError("DCF costs must be finite and >= 0");
  if (c_miss == 0.0 && c_fa == 0.0)
    throw UsageError("DCF needs at least one positive cost");
  if (!(p_target > 0.0 && p_target < 1.0))
    throw UsageError("DCF p_target must lie in (0, 1)");
}

double DcfCost::Normalizer() const {
  return std::min(c_miss * p_target, c_fa * (1.0 - p_target));
}

void ADcfCost::Validate() const {
  for (double c : {c_miss, c_fa_nontarget, c_fa_spoof})
    if (!(c >= 0.0) || !std::isfinite(c))
      throw UsageError("a-DCF costs must be finite and >= 0");
  if (c_miss == 0.0 && c_fa_nontarget == 0.0 && c_fa_spoof == 0.0)
    throw UsageError("a-DCF needs at least one positive cost");
  if (!(p_target > 0.0) || !(p_nontarget >= 0.0) || !(p_spoof >= 0.0))
    throw UsageError("a-DCF priors must be >= 0 with p_target > 0");
  if (std::abs(p_target + p_nontarget + p_spoof - 1.0) > 1e-12)
    throw UsageError("a-DCF priors must sum to 1");
}

double MidpointThreshold(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid > lo ? mid : hi;
}

std::vector<double> CandidateThresholds(std::span<const double> scores) {
  CheckFinite(scores);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> out;
  out.reserve(sorted.size() + 1);
  out.push_back(-kInf);
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    out.push_back(MidpointThreshold(sorted[i], sorted[i + 1]));
  out.push_back(kInf);
  return out;
}

DetCurve ComputeDetCurve(std::span<const double> positives,
                         std::span<const double> negatives) {
  if (positives.empty() || negatives.empty())
    throw DataError("DET curve needs at least one positive and one negative "
                    "trial");
  return {Sweep(positives, negatives, {}, false), false};
}

DetCurve ComputeSasvDetCurve(std::span<const double> targets,
                             std::span<const double> nontargets,
                             std::span<const double> spoofs) {
  if (targets.empty()) throw DataError("SASV DET curve needs target trials");
  if (nontargets.empty() && spoofs.empty())
    throw DataError("SASV DET curve needs nontarget or spoof trials");
  return {Sweep(targets, nontargets, spoofs, true), true};
}

DetCurve ComputeDetCurve(const ScoreSet &labeled) {
  ClassScores c = SplitByClass(labeled);
  if (labeled.domain() == LabelDomain::kSasv)
    return ComputeSasvDetCurve(c.positives, c.nontargets, c.spoofs);
  return ComputeDetCurve(c.positives, c.negatives);
}

double ComputeEer(const DetCurve &curve) {
  const auto &pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = pts[i].p_miss - pts[i].p_fa;
    if (d == 0.0) return pts[i].p_miss;
    if (d > 0.0) {
      if (i == 0) return pts[0].p_miss;
      const OperatingPoint &a = pts[i - 1];
      const OperatingPoint &b = pts[i];
      const double da = a.p_miss - a.p_fa;  // < 0
      const double t = da / (da - d);
      return a.p_miss + t * (b.p_miss - a.p_miss);
    }
  }
  // A valid curve ends at (1, 0), so this is unreachable for it.
  return pts.empty() ? 0.0 : pts.back().p_miss;
}

double ComputeEer(const ScoreSet &labeled) {
  return ComputeEer(ComputeDetCurve(labeled));
}

DcfResult MinDcf(std::span<const double> positives,
                 std::span<const double> negatives, const DcfCost &cost,
                 bool normalize) {
  cost.Validate();
  const double norm = normalize ? cost.Normalizer() : 1.0;
  if (!(norm > 0.0)) throw UsageError("DCF normaliser is zero");
  DetCurve curve = ComputeDetCurve(positives, negatives);
  DcfResult best{kInf, 0.0};
  for (const auto &p : curve.points) {
    const double v = DcfAt(p, cost) / norm;
    if (v < best.value) best = {v, p.threshold};
  }
  return best;
}

DcfResult MinDcf(const ScoreSet &labeled, const DcfCost &cost, bool normalize) {
  if (labeled.domain() != LabelDomain::kCm)
    throw DataError("minDCF needs a CM-labeled score set");
  ClassScores c = SplitByClass(labeled);
  return MinDcf(c.positives, c.negatives, cost, normalize);
}

DcfResult MinADcf(std::span<const double> targets,
                  std::span<const double> nontargets,
                  std::span<const double> spoofs, const ADcfCost &cost,
                  bool normalize) {
  cost.Validate();
  DetCurve curve = ComputeSasvDetCurve(targets, nontargets, spoofs);
  const double w_miss = cost.c_miss * cost.p_target;
  const double w_nt = nontargets.empty() ? 0.0 : cost.c_fa_nontarget * cost.p_nontarget;
  const double w_sp = spoofs.empty() ? 0.0 : cost.c_fa_spoof * cost.p_spoof;
  double norm = 1.0;
  if (normalize) {
    norm = std::min(w_miss, w_nt + w_sp);
    if (!(norm > 0.0)) throw UsageError("a-DCF normaliser is zero");
  }
  DcfResult best{kInf, 0.0};
  for (const auto &p : curve.points) {
    const double v =
        (w_miss * p.p_miss + w_nt * p.p_fa_nontarget + w_sp * p.p_fa_spoof) /
        norm;
    if (v < best.value) best = {v, p.threshold};
  }
  return best;
}

DcfResult MinADcf(const ScoreSet &labeled, const ADcfCost &cost,
                  bool normalize) {
  if (labeled.domain() != LabelDomain::kSasv)
    throw DataError("min a-DCF needs a SASV-labeled score set");
  ClassScores c = SplitByClass(labeled);
  return MinADcf(c.positives, c.nontargets, c.spoofs, cost, normalize);
}

ClassScores SplitByClass(const ScoreSet &labeled) {
  if (!labeled.labeled()) throw DataError("score set is unlabeled");
  ClassScores c;
  for (const auto &r : labeled.records()) {
    switch (*r.label) {
      case Label::kBonafide:
      case Label::kTarget:
        c.positives.push_back(r.score);
        break;
      case Label::kSpoof:
        c.negatives.push_back(r.score);
        break;
      case Label::kNonTarget:
        c.negatives.push_back(r.score);
        c.nontargets.push_back(r.score);
        break;
      case Label::kSpoofImpostor:
        c.negatives.push_back(r.score);
        c.spoofs.push_back(r.score);
        break;
    }
  }
  return c;
}

namespace {

/// "A9" < "A10": compare the non-digit prefix, then the trailing number.
bool NaturalLess(const std::string &a, const std::string &b) {
  auto split = [](const std::string &s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    return std::pair<std::string, std::string>(s.substr(0, k), s.substr(k));
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na.size() != nb.size()) return na.size() < nb.size();
  return na < nb;
}

AttackRow RowFor(const ScoreSet &subset, const CostModel &cost,
                 bool normalize) {
  AttackRow row;
  ClassScores c = SplitByClass(subset);
  if (subset.domain() == LabelDomain::kSasv) {
    row.num_spoof = c.spoofs.size();
    row.cost = MinADcf(c.positives, c.nontargets, c.spoofs, cost.adcf, normalize)
                   .value;
    row.eer = ComputeEer(ComputeSasvDetCurve(c.positives, c.nontargets, c.spoofs));
  } else {
    row.num_spoof = c.negatives.size();
    row.cost = MinDcf(c.positives, c.negatives, cost.dcf, normalize).value;
    row.eer = ComputeEer(ComputeDetCurve(c.positives, c.negatives));
  }
  return row;
}

}  // namespace

AttackBreakdown PerAttackBreakdown(const ScoreSet &labeled,
                                   const CostModel &cost, bool normalize,
                                   int workers) {
  if (!labeled.labeled()) throw DataError("score set is unlabeled");
  std::vector<std::string> attacks;
  for (const auto &r : labeled.records()) {
    if (!IsSpoof(*r.label)) continue;
    if (!r.attack) throw DataError("spoof trial " + r.trial + " has no attack tag");
    attacks.push_back(*r.attack);
  }
  std::sort(attacks.begin(), attacks.end(), NaturalLess);
  attacks.erase(std::unique(attacks.begin(), attacks.end()), attacks.end());

  AttackBreakdown out;
  out.domain = *labeled.domain();
  out.rows.resize(attacks.size() + 1);
  ParallelFor(attacks.size() + 1, workers, [&](std::size_t i) {
    if (i == attacks.size()) {
      out.rows[i] = RowFor(labeled, cost, normalize);
      out.rows[i].attack = "pooled";
      return;
    }
    const std::string &a = attacks[i];
    ScoreSet subset = FilterRecords(labeled, [&](const ScoreRecord &r) {
      return !IsSpoof(*r.label) || *r.attack == a;
    });
    out.rows[i] = RowFor(subset, cost, normalize);
    out.rows[i].attack = a;
  });
  return out;
}

}  // namespace spoofbench
