// tests/testing/fixtures.h

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

#ifndef SPOOFBENCH_TESTS_TESTING_FIXTURES_H_
#define SPOOFBENCH_TESTS_TESTING_FIXTURES_H_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "spoofbench/rng.h"
#include "spoofbench/score-io.h"

namespace spoofbench::testing {

inline std::string TrialId(const char *prefix, std::size_t i) {
  return std::string(prefix) + std::to_string(1000 + i);
}

/// `n_sys` noisy systems over `n` CM trials.  Systems share a common noise
/// component so fusion helps but is not trivial.
inline std::vector<ScoreSet> FusionSystems(std::size_t n_sys, std::size_t n,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> separation(n_sys), shared_weight(n_sys), scale(n_sys);
  for (std::size_t s = 0; s < n_sys; ++s) {
    separation[s] = rng.Uniform(0.8, 2.5);
    shared_weight[s] = rng.Uniform(0.0, 0.8);
    scale[s] = rng.Uniform(0.5, 3.0);
  }
  std::vector<std::vector<ScoreRecord>> recs(n_sys);
  for (std::size_t i = 0; i < n; ++i) {
    const bool bona = i % 2 == 0;
    const double shared = rng.Normal();
    for (std::size_t s = 0; s < n_sys; ++s) {
      const double mean = bona ? separation[s] / 2 : -separation[s] / 2;
      const double v =
          scale[s] * (mean + shared_weight[s] * shared + rng.Normal());
      recs[s].push_back({TrialId("F", i), v, bona ? Label::kBonafide : Label::kSpoof,
                         {}, {}});
    }
  }
  std::vector<ScoreSet> out;
  for (auto &r : recs) out.emplace_back(std::move(r));
  return out;
}

/// Labeled CM trials with three qualities, for QMF fitting.  Scores carry
/// a test-duration dependent shift of size `bias`.
inline ScoreSet QualityTrials(std::size_t n, double bias, std::uint64_t seed,
                              double separation = 1.5) {
  Rng rng(seed);
  std::vector<ScoreRecord> recs;
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = i % 2 == 0;
    QualityMap q;
    q["enroll_duration"] = rng.Uniform(2.0, 10.0);
    q["test_duration"] = rng.Uniform(1.0, 10.0);
    q["embedding_magnitude"] = rng.Uniform(10.0, 30.0);
    const double shift = bias * (q["test_duration"] - 5.5) / 4.5;
    const double s = (positive ? separation / 2 : -separation / 2) + rng.Normal() + shift;
    recs.push_back({TrialId("Q", i), s, positive ? Label::kBonafide : Label::kSpoof,
                    {}, std::move(q)});
  }
  return ScoreSet(std::move(recs));
}

struct CascadeFixture {
  ScoreSet gate;    // SASV-labeled
  ScoreSet scorer;  // SASV-labeled, same trials
};

/// SASV dev trials: the gate (ASV-like) separates targets from nontargets,
/// the scorer (CM-like) separates spoofs from the rest.
inline CascadeFixture CascadeTrials(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ScoreRecord> g, s;
  for (std::size_t i = 0; i < n; ++i) {
    const Label label = i % 3 == 0   ? Label::kTarget
                        : i % 3 == 1 ? Label::kNonTarget
                                     : Label::kSpoofImpostor;
    const double gate_mean = label == Label::kNonTarget ? -2.0 : 1.5;
    const double scorer_mean = label == Label::kSpoofImpostor ? -1.5 : 1.0;
    const std::string id = TrialId("C", i);
    g.push_back({id, rng.Normal(gate_mean, 1.0), label, {}, {}});
    s.push_back({id, rng.Normal(scorer_mean, 1.0), label, {}, {}});
  }
  return {ScoreSet(std::move(g)), ScoreSet(std::move(s))};
}

}  // namespace spoofbench::testing

#endif  // SPOOFBENCH_TESTS_TESTING_FIXTURES_H_
