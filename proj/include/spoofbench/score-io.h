// include/spoofbench/score-io.h

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

#ifndef SPOOFBENCH_SCORE_IO_H_
#define SPOOFBENCH_SCORE_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spoofbench {

/// Trial labels of both label domains.  A key file uses exactly one domain:
/// CM keys carry {bonafide, spoof}, SASV keys carry {target, nontarget,
/// spoof}.  The "spoof" token maps to kSpoof or kSpoofImpostor depending on
/// the domain of the rest of the file.
enum class Label { kBonafide, kSpoof, kTarget, kNonTarget, kSpoofImpostor };

enum class LabelDomain { kCm, kSasv };

LabelDomain DomainOf(Label label);
std::string_view LabelToken(Label label);
/// Bonafide (CM) and target (SASV) are the positive classes.
bool IsPositive(Label label);
bool IsSpoof(Label label);

using QualityMap = std::map<std::string, double>;

struct ScoreRecord {
  std::string trial;
  double score = 0.0;
  std::optional<Label> label;
  /// Attack identifier (e.g. "A17"); only spoof trials carry one.
  std::optional<std::string> attack;
  QualityMap qualities;
};

/// Ordered, immutable collection of scored trials for one system.
///
/// Invariants, checked on construction: trial ids are non-empty tokens
/// without whitespace and unique; scores are finite; either every record is
/// labeled or none is; all labels share one domain; attack tags only appear
/// on spoof trials.
class ScoreSet {
 public:
  ScoreSet() = default;
  explicit ScoreSet(std::vector<ScoreRecord> records);

  const std::vector<ScoreRecord> &records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const ScoreRecord &operator[](std::size_t i) const { return records_[i]; }

  bool labeled() const { return !records_.empty() && records_[0].label; }
  std::optional<LabelDomain> domain() const;
  bool has_attack_tags() const;

  std::vector<double> Scores() const;
  const ScoreRecord *Find(std::string_view trial) const;

  /// Same records with the scores replaced (size must match).
  ScoreSet WithScores(std::span<const double> scores) const;

 private:
  std::vector<ScoreRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Column layout of a score file.  The default is `trial_id<TAB>score`.
struct ScoreSchema {
  std::size_t num_columns = 2;
  std::size_t trial_column = 0;
  std::size_t score_column = 1;
};

ScoreSet ParseScores(std::istream &in, const std::string &source = "<stream>",
                     const ScoreSchema &schema = {});
ScoreSet ReadScoreFile(const std::filesystem::path &path,
                       const ScoreSchema &schema = {});
void WriteScores(std::ostream &out, const ScoreSet &scores);
void WriteScoreFile(const std::filesystem::path &path, const ScoreSet &scores);

/// Shortest decimal string that parses back to exactly `value`.
std::string FormatReal(double value);

struct KeyEntry {
  std::string trial;
  Label label;
  std::optional<std::string> attack;
};

/// Parsed key file: `trial_id<TAB>label[<TAB>attack]`, attack "-" meaning
/// none.
class Key {
 public:
  Key() = default;
  Key(std::vector<KeyEntry> entries, LabelDomain domain);

  const std::vector<KeyEntry> &entries() const { return entries_; }
  LabelDomain domain() const { return domain_; }
  const KeyEntry *Find(std::string_view trial) const;

 private:
  std::vector<KeyEntry> entries_;
  LabelDomain domain_ = LabelDomain::kCm;
  std::unordered_map<std::string, std::size_t> index_;
};

Key ParseKey(std::istream &in, const std::string &source = "<stream>");
Key ReadKeyFile(const std::filesystem::path &path);
void WriteKey(std::ostream &out, const ScoreSet &labeled);

struct JoinResult {
  ScoreSet scores;
  /// Keyed trials that have no score, in key order.
  std::vector<std::string> unscored;
  std::vector<std::string> diagnostics;
};

/// Attach labels (and attack tags) from `key` to every scored trial.  Throws
/// DataError naming the first scored trial that is absent from the key.
JoinResult JoinKey(const ScoreSet &scores, const Key &key);

/// Quality sidecar: `trial_id<TAB>name=value[,name=value...]`.
using QualityTable = std::unordered_map<std::string, QualityMap>;

QualityTable ParseQualities(std::istream &in,
                            const std::string &source = "<stream>");
QualityTable ReadQualityFile(const std::filesystem::path &path);
void WriteQualities(std::ostream &out, const ScoreSet &scores);

/// Copy the qualities named in `schema` from the table onto each record.
/// Every record must have every schema field.
ScoreSet AttachQualities(const ScoreSet &scores, const QualityTable &table,
                         std::span<const std::string> schema);

/// Trial x system score matrix over the trials common to all systems.
struct AlignedScores {
  std::vector<std::string> trials;
  std::vector<std::optional<Label>> labels;
  std::vector<std::optional<std::string>> attacks;
  /// columns[s][t] is system s's score for trials[t].
  std::vector<std::vector<double>> columns;
  /// Per system, how many of its trials were not in the intersection.
  std::vector<std::size_t> dropped;

  std::size_t num_trials() const { return trials.size(); }
  std::size_t num_systems() const { return columns.size(); }

  /// Build a score set over the aligned trials (labels carried through).
  ScoreSet ToScoreSet(std::span<const double> scores) const;
};

/// Rows are the intersection of trial ids, in the first set's order.  Labels
/// are taken from whichever sets carry them and must agree.
AlignedScores AlignSystems(std::span<const ScoreSet> sets);

/// View of a SASV-labeled set as a CM problem: target and nontarget trials
/// become bonafide, spoof impostors become spoof.  CM sets pass through.
ScoreSet ToCmView(const ScoreSet &scores);

/// Keep the records for which `keep` is true.
template <typename Pred>
ScoreSet FilterRecords(const ScoreSet &scores, Pred keep) {
  std::vector<ScoreRecord> out;
  for (const auto &r : scores.records())
    if (keep(r)) out.push_back(r);
  return ScoreSet(std::move(out));
}

/// Two-class Gaussian fixture: n_pos bonafide trials ~ N(mu_pos, sigma^2)
/// and n_neg spoof trials ~ N(mu_neg, sigma^2).  Deterministic in the seed.
ScoreSet SynthGaussianScores(std::size_t n_pos, std::size_t n_neg,
                             double mu_pos, double mu_neg, double sigma,
                             std::uint64_t seed);

struct SynthClass {
  Label label;
  std::size_t count = 0;
  double mean = 0.0;
};

struct SynthOptions {
  std::vector<SynthClass> classes;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  /// Spoof trials are tagged round-robin with these attack ids.
  std::vector<std::string> attacks;
  /// Generate enroll_duration, test_duration and embedding_magnitude.
  bool qualities = false;
  /// Added to every score: quality_bias * (test_duration - 5.5) / 4.5, so a
  /// duration-dependent shift that a quality-aware calibration can undo.
  double quality_bias = 0.0;
};

/// Multi-class generalisation of SynthGaussianScores.  Trial ids depend only
/// on the class list, so systems synthesised with the same classes and
/// different seeds score the same trial list.
ScoreSet SynthesizeScores(const SynthOptions &options);

}  // namespace spoofbench

#endif  // SPOOFBENCH_SCORE_IO_H_
