// src/score-io.cc

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

#include "spoofbench/score-io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "spoofbench/error.h"
#include "spoofbench/rng.h"

namespace spoofbench {

LabelDomain DomainOf(Label label) {
  switch (label) {
    case Label::kBonafide:
    case Label::kSpoof:
      return LabelDomain::kCm;
    default:
      return LabelDomain::kSasv;
  }
}

std::string_view LabelToken(Label label) {
  switch (label) {
    case Label::kBonafide: return "bonafide";
    case Label::kSpoof: return "spoof";
    case Label::kTarget: return "target";
    case Label::kNonTarget: return "nontarget";
    case Label::kSpoofImpostor: return "spoof";
  }
  return "?";
}

bool IsPositive(Label label) {
  return label == Label::kBonafide || label == Label::kTarget;
}

bool IsSpoof(Label label) {
  return label == Label::kSpoof || label == Label::kSpoofImpostor;
}

namespace {

bool IsBlank(char c) { return c == ' ' || c == '\t'; }

bool ValidToken(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsBlank(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !IsBlank(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

/// Reads physical lines, strips CR, skips blank and '#' comment lines.
class LineReader {
 public:
  explicit LineReader(std::istream &in) : in_(in) {}

  bool Next(std::string_view *line) {
    while (std::getline(in_, buffer_)) {
      ++line_number_;
      if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
      std::string_view view(buffer_);
      std::size_t first = 0;
      while (first < view.size() && IsBlank(view[first])) ++first;
      if (first == view.size() || view[first] == '#') continue;
      *line = view;
      return true;
    }
    return false;
  }

  std::size_t line_number() const { return line_number_; }

 private:
  std::istream &in_;
  std::string buffer_;
  std::size_t line_number_ = 0;
};

double ParseReal(std::string_view text, const std::string &source,
                 std::size_t line, const char *what) {
  double value = 0.0;
  const char *begin = text.data();
  const char *end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec == std::errc::result_out_of_range)
    throw DataError(source, line,
                    std::string("non-finite ") + what + " '" +
                        std::string(text) + "'");
  if (ec != std::errc() || ptr != end)
    throw DataError(source, line,
                    std::string("non-numeric ") + what + " '" +
                        std::string(text) + "'");
  if (!std::isfinite(value))
    throw DataError(source, line,
                    std::string("non-finite ") + what + " '" +
                        std::string(text) + "'");
  return value;
}

std::ifstream OpenInput(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string FormatReal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

ScoreSet::ScoreSet(std::vector<ScoreRecord> records)
    : records_(std::move(records)) {
  index_.reserve(records_.size());
  std::optional<LabelDomain> domain;
  bool first_labeled = !records_.empty() && records_[0].label.has_value();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const ScoreRecord &r = records_[i];
    if (!ValidToken(r.trial))
      throw DataError("invalid trial id '" + r.trial + "'");
    if (!std::isfinite(r.score))
      throw DataError("non-finite score for trial " + r.trial);
    if (!index_.emplace(r.trial, i).second)
      throw DataError("duplicate trial id " + r.trial);
    if (r.label.has_value() != first_labeled)
      throw DataError("trial " + r.trial +
                      (first_labeled ? " is unlabeled" : " is labeled") +
                      " but the first record is not");
    if (r.label) {
      LabelDomain d = DomainOf(*r.label);
      if (domain && *domain != d)
        throw DataError("trial " + r.trial + " mixes CM and SASV labels");
      domain = d;
      if (r.attack && !IsSpoof(*r.label))
        throw DataError("non-spoof trial " + r.trial + " carries attack tag " +
                        *r.attack);
    }
    for (const auto &[name, value] : r.qualities)
      if (!std::isfinite(value))
        throw DataError("non-finite quality " + name + " for trial " +
                        r.trial);
  }
}

std::optional<LabelDomain> ScoreSet::domain() const {
  if (!labeled()) return std::nullopt;
  return DomainOf(*records_[0].label);
}

bool ScoreSet::has_attack_tags() const {
  return std::any_of(records_.begin(), records_.end(),
                     [](const ScoreRecord &r) { return r.attack.has_value(); });
}

std::vector<double> ScoreSet::Scores() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto &r : records_) out.push_back(r.score);
  return out;
}

const ScoreRecord *ScoreSet::Find(std::string_view trial) const {
  auto it = index_.find(std::string(trial));
  return it == index_.end() ? nullptr : &records_[it->second];
}

ScoreSet ScoreSet::WithScores(std::span<const double> scores) const {
  if (scores.size() != records_.size())
    throw UsageError("WithScores: got " + std::to_string(scores.size()) +
                     " scores for " + std::to_string(records_.size()) +
                     " records");
  std::vector<ScoreRecord> out = records_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].score = scores[i];
  return ScoreSet(std::move(out));
}

ScoreSet ParseScores(std::istream &in, const std::string &source,
                     const ScoreSchema &schema) {
  if (schema.trial_column >= schema.num_columns ||
      schema.score_column >= schema.num_columns ||
      schema.trial_column == schema.score_column)
    throw UsageError("invalid score schema");
  LineReader reader(in);
  std::string_view line;
  std::vector<ScoreRecord> records;
  std::unordered_set<std::string> seen;
  while (reader.Next(&line)) {
    const std::size_t n = reader.line_number();
    auto fields = SplitFields(line);
    if (fields.size() != schema.num_columns)
      throw DataError(source, n,
                      "expected " + std::to_string(schema.num_columns) +
                          " columns, got " + std::to_string(fields.size()));
    std::string trial(fields[schema.trial_column]);
    if (!seen.insert(trial).second)
      throw DataError(source, n, "duplicate trial id " + trial);
    double score = ParseReal(fields[schema.score_column], source, n, "score");
    records.push_back({std::move(trial), score, std::nullopt, std::nullopt, {}});
  }
  return ScoreSet(std::move(records));
}

ScoreSet ReadScoreFile(const std::filesystem::path &path,
                       const ScoreSchema &schema) {
  auto in = OpenInput(path);
  return ParseScores(in, path.string(), schema);
}

void WriteScores(std::ostream &out, const ScoreSet &scores) {
  for (const auto &r : scores.records())
    out << r.trial << '\t' << FormatReal(r.score) << '\n';
}

void WriteScoreFile(const std::filesystem::path &path, const ScoreSet &scores) {
  auto out = OpenOutput(path);
  WriteScores(out, scores);
}

Key::Key(std::vector<KeyEntry> entries, LabelDomain domain)
    : entries_(std::move(entries)), domain_(domain) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].trial, i).second)
      throw DataError("duplicate key trial " + entries_[i].trial);
    if (DomainOf(entries_[i].label) != domain_)
      throw DataError("key trial " + entries_[i].trial +
                      " has a label outside the key's domain");
  }
}

const KeyEntry *Key::Find(std::string_view trial) const {
  auto it = index_.find(std::string(trial));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Key ParseKey(std::istream &in, const std::string &source) {
  struct Raw {
    std::string trial;
    std::string label;
    std::optional<std::string> attack;
    std::size_t line;
  };
  LineReader reader(in);
  std::string_view line;
  std::vector<Raw> raw;
  bool cm_tokens = false, sasv_tokens = false;
  std::size_t first_cm = 0, first_sasv = 0;
  while (reader.Next(&line)) {
    const std::size_t n = reader.line_number();
    auto fields = SplitFields(line);
    if (fields.size() != 2 && fields.size() != 3)
      throw DataError(source, n,
                      "expected 2 or 3 key columns, got " +
                          std::to_string(fields.size()));
    Raw r{std::string(fields[0]), std::string(fields[1]), std::nullopt, n};
    if (fields.size() == 3 && fields[2] != "-") r.attack = std::string(fields[2]);
    if (r.label == "bonafide") {
      if (!cm_tokens) first_cm = n;
      cm_tokens = true;
    } else if (r.label == "target" || r.label == "nontarget") {
      if (!sasv_tokens) first_sasv = n;
      sasv_tokens = true;
    } else if (r.label != "spoof") {
      throw DataError(source, n, "malformed label token '" + r.label + "'");
    }
    raw.push_back(std::move(r));
  }
  if (cm_tokens && sasv_tokens)
    throw DataError(source, std::max(first_cm, first_sasv),
                    "key mixes CM (bonafide) and SASV (target/nontarget) "
                    "labels");
  const LabelDomain domain = sasv_tokens ? LabelDomain::kSasv : LabelDomain::kCm;
  std::vector<KeyEntry> entries;
  entries.reserve(raw.size());
  std::unordered_set<std::string> seen;
  for (auto &r : raw) {
    if (!seen.insert(r.trial).second)
      throw DataError(source, r.line, "duplicate trial id " + r.trial);
    Label label;
    if (r.label == "bonafide") label = Label::kBonafide;
    else if (r.label == "target") label = Label::kTarget;
    else if (r.label == "nontarget") label = Label::kNonTarget;
    else label = domain == LabelDomain::kSasv ? Label::kSpoofImpostor
                                              : Label::kSpoof;
    if (r.attack && !IsSpoof(label))
      throw DataError(source, r.line,
                      "attack tag on non-spoof trial " + r.trial);
    entries.push_back({std::move(r.trial), label, std::move(r.attack)});
  }
  return Key(std::move(entries), domain);
}

Key ReadKeyFile(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ParseKey(in, path.string());
}

void WriteKey(std::ostream &out, const ScoreSet &labeled) {
  if (!labeled.labeled()) throw UsageError("WriteKey: score set is unlabeled");
  const bool tags = labeled.has_attack_tags();
  for (const auto &r : labeled.records()) {
    out << r.trial << '\t' << LabelToken(*r.label);
    if (tags) out << '\t' << (r.attack ? *r.attack : std::string("-"));
    out << '\n';
  }
}

JoinResult JoinKey(const ScoreSet &scores, const Key &key) {
  JoinResult result;
  std::vector<ScoreRecord> out;
  out.reserve(scores.size());
  for (const auto &r : scores.records()) {
    const KeyEntry *entry = key.Find(r.trial);
    if (entry == nullptr)
      throw DataError("scored trial " + r.trial + " is absent from the key");
    ScoreRecord labeled = r;
    labeled.label = entry->label;
    labeled.attack = entry->attack;
    out.push_back(std::move(labeled));
  }
  for (const auto &e : key.entries())
    if (scores.Find(e.trial) == nullptr) result.unscored.push_back(e.trial);
  if (!result.unscored.empty())
    result.diagnostics.push_back(std::to_string(result.unscored.size()) +
                                 " keyed trial" +
                                 (result.unscored.size() == 1 ? "" : "s") +
                                 " unscored");
  result.scores = ScoreSet(std::move(out));
  return result;
}

QualityTable ParseQualities(std::istream &in, const std::string &source) {
  LineReader reader(in);
  std::string_view line;
  QualityTable table;
  while (reader.Next(&line)) {
    const std::size_t n = reader.line_number();
    auto fields = SplitFields(line);
    if (fields.size() != 2)
      throw DataError(source, n,
                      "expected 2 columns, got " + std::to_string(fields.size()));
    QualityMap qualities;
    std::string_view rest = fields[1];
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view()
                                             : rest.substr(comma + 1);
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw DataError(source, n,
                        "malformed quality item '" + std::string(item) + "'");
      std::string name(item.substr(0, eq));
      double value = ParseReal(item.substr(eq + 1), source, n, "quality");
      if (!qualities.emplace(name, value).second)
        throw DataError(source, n, "duplicate quality " + name);
    }
    if (!table.emplace(std::string(fields[0]), std::move(qualities)).second)
      throw DataError(source, n,
                      "duplicate trial id " + std::string(fields[0]));
  }
  return table;
}

QualityTable ReadQualityFile(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ParseQualities(in, path.string());
}

void WriteQualities(std::ostream &out, const ScoreSet &scores) {
  for (const auto &r : scores.records()) {
    if (r.qualities.empty()) continue;
    out << r.trial << '\t';
    bool first = true;
    for (const auto &[name, value] : r.qualities) {
      if (!first) out << ',';
      out << name << '=' << FormatReal(value);
      first = false;
    }
    out << '\n';
  }
}

ScoreSet AttachQualities(const ScoreSet &scores, const QualityTable &table,
                         std::span<const std::string> schema) {
  std::vector<ScoreRecord> out = scores.records();
  for (auto &r : out) {
    auto it = table.find(r.trial);
    if (it == table.end())
      throw DataError("trial " + r.trial + " has no quality record");
    for (const auto &name : schema) {
      auto q = it->second.find(name);
      if (q == it->second.end())
        throw DataError("trial " + r.trial + " is missing quality field " +
                        name);
      r.qualities[name] = q->second;
    }
  }
  return ScoreSet(std::move(out));
}

ScoreSet AlignedScores::ToScoreSet(std::span<const double> scores) const {
  if (scores.size() != trials.size())
    throw UsageError("ToScoreSet: size mismatch");
  std::vector<ScoreRecord> out(trials.size());
  for (std::size_t t = 0; t < trials.size(); ++t) {
    out[t].trial = trials[t];
    out[t].score = scores[t];
    out[t].label = labels[t];
    out[t].attack = attacks[t];
  }
  return ScoreSet(std::move(out));
}

AlignedScores AlignSystems(std::span<const ScoreSet> sets) {
  if (sets.empty()) throw UsageError("AlignSystems: no score sets");
  AlignedScores aligned;
  const ScoreSet &first = sets[0];
  for (const auto &r : first.records()) {
    bool everywhere = true;
    for (std::size_t s = 1; s < sets.size() && everywhere; ++s)
      everywhere = sets[s].Find(r.trial) != nullptr;
    if (everywhere) aligned.trials.push_back(r.trial);
  }
  if (aligned.trials.empty())
    throw DataError("score sets have an empty trial intersection");

  const std::size_t n = aligned.trials.size();
  aligned.labels.assign(n, std::nullopt);
  aligned.attacks.assign(n, std::nullopt);
  aligned.columns.assign(sets.size(), std::vector<double>(n));
  for (std::size_t s = 0; s < sets.size(); ++s) {
    aligned.dropped.push_back(sets[s].size() - n);
    for (std::size_t t = 0; t < n; ++t) {
      const ScoreRecord *r = sets[s].Find(aligned.trials[t]);
      aligned.columns[s][t] = r->score;
      if (r->label) {
        if (aligned.labels[t] && *aligned.labels[t] != *r->label)
          throw DataError("trial " + r->trial +
                          " is labeled inconsistently across systems");
        aligned.labels[t] = r->label;
      }
      if (r->attack) aligned.attacks[t] = r->attack;
    }
  }
  // Either every row is labeled or none is.
  const bool any = std::any_of(aligned.labels.begin(), aligned.labels.end(),
                               [](const auto &l) { return l.has_value(); });
  const bool all = std::all_of(aligned.labels.begin(), aligned.labels.end(),
                               [](const auto &l) { return l.has_value(); });
  if (any && !all)
    throw DataError("score sets are labeled inconsistently");
  return aligned;
}

ScoreSet ToCmView(const ScoreSet &scores) {
  if (scores.domain() != LabelDomain::kSasv) return scores;
  std::vector<ScoreRecord> out = scores.records();
  for (auto &r : out)
    r.label = IsSpoof(*r.label) ? Label::kSpoof : Label::kBonafide;
  return ScoreSet(std::move(out));
}

ScoreSet SynthGaussianScores(std::size_t n_pos, std::size_t n_neg,
                             double mu_pos, double mu_neg, double sigma,
                             std::uint64_t seed) {
  SynthOptions options;
  options.classes = {{Label::kBonafide, n_pos, mu_pos},
                     {Label::kSpoof, n_neg, mu_neg}};
  options.sigma = sigma;
  options.seed = seed;
  return SynthesizeScores(options);
}

ScoreSet SynthesizeScores(const SynthOptions &options) {
  if (!(options.sigma > 0.0) || !std::isfinite(options.sigma))
    throw UsageError("synthetic scores need sigma > 0");
  if (options.classes.empty()) throw UsageError("no synthetic classes given");
  std::optional<LabelDomain> domain;
  std::size_t total = 0;
  for (const auto &c : options.classes) {
    if (c.count < 1) throw UsageError("synthetic class counts must be >= 1");
    if (!std::isfinite(c.mean)) throw UsageError("non-finite class mean");
    if (domain && *domain != DomainOf(c.label))
      throw UsageError("synthetic classes mix CM and SASV labels");
    domain = DomainOf(c.label);
    total += c.count;
  }
  const int width = std::max<int>(6, std::to_string(total).size());
  Rng rng(options.seed);
  Rng quality_rng(DeriveSeed(options.seed, "qualities"));
  std::vector<ScoreRecord> records;
  records.reserve(total);
  std::size_t spoof_index = 0;
  for (const auto &c : options.classes) {
    for (std::size_t i = 0; i < c.count; ++i) {
      ScoreRecord r;
      std::string number = std::to_string(records.size() + 1);
      r.trial = "T" + std::string(width - number.size(), '0') + number;
      r.score = rng.Normal(c.mean, options.sigma);
      r.label = c.label;
      if (IsSpoof(c.label) && !options.attacks.empty())
        r.attack = options.attacks[spoof_index++ % options.attacks.size()];
      if (options.qualities) {
        const double enroll = quality_rng.Uniform(2.0, 10.0);
        const double test = quality_rng.Uniform(1.0, 10.0);
        const double magnitude = quality_rng.Uniform(15.0, 30.0);
        r.qualities = {{"embedding_magnitude", magnitude},
                       {"enroll_duration", enroll},
                       {"test_duration", test}};
        r.score += options.quality_bias * (test - 5.5) / 4.5;
      }
      records.push_back(std::move(r));
    }
  }
  return ScoreSet(std::move(records));
}

}  // namespace spoofbench
