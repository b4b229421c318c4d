// include/spoofbench/qmf.h

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

#ifndef SPOOFBENCH_QMF_H_
#define SPOOFBENCH_QMF_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spoofbench/score-io.h"

namespace spoofbench {

/// Durations in seconds; magnitude is the L2 norm of the test embedding.
inline const std::vector<std::string> &DefaultQualitySchema() {
  static const std::vector<std::string> schema = {
      "enroll_duration", "test_duration", "embedding_magnitude"};
  return schema;
}

/// Quality measure function: logistic regression over the raw score and a
/// fixed, ordered set of quality features.  Features are z-scored with the
/// statistics captured at fit time; the calibrated score is the log-odds
/// bias + w_s * z(score) + sum_j w_j * z(q_j).
class QmfModel {
 public:
  QmfModel(std::vector<std::string> quality_names, double bias,
           double weight_score, std::vector<double> weights_quality,
           std::vector<double> mean, std::vector<double> stddev);

  /// bias 0, w_s 1, w_q 0, identity standardisation.
  static QmfModel Identity(std::vector<std::string> quality_names);

  const std::vector<std::string> &quality_names() const { return names_; }
  double bias() const { return bias_; }
  double weight_score() const { return weight_score_; }
  const std::vector<double> &weights_quality() const { return weights_quality_; }
  /// Index 0 is the score, then quality_names() in order.
  const std::vector<double> &mean() const { return mean_; }
  const std::vector<double> &stddev() const { return stddev_; }

  double Calibrate(double score, const QualityMap &qualities) const;

  std::string ToJson() const;
  static QmfModel FromJson(const std::string &text);

  friend bool operator==(const QmfModel &, const QmfModel &) = default;

 private:
  std::vector<std::string> names_;
  double bias_;
  double weight_score_;
  std::vector<double> weights_quality_;
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

struct QmfFitOptions {
  /// L2 penalty (lambda / 2) * |w|^2 on the non-bias weights, added to the
  /// summed negative log-likelihood.
  double l2_lambda = 1e-2;
  /// Converged when the max-norm of the Newton update drops below tol.
  double tol = 1e-10;
  int max_iter = 100;
  /// For SASV sets, fit target vs nontarget only.
  bool exclude_spoof = true;
};

/// IRLS (damped Newton) fit on a labeled dev set whose records carry every
/// quality in `schema`.  Positive class: bonafide / target.
QmfModel FitQmf(const ScoreSet &dev, std::span<const std::string> schema,
                const QmfFitOptions &options = {});

/// Replaces every score by its calibrated log-odds.
ScoreSet ApplyQmf(const QmfModel &model, const ScoreSet &scores);

void SaveQmfModel(const std::filesystem::path &path, const QmfModel &model);
QmfModel LoadQmfModel(const std::filesystem::path &path);

}  // namespace spoofbench

#endif  // SPOOFBENCH_QMF_H_
