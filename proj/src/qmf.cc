// src/qmf.cc

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

#include "spoofbench/qmf.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"
#include "spoofbench/error.h"

namespace spoofbench {

namespace {

constexpr const char *kFormatTag = "spoofbench-qmf/1";

using Eigen::MatrixXd;
using Eigen::VectorXd;

double Log1pExp(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// Penalised negative log-likelihood; theta(0) is the unpenalised bias.
double Loss(const MatrixXd &x, const VectorXd &y, const VectorXd &theta,
            double lambda) {
  VectorXd eta = x * theta;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    loss += Log1pExp(eta(i)) - y(i) * eta(i);
  return loss + 0.5 * lambda * theta.tail(theta.size() - 1).squaredNorm();
}

}  // namespace

QmfModel::QmfModel(std::vector<std::string> quality_names, double bias,
                   double weight_score, std::vector<double> weights_quality,
                   std::vector<double> mean, std::vector<double> stddev)
    : names_(std::move(quality_names)),
      bias_(bias),
      weight_score_(weight_score),
      weights_quality_(std::move(weights_quality)),
      mean_(std::move(mean)),
      stddev_(std::move(stddev)) {
  const std::size_t q = names_.size();
  if (weights_quality_.size() != q || mean_.size() != q + 1 ||
      stddev_.size() != q + 1)
    throw DataError("QMF model vectors do not match its quality schema");
  if (!std::isfinite(bias_) || !std::isfinite(weight_score_))
    throw DataError("QMF model has non-finite weights");
  for (std::size_t j = 0; j <= q; ++j) {
    if (!std::isfinite(mean_[j]) || !(stddev_[j] > 0.0) ||
        !std::isfinite(stddev_[j]))
      throw DataError("QMF standardisation needs finite means and stddev > 0");
    if (j < q && !std::isfinite(weights_quality_[j]))
      throw DataError("QMF model has non-finite weights");
  }
}

QmfModel QmfModel::Identity(std::vector<std::string> quality_names) {
  const std::size_t q = quality_names.size();
  return QmfModel(std::move(quality_names), 0.0, 1.0,
                  std::vector<double>(q, 0.0), std::vector<double>(q + 1, 0.0),
                  std::vector<double>(q + 1, 1.0));
}

double QmfModel::Calibrate(double score, const QualityMap &qualities) const {
  double out = bias_ + weight_score_ * (score - mean_[0]) / stddev_[0];
  for (std::size_t j = 0; j < names_.size(); ++j) {
    auto it = qualities.find(names_[j]);
    if (it == qualities.end())
      throw DataError("record is missing quality field " + names_[j]);
    out += weights_quality_[j] * (it->second - mean_[j + 1]) / stddev_[j + 1];
  }
  return out;
}

std::string QmfModel::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = kFormatTag;
  j["quality_names"] = names_;
  j["standardization"] = {{"mean", mean_}, {"stddev", stddev_}};
  j["bias"] = bias_;
  j["weight_score"] = weight_score_;
  j["weights_quality"] = weights_quality_;
  return j.dump(2) + "\n";
}

QmfModel QmfModel::FromJson(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormatTag)
      throw DataError("unsupported QMF model format '" +
                      j.at("format").get<std::string>() + "'");
    return QmfModel(j.at("quality_names").get<std::vector<std::string>>(),
                    j.at("bias").get<double>(), j.at("weight_score").get<double>(),
                    j.at("weights_quality").get<std::vector<double>>(),
                    j.at("standardization").at("mean").get<std::vector<double>>(),
                    j.at("standardization").at("stddev").get<std::vector<double>>());
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("malformed QMF model: ") + e.what());
  }
}

QmfModel FitQmf(const ScoreSet &dev, std::span<const std::string> schema,
                const QmfFitOptions &options) {
  if (!dev.labeled()) throw DataError("QMF fit needs a labeled dev set");
  if (!(options.l2_lambda >= 0.0) || !(options.tol > 0.0) || options.max_iter < 1)
    throw UsageError("invalid QMF fit options");
  const bool drop_spoof =
      options.exclude_spoof && dev.domain() == LabelDomain::kSasv;

  std::vector<const ScoreRecord *> rows;
  for (const auto &r : dev.records())
    if (!(drop_spoof && IsSpoof(*r.label))) rows.push_back(&r);

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(schema.size()) + 1;
  MatrixXd raw(n, p);
  VectorXd y(n);
  std::size_t positives = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const ScoreRecord &r = *rows[i];
    raw(i, 0) = r.score;
    for (Eigen::Index j = 1; j < p; ++j) {
      auto it = r.qualities.find(schema[j - 1]);
      if (it == r.qualities.end())
        throw DataError("trial " + r.trial + " is missing quality field " +
                        schema[j - 1]);
      raw(i, j) = it->second;
    }
    y(i) = IsPositive(*r.label) ? 1.0 : 0.0;
    positives += IsPositive(*r.label);
  }
  if (positives == 0 || positives == rows.size())
    throw DataError("QMF fit needs both classes in the dev set");

  std::vector<double> mean(p), stddev(p);
  MatrixXd x(n, p + 1);
  x.col(0).setOnes();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double m = raw.col(j).mean();
    const double var = (raw.col(j).array() - m).square().mean();
    if (!(var > 0.0))
      throw DataError("degenerate feature '" +
                      (j == 0 ? std::string("score") : schema[j - 1]) +
                      "' has zero variance");
    mean[j] = m;
    stddev[j] = std::sqrt(var);
    x.col(j + 1) = (raw.col(j).array() - m) / stddev[j];
  }

  const double lambda = options.l2_lambda;
  VectorXd penalty = VectorXd::Constant(p + 1, lambda);
  penalty(0) = 0.0;
  VectorXd theta = VectorXd::Zero(p + 1);
  double loss = Loss(x, y, theta, lambda);
  bool converged = false;
  for (int iter = 0; iter < options.max_iter && !converged; ++iter) {
    VectorXd eta = x * theta;
    VectorXd prob(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      prob(i) = Sigmoid(eta(i));
      w(i) = prob(i) * (1.0 - prob(i));
    }
    VectorXd grad = x.transpose() * (prob - y) + penalty.cwiseProduct(theta);
    MatrixXd hess = x.transpose() * w.asDiagonal() * x;
    hess.diagonal() += penalty;
    VectorXd step = hess.ldlt().solve(grad);
    // Step halving keeps the iteration monotone when the Hessian is nearly
    // singular (separable data with small lambda).
    double scale = 1.0;
    VectorXd next = theta - step;
    double next_loss = Loss(x, y, next, lambda);
    while (next_loss > loss && scale > 1e-10) {
      scale *= 0.5;
      next = theta - scale * step;
      next_loss = Loss(x, y, next, lambda);
    }
    const double change = (next - theta).lpNorm<Eigen::Infinity>();
    theta = next;
    loss = next_loss;
    if (!theta.allFinite()) break;
    converged = change < options.tol;
  }
  if (!converged)
    throw DataError("QMF logistic regression did not converge in " +
                    std::to_string(options.max_iter) + " iterations");

  std::vector<double> wq(theta.data() + 2, theta.data() + p + 1);
  return QmfModel(std::vector<std::string>(schema.begin(), schema.end()),
                  theta(0), theta(1), std::move(wq), std::move(mean),
                  std::move(stddev));
}

ScoreSet ApplyQmf(const QmfModel &model, const ScoreSet &scores) {
  std::vector<double> out;
  out.reserve(scores.size());
  for (const auto &r : scores.records()) {
    for (const auto &name : model.quality_names())
      if (!r.qualities.count(name))
        throw DataError("schema mismatch: trial " + r.trial +
                        " has no quality " + name);
    out.push_back(model.Calibrate(r.score, r.qualities));
  }
  return scores.WithScores(out);
}

void SaveQmfModel(const std::filesystem::path &path, const QmfModel &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << model.ToJson();
}

QmfModel LoadQmfModel(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return QmfModel::FromJson(text.str());
}

}  // namespace spoofbench
