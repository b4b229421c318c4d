// tests/qmf_test.cc

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

#include <cmath>
#include <filesystem>
#include <vector>

#include <gtest/gtest.h>

#include "spoofbench/error.h"
#include "spoofbench/metrics.h"
#include "spoofbench/qmf.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"
#include "testing/score-oracles.h"

namespace spoofbench {
namespace {

using testing::Design;


std::vector<double> Params(const QmfModel &m) {
  std::vector<double> t = {m.bias(), m.weight_score()};
  t.insert(t.end(), m.weights_quality().begin(), m.weights_quality().end());
  return t;
}

const std::vector<std::string> &Schema() { return DefaultQualitySchema(); }

TEST(FitQmf, MatchesGradientDescentOracle) {
  ScoreSet dev = testing::QualityTrials(200, 1.0, 77);
  for (double lambda : {1e-2, 1.0}) {
    QmfFitOptions opt;
    opt.l2_lambda = lambda;
    QmfModel m = FitQmf(dev, Schema(), opt);
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    Design(dev, Schema(), &x, &y);
    auto want = testing::GradientDescentLogistic(x, y, lambda);
    auto got = Params(m);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t j = 0; j < got.size(); ++j)
      EXPECT_NEAR(got[j], want[j], 1e-6) << "lambda " << lambda << " param " << j;
  }
}

TEST(FitQmf, SeparableOneDimensional) {
  std::vector<ScoreRecord> r;
  const std::vector<std::string> schema = {"q"};
  for (int i = 0; i < 20; ++i) {
    const bool pos = i % 2 == 0;
    const double s = (pos ? 1.0 : -1.0) * (0.5 + 0.1 * i);
    r.push_back({"t" + std::to_string(i), s, pos ? Label::kBonafide : Label::kSpoof, {},
                 {{"q", 1.0 + (i % 5)}}});
  }
  ScoreSet dev(r);
  QmfFitOptions opt;
  opt.l2_lambda = 0.01;
  QmfModel m = FitQmf(dev, schema, opt);
  for (double p : Params(m)) EXPECT_TRUE(std::isfinite(p));
  ScoreSet cal = ApplyQmf(m, dev);
  for (const auto &rec : cal.records())
    EXPECT_EQ(rec.score > 0.0, *rec.label == Label::kBonafide) << rec.trial;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  Design(dev, schema, &x, &y);
  auto want = testing::GradientDescentLogistic(x, y, 0.01);
  auto got = Params(m);
  for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got[j], want[j], 1e-6);
}

TEST(FitQmf, RegularizationShrinksUninformativeWeights) {
  Rng rng(5);
  std::vector<ScoreRecord> r;
  for (int i = 0; i < 200; ++i) {
    r.push_back({"t" + std::to_string(i), rng.Normal(), i % 2 ? Label::kSpoof : Label::kBonafide,
                 {},
                 {{"enroll_duration", rng.Uniform(1, 5)},
                  {"test_duration", rng.Uniform(1, 5)},
                  {"embedding_magnitude", rng.Uniform(1, 5)}}});
  }
  QmfFitOptions opt;
  opt.l2_lambda = 1e3;
  QmfModel m = FitQmf(ScoreSet(r), Schema(), opt);
  EXPECT_LT(std::abs(m.weight_score()), 0.1);
  for (double w : m.weights_quality()) EXPECT_LT(std::abs(w), 0.1);
}

TEST(FitQmf, Errors) {
  ScoreSet dev = testing::QualityTrials(20, 0.0, 1);
  std::vector<ScoreRecord> flat = dev.records();
  for (auto &r : flat) r.qualities["test_duration"] = 3.0;
  try {
    FitQmf(ScoreSet(flat), Schema());
    FAIL();
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("test_duration"), std::string::npos);
  }
  std::vector<ScoreRecord> one = dev.records();
  for (auto &r : one) r.label = Label::kBonafide;
  EXPECT_THROW(FitQmf(ScoreSet(one), Schema()), DataError);
  std::vector<ScoreRecord> missing = dev.records();
  missing[3].qualities.erase("embedding_magnitude");
  EXPECT_THROW(FitQmf(ScoreSet(missing), Schema()), DataError);
  QmfFitOptions tight;
  tight.max_iter = 1;
  EXPECT_THROW(FitQmf(dev, Schema(), tight), DataError);
}

TEST(ApplyQmf, IdentityModel) {
  ScoreSet dev = testing::QualityTrials(30, 0.5, 2);
  ScoreSet out = ApplyQmf(QmfModel::Identity(Schema()), dev);
  EXPECT_EQ(out.Scores(), dev.Scores());
  std::vector<std::string> other = {"snr"};
  EXPECT_THROW(ApplyQmf(QmfModel::Identity(other), dev), DataError);
}

TEST(ApplyQmf, FixedQualitiesPreserveMetrics) {
  ScoreSet dev = testing::QualityTrials(100, 0.0, 3);
  QmfModel fitted = FitQmf(dev, Schema());
  ASSERT_GT(fitted.weight_score(), 0.0);
  std::vector<ScoreRecord> fixed = dev.records();
  for (auto &r : fixed) r.qualities = dev[0].qualities;
  ScoreSet fx(fixed);
  ScoreSet cal = ApplyQmf(fitted, fx);
  EXPECT_NEAR(MinDcf(cal, DcfCost{}).value, MinDcf(fx, DcfCost{}).value, 1e-12);
  EXPECT_NEAR(ComputeEer(cal), ComputeEer(fx), 1e-12);
  // w_q = 0 with w_s > 0 behaves the same on the original qualities.
  QmfModel no_q(Schema(), 0.3, 2.0, {0, 0, 0}, fitted.mean(), fitted.stddev());
  ScoreSet cal2 = ApplyQmf(no_q, dev);
  EXPECT_NEAR(MinDcf(cal2, DcfCost{}).value, MinDcf(dev, DcfCost{}).value, 1e-12);
}

TEST(ApplyQmf, DurationBiasIsRemoved) {
  ScoreSet dev = testing::QualityTrials(200, 3.0, 4);
  QmfModel m = FitQmf(dev, Schema());
  const DcfCost cost;
  EXPECT_LE(MinDcf(ApplyQmf(m, dev), cost).value, MinDcf(dev, cost).value);
}

TEST(QmfModel, JsonRoundTripIsExact) {
  QmfModel m = FitQmf(testing::QualityTrials(80, 1.0, 6), Schema());
  QmfModel back = QmfModel::FromJson(m.ToJson());
  EXPECT_EQ(m, back);
  const auto path = std::filesystem::temp_directory_path() / "spoofbench_qmf_test.json";
  SaveQmfModel(path, m);
  EXPECT_EQ(LoadQmfModel(path), m);
  std::filesystem::remove(path);
  EXPECT_THROW(QmfModel::FromJson("{\"format\": \"other\"}"), DataError);
  EXPECT_THROW(QmfModel::FromJson("not json"), DataError);
}

TEST(FitQmf, SasvExcludesSpoof) {
  std::vector<ScoreRecord> r;
  ScoreSet base = testing::QualityTrials(60, 0.0, 9);
  for (std::size_t i = 0; i < base.size(); ++i) {
    ScoreRecord x = base[i];
    x.label = i % 3 == 0 ? Label::kSpoofImpostor
                         : (*x.label == Label::kBonafide ? Label::kTarget : Label::kNonTarget);
    r.push_back(x);
  }
  ScoreSet sasv(r);
  QmfModel m = FitQmf(sasv, Schema());
  ScoreSet no_spoof = FilterRecords(sasv, [](const ScoreRecord &x) { return !IsSpoof(*x.label); });
  EXPECT_EQ(m, FitQmf(no_spoof, Schema()));
}

}  // namespace
}  // namespace spoofbench
