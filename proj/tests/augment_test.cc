// tests/augment_test.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "spoofbench/augment.h"
#include "spoofbench/error.h"
#include "spoofbench/g711.h"
#include "spoofbench/resample.h"
#include "spoofbench/rng.h"
#include "testing/oracles.h"

namespace spoofbench {
namespace {

using testing::NaiveConvolve;
using testing::PcmHash;

Waveform Noise(std::size_t n, std::uint64_t seed, double sigma = 0.1) {
  Rng rng(seed);
  Waveform w;
  for (std::size_t i = 0; i < n; ++i) w.samples.push_back(sigma * rng.Normal());
  return w;
}

Waveform Speechy(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Waveform w;
  for (std::size_t i = 0; i < n; ++i)
    w.samples.push_back(0.25 * std::sin(i * 0.031) * std::sin(i * 0.0007) +
                        0.02 * rng.Normal());
  return w;
}

Waveform ConstantPower(std::size_t n, double amplitude) {
  Waveform w;
  for (std::size_t i = 0; i < n; ++i) w.samples.push_back(i % 2 ? amplitude : -amplitude);
  return w;
}

double Db(double ratio) { return 10.0 * std::log10(ratio); }

AssetLibrary Library() {
  AssetLibrary lib;
  lib.Add("noise", {Noise(20000, 11, 0.05), Noise(7000, 12, 0.2)});
  Waveform rir;
  rir.samples = {1.0, 0.0, 0.4, 0.0, 0.0, -0.2, 0.1, 0.05};
  Waveform long_rir = Noise(300, 13, 0.1);
  long_rir.samples[0] = 1.0;
  for (std::size_t i = 1; i < long_rir.size(); ++i)
    long_rir.samples[i] *= std::exp(-0.02 * static_cast<double>(i));
  lib.Add("rir", {rir, long_rir});
  return lib;
}

AugmentPlan Plan(std::vector<AugmentStep> steps) {
  AugmentPlan plan;
  plan.steps = std::move(steps);
  plan.assets["noise"] = "noise.lst";
  plan.assets["rir"] = "rir.lst";
  return plan;
}

TEST(AddNoise, ZeroDbWithEqualPowersUsesUnitGain) {
  Waveform x = ConstantPower(1600, 0.1);
  Waveform n = ConstantPower(1600, 0.1);
  Rng rng(1);
  AddNoiseResult r = AddNoise(x, n, 0.0, 0.1, rng);
  ASSERT_EQ(r.gains.size(), 1u);
  EXPECT_NEAR(r.gains[0], 1.0, 1e-12);
}

TEST(AddNoise, TenDbGain) {
  Waveform x = ConstantPower(1600, 0.1);
  Waveform n = ConstantPower(1600, 0.1);
  Rng rng(2);
  AddNoiseResult r = AddNoise(x, n, 10.0, 0.1, rng);
  ASSERT_EQ(r.gains.size(), 1u);
  EXPECT_NEAR(r.gains[0], std::pow(10.0, -0.5), 1e-12);
}

TEST(AddNoise, SilentInputIsUnchanged) {
  Waveform x;
  x.samples.assign(3200, 0.0);
  Rng rng(3);
  AddNoiseResult r = AddNoise(x, Noise(1000, 4), 5.0, 0.1, rng);
  for (double g : r.gains) EXPECT_EQ(g, 0.0);
  EXPECT_EQ(r.wave.samples, x.samples);
}

TEST(AddNoise, PerIntervalSnrMatchesTarget) {
  const Waveform x = Speechy(16000 * 3 + 517, 5);
  const Waveform n = Noise(5000, 6, 0.03);
  for (double snr : {0.0, 3.5, 7.0, 15.0}) {
    Rng rng(static_cast<std::uint64_t>(snr * 10) + 1);
    AddNoiseResult r = AddNoise(x, n, snr, 0.5, rng);
    ASSERT_EQ(r.clipped, 0u);
    const std::size_t interval = 8000;
    ASSERT_EQ(r.gains.size(), (x.size() + interval - 1) / interval);
    for (std::size_t start = 0; start < x.size(); start += interval) {
      const std::size_t len = std::min(interval, x.size() - start);
      double px = 0.0, pn = 0.0;
      for (std::size_t i = start; i < start + len; ++i) {
        px += x.samples[i] * x.samples[i];
        const double added = r.wave.samples[i] - x.samples[i];
        pn += added * added;
      }
      EXPECT_NEAR(Db(px / pn), snr, 0.01) << "interval at " << start;
    }
  }
}

TEST(AddNoise, RejectsMismatchedRateAndSilentNoise) {
  Waveform x = Speechy(1000, 7);
  Waveform n = Noise(1000, 8);
  n.sample_rate = 8000;
  Rng rng(9);
  EXPECT_THROW(AddNoise(x, n, 5.0, 1.0, rng), DataError);
  Waveform silent;
  silent.samples.assign(100, 0.0);
  EXPECT_THROW(AddNoise(x, silent, 5.0, 1.0, rng), DataError);
  EXPECT_THROW(AddNoise(x, Noise(100, 1), 5.0, 0.0, rng), UsageError);
}

TEST(Reverb, UnitImpulseIsIdentity) {
  Waveform x = Speechy(2000, 10);
  Waveform rir;
  rir.samples = {1.0};
  Waveform y = Reverb(x, rir);
  ASSERT_EQ(y.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y.samples[i], x.samples[i], 1e-15);
}

TEST(Reverb, DelayedImpulseShiftsAndRestoresPeak) {
  Waveform x = Speechy(500, 11);
  Waveform rir;
  rir.samples = {0.0, 0.0, 0.0, 0.5};
  Waveform y = Reverb(x, rir);
  ASSERT_EQ(y.size(), x.size());
  double peak_x = 0.0, peak_delayed = 0.0;
  for (double v : x.samples) peak_x = std::max(peak_x, std::abs(v));
  for (std::size_t i = 0; i + 3 < x.size(); ++i)
    peak_delayed = std::max(peak_delayed, std::abs(x.samples[i]));
  const double gain = peak_x / peak_delayed;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(y.samples[i], 0.0);
  for (std::size_t i = 3; i < x.size(); ++i)
    EXPECT_NEAR(y.samples[i], gain * x.samples[i - 3], 1e-12);
}

TEST(Reverb, MatchesNaiveConvolution) {
  for (std::size_t rir_len : {std::size_t{8}, std::size_t{200}}) {
    Waveform x = Noise(64 * 40, 12, 0.3);
    Waveform rir = Noise(rir_len, 13, 0.5);
    Waveform y = Reverb(x, rir);
    std::vector<double> ref = NaiveConvolve(x.samples, rir.samples);
    ref.resize(x.size());
    double peak_x = 0.0, peak_ref = 0.0;
    for (double v : x.samples) peak_x = std::max(peak_x, std::abs(v));
    for (double v : ref) peak_ref = std::max(peak_ref, std::abs(v));
    for (std::size_t i = 0; i < x.size(); ++i)
      ASSERT_NEAR(y.samples[i], ref[i] * peak_x / peak_ref, 1e-10) << rir_len << " " << i;
  }
}

TEST(Reverb, RejectsRateMismatchAndEmptyRir) {
  Waveform x = Speechy(100, 14);
  Waveform rir;
  EXPECT_THROW(Reverb(x, rir), DataError);
  rir.samples = {1.0};
  rir.sample_rate = 8000;
  EXPECT_THROW(Reverb(x, rir), DataError);
}

TEST(Relabel, TriplesSpeakerInventory) {
  std::vector<std::pair<std::string, std::string>> utt2spk;
  for (int s = 0; s < 5994; ++s)
    for (int u = 0; u < 2; ++u)
      utt2spk.emplace_back("id" + std::to_string(s) + "-" + std::to_string(u),
                           "id" + std::to_string(s));
  SpeakerRelabel r = RelabelSpeakers(utt2spk);
  EXPECT_EQ(r.size(), 17982u);
  std::set<std::string> ids;
  for (const auto &[key, id] : r.ids()) ids.insert(id);
  EXPECT_EQ(ids.size(), 17982u);
}

TEST(Relabel, SingleSpeaker) {
  SpeakerRelabel r = RelabelSpeakers({{"u1", "spk"}, {"u2", "spk"}});
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(r.Lookup("spk", 1.0), "spk");
  EXPECT_NE(r.Lookup("spk", 0.9), "spk");
  EXPECT_NE(r.Lookup("spk", 1.1), r.Lookup("spk", 0.9));
  EXPECT_THROW(r.Lookup("other", 1.0), DataError);
}

TEST(Relabel, DetectsCollision) {
  const std::string clash = SpeedPrefix(0.9) + "a";
  EXPECT_THROW(RelabelSpeakers({{"u1", "a"}, {"u2", clash}}), DataError);
}

TEST(Relabel, ReadsUtt2Spk) {
  const auto path = std::filesystem::temp_directory_path() / "spoofbench_utt2spk_test";
  {
    std::ofstream out(path);
    out << "# comment\nu1 s1\n\nu2 s2\r\n";
  }
  auto rows = ReadUtt2Spk(path);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].second, "s2");
  {
    std::ofstream out(path);
    out << "u1 s1\nu1 s2\n";
  }
  try {
    ReadUtt2Spk(path);
    FAIL() << "expected DataError";
  } catch (const DataError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::filesystem::remove(path);
}

TEST(ApplyPlan, EmptyPlanIsIdentity) {
  Waveform x = Speechy(4000, 15);
  AugmentResult r = ApplyPlan(x, Plan({}), 1, Library());
  EXPECT_EQ(r.wave.samples, x.samples);
  EXPECT_TRUE(r.log.empty());
}

TEST(ApplyPlan, DeterministicForFixedSeed) {
  Waveform x = Speechy(8000, 16);
  AssetLibrary lib = Library();
  AugmentPlan plan = Plan({NoiseStep{"noise", 0.0, 15.0, 0.25}, ReverbStep{"rir"},
                           RawBoostStep{}, G711Step{G711Law::kALaw}});
  AugmentResult a = ApplyPlan(x, plan, 42, lib);
  AugmentResult b = ApplyPlan(x, plan, 42, lib);
  EXPECT_EQ(a.wave.samples, b.wave.samples);
  AugmentResult c = ApplyPlan(x, plan, 43, lib);
  EXPECT_NE(a.wave.samples, c.wave.samples);
  ASSERT_EQ(a.log.size(), 4u);
  EXPECT_EQ(a.log[0].kind, "add_noise");
  EXPECT_EQ(a.log[3].kind, "g711");
}

TEST(ApplyPlan, UnitSpeedIsTransparent) {
  Waveform x = Speechy(4000, 17);
  AugmentResult a =
      ApplyPlan(x, Plan({SpeedStep{1.0}, G711Step{G711Law::kMuLaw}}), 3, Library());
  AugmentResult b = ApplyPlan(x, Plan({G711Step{G711Law::kMuLaw}}), 3, Library());
  EXPECT_EQ(a.wave.samples, b.wave.samples);
}

TEST(ApplyPlan, InsertedStepDoesNotShiftOtherKinds) {
  Waveform x = Speechy(6000, 18);
  AssetLibrary lib = Library();
  AugmentResult a =
      ApplyPlan(x, Plan({NoiseStep{"noise", 5.0, 5.0, 1.0}, RawBoostStep{}}), 9, lib);
  AugmentResult b = ApplyPlan(
      x, Plan({NoiseStep{"noise", 5.0, 5.0, 1.0}, SpeedStep{1.0}, RawBoostStep{}}), 9, lib);
  EXPECT_EQ(a.wave.samples, b.wave.samples);
}

TEST(ApplyPlan, OutputsAreFiniteAndBounded) {
  AssetLibrary lib = Library();
  AugmentPlan plan =
      Plan({NoiseStep{"noise", 0.0, 0.0, 0.1}, ReverbStep{"rir"}, SpeedStep{1.1},
            TelephonyStep{}, RawBoostStep{}, G711Step{G711Law::kMuLaw}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Waveform x = Noise(5000, 100 + seed, 0.6);
    for (double &v : x.samples) v = std::clamp(v, -1.0, 1.0);
    AugmentResult r = ApplyPlan(x, plan, seed, lib);
    for (double v : r.wave.samples) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_LE(std::abs(v), 1.0);
    }
  }
}

TEST(ApplyPlan, GoldenHashes) {
  AssetLibrary lib = Library();
  const std::vector<AugmentPlan> plans = {
      Plan({RawBoostStep{}}),
      Plan({NoiseStep{"noise", 0.0, 15.0, 0.5}, ReverbStep{"rir"}}),
      Plan({SpeedStep{0.9}, TelephonyStep{}}),
      Plan({G711Step{G711Law::kALaw}}),
      Plan({ReverbStep{"rir"}, NoiseStep{"noise", 2.0, 8.0, 0.25}, SpeedStep{1.1},
            RawBoostStep{RawBoostMode::kStationary, {}}, G711Step{G711Law::kMuLaw}}),
  };
  const std::uint64_t expected[] = {8974504741427343955ULL, 10851161691845748640ULL,
                                    14877752133157012039ULL, 12925737467372770880ULL,
                                    7889030348947905876ULL};
  for (std::size_t i = 0; i < plans.size(); ++i) {
    Waveform x = Speechy(6400, 200 + i);
    const std::uint64_t h = PcmHash(ApplyPlan(x, plans[i], 1000 + i, lib).wave.samples);
    EXPECT_EQ(h, expected[i]) << "fixture " << i << " hash " << h;
  }
}

TEST(ParsePlan, ReadsStepsAndResolvesAssets) {
  const std::string text = R"({
    "seed": 7,
    "assets": {"musan": "lists/musan.lst", "abs": "/data/rir.lst"},
    "steps": [
      {"type": "add_noise", "source": "musan", "snr_db": [0, 15], "interval_s": 0.5},
      {"type": "reverb", "source": "abs"},
      {"type": "speed", "factor": 0.9},
      {"type": "telephony"},
      {"type": "g711", "law": "a"},
      {"type": "codec", "encoder_id": "amr", "bitrate": 12200},
      {"type": "rawboost", "mode": "impulsive", "impulsive": {"density": 0.01}}
    ]})";
  AugmentPlan plan = ParsePlan(text, "plan.json", "/base");
  EXPECT_TRUE(plan.has_seed);
  EXPECT_EQ(plan.seed, 7u);
  ASSERT_EQ(plan.steps.size(), 7u);
  EXPECT_EQ(plan.assets.at("musan"), std::filesystem::path("/base/lists/musan.lst"));
  EXPECT_EQ(plan.assets.at("abs"), std::filesystem::path("/data/rir.lst"));
  const auto &noise = std::get<NoiseStep>(plan.steps[0]);
  EXPECT_EQ(noise.snr_max, 15.0);
  EXPECT_EQ(noise.interval_s, 0.5);
  EXPECT_EQ(std::get<G711Step>(plan.steps[4]).law, G711Law::kALaw);
  EXPECT_EQ(std::get<CodecStep>(plan.steps[5]).bitrate, "12200");
  EXPECT_EQ(std::get<RawBoostStep>(plan.steps[6]).params.impulsive.density, 0.01);
}

TEST(ParsePlan, RejectsInvalidPlans) {
  const char *bad[] = {
      R"({"steps": [{"type": "speed", "factor": 3.0}]})",
      R"({"steps": [{"type": "speed", "factor": 0.9, "extra": 1}]})",
      R"({"steps": [{"type": "echo"}]})",
      R"({"steps": [{"type": "add_noise", "source": "missing"}]})",
      R"({"assets": {"n": "n.lst"}, "steps": [{"type": "add_noise", "source": "n", "snr_db": 20}]})",
      R"({"steps": [{"type": "g711", "law": "x"}]})",
      R"({"steps": [{"type": "telephony", "down_rate": 16000}]})",
      R"({"seed": 1, "unknown": true})",
      R"({"steps": [)",
  };
  for (const char *text : bad) EXPECT_THROW(ParsePlan(text), UsageError) << text;
}

TEST(StepSeed, DependsOnKindAndOrdinal) {
  EXPECT_EQ(StepSeed(1, "speed", 0), StepSeed(1, "speed", 0));
  EXPECT_NE(StepSeed(1, "speed", 0), StepSeed(1, "speed", 1));
  EXPECT_NE(StepSeed(1, "speed", 0), StepSeed(1, "reverb", 0));
  EXPECT_NE(StepSeed(1, "speed", 0), StepSeed(2, "speed", 0));
}

TEST(AssetLibrary, LoadsManifestRelativeToItsDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "spoofbench_assets_test";
  std::filesystem::create_directories(dir / "wav");
  WriteWav(dir / "wav" / "a.wav", Noise(100, 1));
  {
    std::ofstream out(dir / "list.lst");
    out << "# noise\nwav/a.wav\n\n";
  }
  AssetLibrary lib;
  lib.LoadManifest("n", dir / "list.lst");
  EXPECT_TRUE(lib.Has("n"));
  EXPECT_EQ(lib.Get("n").size(), 1u);
  EXPECT_THROW(lib.Get("m"), UsageError);
  EXPECT_THROW(lib.LoadManifest("x", dir / "none.lst"), DataError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace spoofbench
