// tests/cli_test.cc

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
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "spoofbench/metrics.h"
#include "spoofbench/score-io.h"
#include "spoofbench/wave.h"
#include "testing/cli-runner.h"

namespace spoofbench {
namespace {

using testing::CliRun;
using testing::ReadFile;
using testing::RunCli;
using testing::ScratchDir;

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<double> CsvRow(const std::string &line) {
  std::vector<double> row;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) row.push_back(std::stod(cell));
  return row;
}

// Five bonafide trials scoring above five spoofs.
void WritePerfectFixture(const ScratchDir &dir) {
  std::string scores, key;
  for (int i = 1; i <= 5; ++i) {
    scores += "B" + std::to_string(i) + "\t" + std::to_string(i) + "\n";
    scores += "S" + std::to_string(i) + "\t-" + std::to_string(i) + "\n";
    key += "B" + std::to_string(i) + "\tbonafide\t-\n";
    key += "S" + std::to_string(i) + "\tspoof\tA0" + std::to_string(i % 2 + 1) + "\n";
  }
  dir.Write("sys.scores", scores);
  dir.Write("sys.key", key);
}

Waveform Tone(std::size_t n) {
  Waveform w;
  for (std::size_t i = 0; i < n; ++i) w.samples.push_back(0.3 * std::sin(0.07 * i));
  return w;
}

TEST(Cli, HelpForEverySubcommand) {
  ScratchDir dir("cli-help");
  const CliRun top = RunCli({"--help"}, dir.path());
  EXPECT_EQ(top.code, 0);
  for (const char *sub : {"evaluate", "det-curve", "synth-scores", "fuse", "calibrate",
                          "cascade", "augment", "lfcc", "relabel"}) {
    EXPECT_NE(top.out.find(sub), std::string::npos) << sub;
    const CliRun r = RunCli({sub, "--help"}, dir.path());
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("--"), std::string::npos) << sub;
  }
  EXPECT_TRUE(dir.Files().empty());
}

TEST(Cli, UsageErrorsExitTwo) {
  ScratchDir dir("cli-usage");
  WritePerfectFixture(dir);
  EXPECT_EQ(RunCli({}, dir.path()).code, 2);
  EXPECT_EQ(RunCli({"bogus"}, dir.path()).code, 2);
  EXPECT_EQ(RunCli({"evaluate", "sys.scores"}, dir.path()).code, 2);
  EXPECT_EQ(RunCli({"evaluate", "sys.scores", "--key", "sys.key", "--frobnicate"},
                   dir.path()).code,
            2);
  EXPECT_EQ(RunCli({"synth-scores", "--classes", "bonafide=5:1", "--out", "o"},
                   dir.path()).code,
            2);
  EXPECT_EQ(RunCli({"fuse", "sys.scores", "sys.scores", "--optimize"}, dir.path()).code, 2);
  dir.Write("bad_cost.json", R"({"dcf": {"p_target": 2}})");
  EXPECT_EQ(RunCli({"evaluate", "sys.scores", "--key", "sys.key", "--cost-model",
                    "bad_cost.json"},
                   dir.path()).code,
            2);
}

TEST(Cli, DataErrorsExitThreeWithFileAndLine) {
  ScratchDir dir("cli-data");
  WritePerfectFixture(dir);
  dir.Write("bad.scores", "B1\t1\nS1\t-1\nB2\tnot-a-number\n");
  const CliRun r = RunCli({"evaluate", "bad.scores", "--key", "sys.key"}, dir.path());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("bad.scores:3"), std::string::npos) << r.err;
}

TEST(Cli, EvaluatePerfectSystem) {
  ScratchDir dir("cli-eval");
  WritePerfectFixture(dir);
  const CliRun r =
      RunCli({"evaluate", "sys.scores", "--key", "sys.key", "--per-attack", "--out", "rep"},
             dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("EER 0.0000, minDCF 0.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("A01"), std::string::npos);
  const auto csv = Lines(ReadFile(dir / "rep/evaluate.csv"));
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0], "scope,num_spoof,eer,min_dcf,threshold");
  EXPECT_EQ(csv[1].rfind("pooled,5,0,0,", 0), 0u) << csv[1];
  EXPECT_EQ(Lines(ReadFile(dir / "rep/per_attack.csv")).size(), 4u);
}

TEST(Cli, EvaluateDispatchesOnSasvKey) {
  ScratchDir dir("cli-sasv");
  dir.Write("asv.scores", "a\t3\nb\t2\nc\t-1\nd\t0.5\ne\t-2\nf\t1\n");
  dir.Write("asv.key",
            "a\ttarget\t-\nb\ttarget\t-\nc\tnontarget\t-\nd\tspoof\tA01\n"
            "e\tnontarget\t-\nf\tspoof\tA02\n");
  const CliRun r = RunCli({"evaluate", "asv.scores", "--key", "asv.key"}, dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("min a-DCF 0.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("target 2, nontarget 2, spoof 2"), std::string::npos) << r.out;
}

TEST(Cli, CostModelFlagOverridesConfig) {
  ScratchDir dir("cli-config");
  dir.Write("s.scores", "a\t1\nb\t0\ne\t2\nc\t0.5\nd\t-1\n");
  dir.Write("s.key",
            "a\tbonafide\t-\nb\tbonafide\t-\ne\tbonafide\t-\nc\tspoof\tA01\n"
            "d\tspoof\tA01\n");
  dir.Write("run.json", R"({"cost_model": {"dcf": {"c_miss": 1, "c_fa": 1, "p_target": 0.5}}})");
  dir.Write("default.json", "{}");
  const CliRun plain = RunCli({"evaluate", "s.scores", "--key", "s.key"}, dir.path());
  const CliRun config =
      RunCli({"--config", "run.json", "evaluate", "s.scores", "--key", "s.key"}, dir.path());
  const CliRun both = RunCli({"--config", "run.json", "evaluate", "s.scores", "--key",
                              "s.key", "--cost-model", "default.json"},
                             dir.path());
  ASSERT_EQ(plain.code, 0);
  ASSERT_EQ(config.code, 0);
  ASSERT_EQ(both.code, 0);
  EXPECT_NE(plain.out, config.out);
  EXPECT_EQ(plain.out, both.out);
}

TEST(Cli, FuseWithGivenWeights) {
  ScratchDir dir("cli-fuse");
  dir.Write("a.scores", "t1\t1\nt2\t2\nt3\t4\n");
  dir.Write("b.scores", "t1\t4\nt2\t8\nt3\t0\n");
  dir.Write("w.txt", "a\t0.25\nb\t0.75\n");
  const CliRun r = RunCli({"fuse", "--weights", "w.txt", "a.scores", "b.scores"}, dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "t1\t3.25\nt2\t6.5\nt3\t1\n");
  dir.Write("w_bad.txt", "a\t0.5\nc\t0.5\n");
  EXPECT_EQ(RunCli({"fuse", "--weights", "w_bad.txt", "a.scores", "b.scores"}, dir.path())
                .code,
            3);
}

TEST(Cli, CascadeMatchesHandComputedOutputs) {
  ScratchDir dir("cli-cascade");
  std::string gate, scorer, expected;
  for (int i = 0; i < 20; ++i) {
    const std::string id = "t" + std::to_string(i);
    std::ostringstream g, s;
    g << (i - 10) / 4.0;
    s << i * 0.5;
    gate += id + "\t" + g.str() + "\n";
    scorer += id + "\t" + s.str() + "\n";
  }
  // The gate opens from trial 10 onward (gate score 0 meets the threshold).
  const char *hand[] = {"-7", "-7", "-7",  "-7",  "-7",  "-7", "-7",
                        "-7", "-7", "-7",  "5",   "5.5", "6",  "6.5",
                        "7",  "7.5", "8",  "8.5", "9",   "9.5"};
  for (int i = 0; i < 20; ++i) expected += "t" + std::to_string(i) + "\t" + hand[i] + "\n";
  dir.Write("asv.scores", gate);
  dir.Write("cm.scores", scorer);
  const CliRun r = RunCli({"cascade", "--gate", "asv.scores", "--scorer", "cm.scores",
                           "--gate-threshold", "0", "--floor", "-7"},
                          dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 21u);
  std::string body;
  for (std::size_t i = 1; i < lines.size(); ++i) body += lines[i] + "\n";
  EXPECT_EQ(body, expected);

  const CliRun to_dir = RunCli({"cascade", "--gate", "asv.scores", "--scorer", "cm.scores",
                                "--gate-threshold", "0", "--floor", "-7", "--out", "o"},
                               dir.path());
  ASSERT_EQ(to_dir.code, 0);
  EXPECT_EQ(ReadFile(dir / "o/sasv.scores"), expected);
  EXPECT_EQ(RunCli({"cascade", "--gate", "asv.scores", "--scorer", "cm.scores"}, dir.path())
                .code,
            2);
}

TEST(Cli, DetCurveRowsReproduceCurve) {
  ScratchDir dir("cli-det");
  std::vector<ScoreRecord> records = {
      {"a", 0.3, Label::kBonafide, {}, {}}, {"b", 1.7, Label::kBonafide, {}, {}},
      {"c", 0.3, Label::kSpoof, {}, {}},    {"d", -2.1, Label::kSpoof, {}, {}},
      {"e", 0.9, Label::kBonafide, {}, {}}, {"f", 1.1, Label::kSpoof, {}, {}},
      {"g", 1e-3, Label::kSpoof, {}, {}}};
  std::string scores, key;
  for (const auto &r : records) {
    scores += r.trial + "\t" + FormatReal(r.score) + "\n";
    key += r.trial + (*r.label == Label::kBonafide ? "\tbonafide\t-\n" : "\tspoof\tA01\n");
  }
  dir.Write("s.scores", scores);
  dir.Write("s.key", key);
  const DetCurve curve = ComputeDetCurve(ScoreSet(records));
  const CliRun r = RunCli({"det-curve", "s.scores", "--key", "s.key"}, dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), curve.points.size() + 1);
  EXPECT_EQ(lines[0], "tau,p_miss,p_fa");
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto row = CsvRow(lines[i + 1]);
    ASSERT_EQ(row.size(), 3u);
    EXPECT_EQ(row[0], curve.points[i].threshold);
    EXPECT_EQ(row[1], curve.points[i].p_miss);
    EXPECT_EQ(row[2], curve.points[i].p_fa);
  }
  ASSERT_EQ(RunCli({"det-curve", "s.scores", "--key", "s.key", "--out", "plot"}, dir.path())
                .code,
            0);
  EXPECT_EQ(ReadFile(dir / "plot/det.csv"), r.out);
  EXPECT_NE(ReadFile(dir / "plot/det.svg").find("<svg"), std::string::npos);
}

TEST(Cli, SynthScoresIsDeterministic) {
  ScratchDir dir("cli-synth");
  const std::vector<std::string> args = {"synth-scores", "--classes",
                                         "bonafide=50:2,spoof=50:-2", "--seed", "7",
                                         "--attacks", "A01,A02", "--qualities"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", "a"});
  b.insert(b.end(), {"--out", "b"});
  ASSERT_EQ(RunCli(a, dir.path()).code, 0);
  ASSERT_EQ(RunCli(b, dir.path()).code, 0);
  for (const char *f : {"system.scores", "system.key", "system.quality"}) {
    EXPECT_FALSE(ReadFile(dir / (std::string("a/") + f)).empty());
    EXPECT_EQ(ReadFile(dir / (std::string("a/") + f)), ReadFile(dir / (std::string("b/") + f)));
  }
}

TEST(Cli, AugmentIsDeterministicAndStaysInsideOut) {
  ScratchDir dir("cli-augment");
  std::filesystem::create_directories(dir / "in");
  std::filesystem::create_directories(dir / "assets");
  WriteWav(dir / "in/a.wav", Tone(8000));
  WriteWav(dir / "in/b.wav", Tone(12000));
  WriteWav(dir / "assets/n1.wav", Tone(3000));
  dir.Write("assets/noise.lst", "n1.wav\n");
  dir.Write("plan.json", R"({"assets": {"noise": "assets/noise.lst"}, "steps": [
      {"type": "add_noise", "source": "noise", "snr_db": [5, 10]},
      {"type": "speed", "factor": 1.1},
      {"type": "rawboost"},
      {"type": "g711", "law": "mu"}]})");
  const auto before = dir.Files();
  const std::vector<std::string> base = {"augment", "in/a.wav", "in/b.wav",
                                         "--plan", "plan.json", "--seed", "3"};
  auto one = base, two = base;
  one.insert(one.end(), {"--out", "o1", "--workers", "1"});
  two.insert(two.end(), {"--out", "o2", "--workers", "2"});
  const CliRun r1 = RunCli(one, dir.path());
  const CliRun r2 = RunCli(two, dir.path());
  ASSERT_EQ(r1.code, 0) << r1.err;
  ASSERT_EQ(r2.code, 0) << r2.err;
  for (const char *f : {"a.wav", "b.wav", "augment.log"})
    EXPECT_EQ(ReadFile(dir / (std::string("o1/") + f)), ReadFile(dir / (std::string("o2/") + f)))
        << f;
  std::vector<std::string> expected = before;
  for (const char *f : {"o1/a.wav", "o1/augment.log", "o1/b.wav", "o2/a.wav",
                        "o2/augment.log", "o2/b.wav"})
    expected.push_back(f);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(dir.Files(), expected);

  auto no_seed = base;
  no_seed.erase(no_seed.end() - 2, no_seed.end());
  no_seed.insert(no_seed.end(), {"--out", "o3"});
  EXPECT_EQ(RunCli(no_seed, dir.path()).code, 2);
}

TEST(Cli, MissingEncoderExitsFour) {
  ScratchDir dir("cli-codec");
  WriteWav(dir / "a.wav", Tone(1000));
  dir.Write("plan.json", R"({"steps": [{"type": "codec", "encoder_id": "amr"}]})");
  const CliRun undeclared = RunCli(
      {"augment", "a.wav", "--plan", "plan.json", "--seed", "1", "--out", "o"}, dir.path(),
      "env -u SPOOFBENCH_ENCODERS");
  EXPECT_EQ(undeclared.code, 4);
  EXPECT_NE(undeclared.err.find("amr"), std::string::npos);
  dir.Write("enc.json", R"({"encoders": {"amr": {
      "encode": "spoofbench-missing-amr-enc {in} {out}", "decode": "cp {in} {out}"}}})");
  const CliRun missing = RunCli(
      {"augment", "a.wav", "--plan", "plan.json", "--seed", "1", "--out", "o"}, dir.path(),
      "SPOOFBENCH_ENCODERS=enc.json");
  EXPECT_EQ(missing.code, 4);
  EXPECT_NE(missing.err.find("spoofbench-missing-amr-enc"), std::string::npos) << missing.err;
  dir.Write("copy.json", R"({"encoders": {"amr": {
      "encode": "cp {in} {out}", "decode": "cp {in} {out}"}}})");
  EXPECT_EQ(RunCli({"augment", "a.wav", "--plan", "plan.json", "--seed", "1", "--out", "o"},
                   dir.path(), "SPOOFBENCH_ENCODERS=copy.json")
                .code,
            0);
}

TEST(Cli, LfccShape) {
  ScratchDir dir("cli-lfcc");
  WriteWav(dir / "a.wav", Tone(16000));
  const CliRun r = RunCli({"lfcc", "a.wav", "--out", "a.f32"}, dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "99 frames x 60 dims\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "a.f32"));
}

TEST(Cli, RelabelTriplesSpeakers) {
  ScratchDir dir("cli-relabel");
  dir.Write("utt2spk", "u1 s1\nu2 s1\nu3 s2\n");
  const CliRun r = RunCli({"relabel", "--manifest", "utt2spk", "--out", "o"}, dir.path());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "speakers 2 -> 6 ids\n");
  EXPECT_EQ(Lines(ReadFile(dir / "o/utt2spk")).size(), 9u);
}

}  // namespace
}  // namespace spoofbench
