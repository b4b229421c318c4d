// tools/cmd-audio.cc

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

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "cli-common.h"
#include "spoofbench/augment.h"
#include "spoofbench/error.h"
#include "spoofbench/lfcc.h"
#include "spoofbench/parallel.h"

namespace spoofbench::cli {

namespace {

// ----------------------------------------------------------------- augment

struct AugmentOptions {
  std::vector<std::string> inputs;
  std::string list, plan, out;
  std::optional<std::uint64_t> seed;
  int workers = 0;
};

std::vector<std::string> ReadList(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open list '" + path + "'");
  std::vector<std::string> files;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    files.push_back(line);
  }
  return files;
}

int ExitCodeOf(const std::exception_ptr &e) {
  try {
    std::rethrow_exception(e);
  } catch (const UsageError &) {
    return 2;
  } catch (const DataError &) {
    return 3;
  } catch (const ExternalToolError &) {
    return 4;
  } catch (...) {
    return 1;
  }
}

std::string MessageOf(const std::exception_ptr &e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception &ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

int RunAugment(const AugmentOptions &o, const Globals &g) {
  if (!o.seed) throw UsageError("augment needs an explicit --seed");
  std::filesystem::path plan_path = o.plan;
  if (plan_path.empty()) {
    if (!g.config.augment_plan) throw UsageError("--plan FILE is required");
    plan_path = *g.config.augment_plan;
  }
  const AugmentPlan plan = LoadPlan(plan_path);
  const CodecRegistry codecs = CodecRegistry::FromEnvironment();
  for (const auto &step : plan.steps)
    if (const auto *c = std::get_if<CodecStep>(&step)) codecs.CheckAvailable(c->encoder_id);
  const AssetLibrary assets = AssetLibrary::ForPlan(plan);

  std::vector<std::string> inputs = o.inputs;
  if (!o.list.empty()) {
    const auto listed = ReadList(o.list);
    inputs.insert(inputs.end(), listed.begin(), listed.end());
  }
  if (inputs.empty()) throw UsageError("no input files");
  std::set<std::string> names;
  for (const auto &in : inputs)
    if (!names.insert(std::filesystem::path(in).filename().string()).second)
      throw UsageError("two inputs share the file name '" +
                       std::filesystem::path(in).filename().string() + "'");

  const auto out = RequireOut(o.out, g);
  const std::uint64_t seed = *o.seed;
  std::vector<std::string> logs(inputs.size());
  std::vector<std::exception_ptr> failures(inputs.size());
  ParallelFor(inputs.size(), ResolveWorkers(o.workers, g), [&](std::size_t i) {
    try {
      const Waveform x = ReadWav(std::filesystem::path(inputs[i]));
      const AugmentResult r =
          ApplyPlan(x, plan, DeriveSeed(seed, static_cast<std::uint64_t>(i)), assets,
                    codecs);
      const auto name = std::filesystem::path(inputs[i]).filename();
      WriteWav(out / name, r.wave);
      std::string line = name.string();
      for (const auto &step : r.log) line += "\t" + step.kind + " " + step.detail;
      line += "\tclipped=" + std::to_string(r.clipped);
      logs[i] = line;
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });

  std::ofstream log(out / "augment.log", std::ios::binary);
  int rc = 0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (failures[i]) {
      log << std::filesystem::path(inputs[i]).filename().string() << "\tFAILED\t"
          << MessageOf(failures[i]) << "\n";
      std::cerr << "spoofbench: " << inputs[i] << ": " << MessageOf(failures[i]) << "\n";
      rc = std::max(rc, ExitCodeOf(failures[i]));
    } else {
      log << logs[i] << "\n";
      ++ok;
    }
  }
  std::cout << "augmented " << ok << " of " << inputs.size() << " file(s)\n";
  return rc;
}

// -------------------------------------------------------------------- lfcc

struct LfccOptions {
  std::string input, out, projection;
  std::optional<double> align_hop;
  LfccConfig cfg;
  bool no_deltas = false;
};

int RunLfcc(LfccOptions o, const Globals &) {
  o.cfg.deltas = !o.no_deltas;
  const Waveform wave = ReadWav(std::filesystem::path(o.input));
  FeatureMatrix fm = ComputeLfcc(wave, o.cfg);
  if (o.align_hop || !o.projection.empty()) {
    std::optional<std::vector<std::vector<double>>> projection;
    if (!o.projection.empty()) projection = ReadMatrixFile(o.projection);
    fm = AlignFrames(fm, o.align_hop.value_or(fm.frame_hop), projection);
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw DataError("cannot write '" + o.out + "'");
  WriteFeatures(out, fm);
  std::cout << fm.frames << " frames x " << fm.dims << " dims\n";
  return 0;
}

// ----------------------------------------------------------------- relabel

struct RelabelOptions {
  std::string manifest, out;
  std::vector<double> factors = {0.9, 1.0, 1.1};
};

int RunRelabel(const RelabelOptions &o, const Globals &g) {
  const auto utt2spk = ReadUtt2Spk(o.manifest);
  const SpeakerRelabel relabel = RelabelSpeakers(utt2spk, o.factors);
  const auto out = RequireOut(o.out, g);
  std::ofstream f(out / "utt2spk", std::ios::binary);
  if (!f) throw DataError("cannot write '" + (out / "utt2spk").string() + "'");
  for (double factor : o.factors)
    for (const auto &[utt, spk] : utt2spk) {
      const std::string prefix = factor == 1.0 ? "" : SpeedPrefix(factor);
      f << prefix << utt << ' ' << relabel.Lookup(spk, factor) << '\n';
    }
  std::set<std::string> speakers;
  for (const auto &[utt, spk] : utt2spk) speakers.insert(spk);
  std::cout << "speakers " << speakers.size() << " -> " << relabel.size() << " ids\n";
  return 0;
}

}  // namespace

void RegisterAudioCommands(CLI::App &app, Globals &g, std::vector<Command> &out) {
  {
    auto o = std::make_shared<AugmentOptions>();
    auto *sub = app.add_subcommand("augment", "Apply a seeded augmentation plan to WAV files");
    sub->add_option("inputs", o->inputs, "Input WAV files")->check(CLI::ExistingFile);
    sub->add_option("--list", o->list, "File listing input WAVs, one per line")
        ->check(CLI::ExistingFile);
    sub->add_option("--plan", o->plan, "Augmentation plan JSON")->check(CLI::ExistingFile);
    sub->add_option("--seed", o->seed, "Random seed (required)");
    sub->add_option("--workers", o->workers, "Parallel files");
    sub->add_option("--out", o->out, "Output directory");
    out.push_back({sub, [o, &g] { return RunAugment(*o, g); }});
  }
  {
    auto o = std::make_shared<LfccOptions>();
    auto *sub = app.add_subcommand("lfcc", "Extract LFCC features from a mono WAV");
    sub->add_option("input", o->input, "Input WAV")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Output feature file (.f32)")->required();
    sub->add_option("--win-len", o->cfg.win_len, "Window length in seconds");
    sub->add_option("--hop", o->cfg.hop, "Frame shift in seconds");
    sub->add_option("--fft-size", o->cfg.fft_size, "FFT size (power of two)");
    sub->add_option("--n-filters", o->cfg.n_filters, "Number of linear filters");
    sub->add_option("--n-ceps", o->cfg.n_ceps, "Cepstra kept per frame");
    sub->add_option("--pre-emphasis", o->cfg.pre_emphasis, "Pre-emphasis coefficient");
    sub->add_flag("--no-deltas", o->no_deltas, "Static coefficients only");
    sub->add_option("--align-hop", o->align_hop,
                    "Mean-pool frames to this hop in seconds (e.g. 0.02)");
    sub->add_option("--projection", o->projection,
                    "Whitespace matrix (dims rows) applied after pooling")
        ->check(CLI::ExistingFile);
    out.push_back({sub, [o, &g] { return RunLfcc(*o, g); }});
  }
  {
    auto o = std::make_shared<RelabelOptions>();
    auto *sub = app.add_subcommand("relabel", "Speaker ids for speed-perturbed copies");
    sub->add_option("--manifest", o->manifest, "utt2spk file")
        ->required()->check(CLI::ExistingFile);
    sub->add_option("--factors", o->factors, "Speed factors")->delimiter(',');
    sub->add_option("--out", o->out, "Output directory");
    out.push_back({sub, [o, &g] { return RunRelabel(*o, g); }});
  }
}

}  // namespace spoofbench::cli
