// include/spoofbench/augment.h

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

#ifndef SPOOFBENCH_AUGMENT_H_
#define SPOOFBENCH_AUGMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spoofbench/external-codec.h"
#include "spoofbench/g711.h"
#include "spoofbench/rawboost.h"
#include "spoofbench/rng.h"
#include "spoofbench/wave.h"

namespace spoofbench {

struct AddNoiseResult {
  Waveform wave;
  std::vector<double> gains;  // one per interval
  std::size_t clipped = 0;
};

/// Noise segments start at every multiple of interval_s.  Each segment is
/// read from a random offset into the noise (looping when short) and scaled
/// by g = sqrt(Px / (Pn * 10^(snr/10))), powers taken over the segment.
AddNoiseResult AddNoise(const Waveform &x, const Waveform &noise, double snr_db,
                        double interval_s, Rng &rng);

/// Convolution truncated to len(x), rescaled to the input's peak.
Waveform Reverb(const Waveform &x, const Waveform &rir);

/// Maps (speaker, factor) to an augmented speaker id.  Factor 1 keeps the
/// original id; other factors prefix it with "sp<factor>-".
class SpeakerRelabel {
 public:
  std::string Lookup(const std::string &speaker, double factor) const;
  std::size_t size() const { return ids_.size(); }
  const std::map<std::pair<std::string, double>, std::string> &ids() const {
    return ids_;
  }

 private:
  friend SpeakerRelabel RelabelSpeakers(
      const std::vector<std::pair<std::string, std::string>> &,
      const std::vector<double> &);
  std::map<std::pair<std::string, double>, std::string> ids_;
};

std::string SpeedPrefix(double factor);

/// `utt2spk` lists (utterance, speaker).  Throws DataError if two keys
/// would share an id.
SpeakerRelabel RelabelSpeakers(
    const std::vector<std::pair<std::string, std::string>> &utt2spk,
    const std::vector<double> &factors = {0.9, 1.0, 1.1});

std::vector<std::pair<std::string, std::string>> ReadUtt2Spk(
    const std::filesystem::path &path);

// Plan steps.
struct NoiseStep {
  std::string source;
  double snr_min = 0.0, snr_max = 15.0;  // drawn once per application
  double interval_s = 1.0;
};
struct ReverbStep {
  std::string source;
};
struct SpeedStep {
  double factor = 1.0;
};
struct TelephonyStep {
  int down_rate = 8000;
};
struct G711Step {
  G711Law law = G711Law::kMuLaw;
};
struct CodecStep {
  std::string encoder_id;
  std::string bitrate;
};
struct RawBoostStep {
  RawBoostMode mode = RawBoostMode::kCombined;
  RawBoostParams params;
};

using AugmentStep = std::variant<NoiseStep, ReverbStep, SpeedStep, TelephonyStep,
                                 G711Step, CodecStep, RawBoostStep>;

std::string StepKind(const AugmentStep &step);

struct AugmentPlan {
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::vector<AugmentStep> steps;
  /// Asset name -> manifest path (relative paths resolve against the plan).
  std::map<std::string, std::filesystem::path> assets;

  void Validate() const;
};

AugmentPlan ParsePlan(const std::string &json, const std::string &source = "<plan>",
                      const std::filesystem::path &base_dir = {});
AugmentPlan LoadPlan(const std::filesystem::path &path);

/// Named lists of waveforms read from manifests (one path per line,
/// relative to the manifest).
class AssetLibrary {
 public:
  void Add(const std::string &name, std::vector<Waveform> waves);
  void LoadManifest(const std::string &name, const std::filesystem::path &manifest);
  /// Loads every asset the plan declares.
  static AssetLibrary ForPlan(const AugmentPlan &plan);

  const std::vector<Waveform> &Get(const std::string &name) const;
  bool Has(const std::string &name) const { return assets_.count(name) != 0; }

 private:
  std::map<std::string, std::vector<Waveform>> assets_;
};

struct StepLog {
  std::string kind;
  std::string detail;
};

struct AugmentResult {
  Waveform wave;
  std::vector<StepLog> log;
  std::size_t clipped = 0;
};

/// Stream seed of the k-th step of a given kind (k counts from 0).
std::uint64_t StepSeed(std::uint64_t seed, const std::string &kind,
                       std::size_t ordinal);

/// Applies the steps in order.  Step i draws from its own stream
/// StepSeed(seed, kind_i, ordinal_i); outputs are clipped to [-1, 1] after
/// every step.
AugmentResult ApplyPlan(const Waveform &x, const AugmentPlan &plan,
                        std::uint64_t seed, const AssetLibrary &assets,
                        const CodecRegistry &codecs = {});

}  // namespace spoofbench

#endif  // SPOOFBENCH_AUGMENT_H_
