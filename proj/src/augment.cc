// src/augment.cc

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

#include "spoofbench/augment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spoofbench/error.h"
#include "spoofbench/fft.h"
#include "spoofbench/resample.h"

namespace spoofbench {

namespace {

using nlohmann::json;

constexpr std::size_t kDirectConvolutionMax = 64;

double Peak(const std::vector<double> &v) {
  double p = 0.0;
  for (double x : v) p = std::max(p, std::abs(x));
  return p;
}

void RejectUnknownKeys(const json &obj, std::initializer_list<const char *> known,
                       const std::string &where) {
  for (const auto &[key, _] : obj.items()) {
    bool ok = false;
    for (const char *k : known) ok |= key == k;
    if (!ok) throw UsageError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void ReadOptional(const json &obj, const char *key, T &out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void ReadRange(const json &obj, const char *lo, const char *hi, double &a,
               double &b) {
  ReadOptional(obj, lo, a);
  ReadOptional(obj, hi, b);
}

RawBoostParams ParseRawBoostParams(const json &step, const std::string &where) {
  RawBoostParams p;
  if (step.contains("convolutive")) {
    const auto &c = step.at("convolutive");
    RejectUnknownKeys(c, {"num_notches", "min_freq", "max_freq", "min_bw", "max_bw",
                          "min_depth_db", "max_depth_db", "min_taps", "max_taps"},
                      where + ".convolutive");
    auto &o = p.convolutive;
    ReadOptional(c, "num_notches", o.num_notches);
    ReadRange(c, "min_freq", "max_freq", o.min_freq, o.max_freq);
    ReadRange(c, "min_bw", "max_bw", o.min_bw, o.max_bw);
    ReadRange(c, "min_depth_db", "max_depth_db", o.min_depth_db, o.max_depth_db);
    ReadOptional(c, "min_taps", o.min_taps);
    ReadOptional(c, "max_taps", o.max_taps);
  }
  if (step.contains("impulsive")) {
    const auto &c = step.at("impulsive");
    RejectUnknownKeys(c, {"density", "gain"}, where + ".impulsive");
    ReadOptional(c, "density", p.impulsive.density);
    ReadOptional(c, "gain", p.impulsive.gain);
  }
  if (step.contains("stationary")) {
    const auto &c = step.at("stationary");
    RejectUnknownKeys(c, {"min_snr_db", "max_snr_db", "min_tilt", "max_tilt", "scale"},
                      where + ".stationary");
    auto &o = p.stationary;
    ReadRange(c, "min_snr_db", "max_snr_db", o.min_snr_db, o.max_snr_db);
    ReadRange(c, "min_tilt", "max_tilt", o.min_tilt, o.max_tilt);
    ReadOptional(c, "scale", o.scale);
  }
  return p;
}

AugmentStep ParseStep(const json &step, const std::string &where) {
  const std::string type = step.at("type").get<std::string>();
  if (type == "add_noise") {
    RejectUnknownKeys(step, {"type", "source", "snr_db", "interval_s"}, where);
    NoiseStep s;
    s.source = step.at("source").get<std::string>();
    if (step.contains("snr_db")) {
      const auto &snr = step.at("snr_db");
      if (snr.is_array()) {
        if (snr.size() != 2) throw UsageError(where + ": snr_db range needs [lo, hi]");
        s.snr_min = snr[0].get<double>();
        s.snr_max = snr[1].get<double>();
      } else {
        s.snr_min = s.snr_max = snr.get<double>();
      }
    }
    ReadOptional(step, "interval_s", s.interval_s);
    return s;
  }
  if (type == "reverb") {
    RejectUnknownKeys(step, {"type", "source"}, where);
    return ReverbStep{step.at("source").get<std::string>()};
  }
  if (type == "speed") {
    RejectUnknownKeys(step, {"type", "factor"}, where);
    return SpeedStep{step.at("factor").get<double>()};
  }
  if (type == "telephony") {
    RejectUnknownKeys(step, {"type", "down_rate"}, where);
    TelephonyStep s;
    ReadOptional(step, "down_rate", s.down_rate);
    return s;
  }
  if (type == "g711") {
    RejectUnknownKeys(step, {"type", "law"}, where);
    return G711Step{ParseG711Law(step.at("law").get<std::string>())};
  }
  if (type == "codec") {
    RejectUnknownKeys(step, {"type", "encoder_id", "bitrate"}, where);
    CodecStep s;
    s.encoder_id = step.at("encoder_id").get<std::string>();
    if (step.contains("bitrate")) {
      const auto &b = step.at("bitrate");
      s.bitrate = b.is_string() ? b.get<std::string>() : b.dump();
    }
    return s;
  }
  if (type == "rawboost") {
    RejectUnknownKeys(step, {"type", "mode", "convolutive", "impulsive", "stationary"},
                      where);
    RawBoostStep s;
    if (step.contains("mode"))
      s.mode = ParseRawBoostMode(step.at("mode").get<std::string>());
    s.params = ParseRawBoostParams(step, where);
    return s;
  }
  throw UsageError(where + ": unknown step type '" + type + "'");
}

std::string FormatDouble(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

AddNoiseResult AddNoise(const Waveform &x, const Waveform &noise, double snr_db,
                        double interval_s, Rng &rng) {
  if (x.sample_rate != noise.sample_rate)
    throw DataError("noise sample rate " + std::to_string(noise.sample_rate) +
                    " does not match input rate " + std::to_string(x.sample_rate));
  if (!std::isfinite(snr_db)) throw UsageError("SNR must be finite");
  if (!(interval_s > 0.0)) throw UsageError("noise interval must be positive");
  if (noise.empty() || MeanPower(noise.samples.data(),
                                 noise.samples.data() + noise.size()) == 0.0)
    throw DataError("noise source is silent");

  AddNoiseResult result{x, {}, 0};
  const std::size_t n = x.size();
  const std::size_t m = noise.size();
  const auto interval = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(interval_s * x.sample_rate)));
  const double scale = std::pow(10.0, snr_db / 10.0);
  std::vector<double> segment;
  for (std::size_t start = 0; start < n; start += interval) {
    const std::size_t len = std::min(interval, n - start);
    const std::size_t offset = rng.UniformInt(m);
    segment.resize(len);
    for (std::size_t i = 0; i < len; ++i) segment[i] = noise.samples[(offset + i) % m];
    const double px = MeanPower(x.samples.data() + start, x.samples.data() + start + len);
    const double pn = MeanPower(segment.data(), segment.data() + len);
    const double g = (px == 0.0 || pn == 0.0) ? 0.0 : std::sqrt(px / (pn * scale));
    result.gains.push_back(g);
    if (g == 0.0) continue;
    for (std::size_t i = 0; i < len; ++i)
      result.wave.samples[start + i] += g * segment[i];
  }
  result.clipped = ClipInPlace(result.wave);
  return result;
}

Waveform Reverb(const Waveform &x, const Waveform &rir) {
  if (x.sample_rate != rir.sample_rate)
    throw DataError("RIR sample rate " + std::to_string(rir.sample_rate) +
                    " does not match input rate " + std::to_string(x.sample_rate));
  if (rir.empty()) throw DataError("RIR is empty");
  Waveform out = x;
  const std::size_t n = x.size();
  if (n == 0) return out;
  if (rir.size() <= kDirectConvolutionMax) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const std::size_t taps = std::min(rir.size(), i + 1);
      for (std::size_t k = 0; k < taps; ++k) acc += rir.samples[k] * x.samples[i - k];
      out.samples[i] = acc;
    }
  } else {
    auto full = FftConvolve(x.samples, rir.samples);
    full.resize(n);
    out.samples = std::move(full);
  }
  const double in_peak = Peak(x.samples);
  const double out_peak = Peak(out.samples);
  if (out_peak > 0.0)
    for (double &v : out.samples) v *= in_peak / out_peak;
  return out;
}

std::string SpeedPrefix(double factor) { return "sp" + FormatDouble(factor) + "-"; }

std::string SpeakerRelabel::Lookup(const std::string &speaker, double factor) const {
  auto it = ids_.find({speaker, factor});
  if (it == ids_.end())
    throw DataError("no relabel entry for speaker " + speaker + " at factor " +
                    FormatDouble(factor));
  return it->second;
}

SpeakerRelabel RelabelSpeakers(
    const std::vector<std::pair<std::string, std::string>> &utt2spk,
    const std::vector<double> &factors) {
  std::set<std::string> speakers;
  for (const auto &[utt, spk] : utt2spk) speakers.insert(spk);
  SpeakerRelabel relabel;
  std::map<std::string, std::pair<std::string, double>> owner;
  for (double f : factors) {
    if (!(f > 0.0)) throw UsageError("speed factors must be positive");
    for (const auto &spk : speakers) {
      const std::string id = f == 1.0 ? spk : SpeedPrefix(f) + spk;
      auto [it, fresh] = owner.emplace(id, std::make_pair(spk, f));
      if (!fresh && it->second != std::make_pair(spk, f))
        throw DataError("augmented speaker id '" + id + "' collides with speaker " +
                        it->second.first);
      relabel.ids_[{spk, f}] = id;
    }
  }
  return relabel;
}

std::vector<std::pair<std::string, std::string>> ReadUtt2Spk(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<std::pair<std::string, std::string>> rows;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string utt, spk, extra;
    if (!(fields >> utt)) continue;
    if (utt[0] == '#') continue;
    if (!(fields >> spk) || (fields >> extra))
      throw DataError(path.string(), lineno, "expected 'utterance speaker'");
    if (!seen.insert(utt).second)
      throw DataError(path.string(), lineno, "duplicate utterance '" + utt + "'");
    rows.emplace_back(utt, spk);
  }
  return rows;
}

std::string StepKind(const AugmentStep &step) {
  static const char *kNames[] = {"add_noise", "reverb", "speed",   "telephony",
                                 "g711",      "codec",  "rawboost"};
  return kNames[step.index()];
}

void AugmentPlan::Validate() const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "step " + std::to_string(i) + " (" + StepKind(steps[i]) + ")";
    std::visit(
        [&](const auto &s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, NoiseStep>) {
            if (!(s.snr_min >= 0.0 && s.snr_min <= s.snr_max && s.snr_max <= 15.0))
              throw UsageError(where + ": snr_db must lie in [0, 15]");
            if (!(s.interval_s > 0.0))
              throw UsageError(where + ": interval_s must be positive");
            if (!assets.count(s.source))
              throw UsageError(where + ": undeclared asset '" + s.source + "'");
          } else if constexpr (std::is_same_v<T, ReverbStep>) {
            if (!assets.count(s.source))
              throw UsageError(where + ": undeclared asset '" + s.source + "'");
          } else if constexpr (std::is_same_v<T, SpeedStep>) {
            if (!(s.factor >= 0.5 && s.factor <= 2.0))
              throw UsageError(where + ": speed factor must be in [0.5, 2]");
          } else if constexpr (std::is_same_v<T, TelephonyStep>) {
            if (s.down_rate <= 0 || s.down_rate >= 16000)
              throw UsageError(where + ": down_rate must be in (0, 16000)");
          } else if constexpr (std::is_same_v<T, CodecStep>) {
            if (s.encoder_id.empty()) throw UsageError(where + ": empty encoder_id");
          } else if constexpr (std::is_same_v<T, RawBoostStep>) {
            s.params.Validate();
          }
        },
        steps[i]);
  }
}

AugmentPlan ParsePlan(const std::string &text, const std::string &source,
                      const std::filesystem::path &base_dir) {
  AugmentPlan plan;
  try {
    const json j = json::parse(text);
    RejectUnknownKeys(j, {"seed", "steps", "assets"}, source);
    if (j.contains("seed")) {
      plan.seed = j.at("seed").get<std::uint64_t>();
      plan.has_seed = true;
    }
    if (j.contains("assets"))
      for (const auto &[name, path] : j.at("assets").items()) {
        std::filesystem::path p = path.get<std::string>();
        plan.assets[name] = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
      }
    if (j.contains("steps")) {
      std::size_t i = 0;
      for (const auto &step : j.at("steps"))
        plan.steps.push_back(
            ParseStep(step, source + ": step " + std::to_string(i++)));
    }
  } catch (const json::exception &e) {
    throw UsageError(source + ": malformed plan: " + e.what());
  }
  plan.Validate();
  return plan;
}

AugmentPlan LoadPlan(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open plan '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParsePlan(text.str(), path.string(), path.parent_path());
}

void AssetLibrary::Add(const std::string &name, std::vector<Waveform> waves) {
  if (waves.empty()) throw DataError("asset '" + name + "' has no waveforms");
  assets_[name] = std::move(waves);
}

void AssetLibrary::LoadManifest(const std::string &name,
                                const std::filesystem::path &manifest) {
  std::ifstream in(manifest);
  if (!in) throw DataError("cannot open manifest '" + manifest.string() + "'");
  std::vector<Waveform> waves;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::filesystem::path p = line.substr(first, line.find_last_not_of(" \t") + 1 - first);
    if (p.is_relative()) p = manifest.parent_path() / p;
    waves.push_back(ReadWav(p));
  }
  Add(name, std::move(waves));
}

AssetLibrary AssetLibrary::ForPlan(const AugmentPlan &plan) {
  AssetLibrary lib;
  for (const auto &[name, path] : plan.assets) lib.LoadManifest(name, path);
  return lib;
}

const std::vector<Waveform> &AssetLibrary::Get(const std::string &name) const {
  auto it = assets_.find(name);
  if (it == assets_.end()) throw UsageError("unknown asset '" + name + "'");
  return it->second;
}

std::uint64_t StepSeed(std::uint64_t seed, const std::string &kind,
                       std::size_t ordinal) {
  return DeriveSeed(DeriveSeed(seed, kind), static_cast<std::uint64_t>(ordinal));
}

AugmentResult ApplyPlan(const Waveform &x, const AugmentPlan &plan,
                        std::uint64_t seed, const AssetLibrary &assets,
                        const CodecRegistry &codecs) {
  x.Validate();
  for (const auto &step : plan.steps)
    if (const auto *c = std::get_if<CodecStep>(&step)) codecs.CheckAvailable(c->encoder_id);

  AugmentResult result{x, {}, 0};
  std::map<std::string, std::size_t> ordinals;
  for (const auto &step : plan.steps) {
    const std::string kind = StepKind(step);
    Rng rng(StepSeed(seed, kind, ordinals[kind]++));
    std::string detail;
    Waveform &w = result.wave;
    std::visit(
        [&](const auto &s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, NoiseStep>) {
            const auto &pool = assets.Get(s.source);
            const Waveform &noise = pool[rng.UniformInt(pool.size())];
            const double snr =
                s.snr_min == s.snr_max ? s.snr_min : rng.Uniform(s.snr_min, s.snr_max);
            AddNoiseResult r = AddNoise(w, noise, snr, s.interval_s, rng);
            w = std::move(r.wave);
            result.clipped += r.clipped;
            detail = "snr_db=" + FormatDouble(snr) +
                     " segments=" + std::to_string(r.gains.size());
          } else if constexpr (std::is_same_v<T, ReverbStep>) {
            const auto &pool = assets.Get(s.source);
            const std::size_t pick = rng.UniformInt(pool.size());
            w = Reverb(w, pool[pick]);
            detail = "rir=" + std::to_string(pick);
          } else if constexpr (std::is_same_v<T, SpeedStep>) {
            w = SpeedPerturb(w, s.factor);
            detail = "factor=" + FormatDouble(s.factor);
          } else if constexpr (std::is_same_v<T, TelephonyStep>) {
            w = Telephony(w, s.down_rate);
            detail = "down_rate=" + std::to_string(s.down_rate);
          } else if constexpr (std::is_same_v<T, G711Step>) {
            w = G711RoundTrip(w, s.law);
            detail = s.law == G711Law::kALaw ? "law=a" : "law=mu";
          } else if constexpr (std::is_same_v<T, CodecStep>) {
            w = ExternalCodecRoundTrip(w, codecs, s.encoder_id, s.bitrate);
            detail = "encoder=" + s.encoder_id;
          } else if constexpr (std::is_same_v<T, RawBoostStep>) {
            RawBoostResult r = ApplyRawBoost(w, s.mode, s.params, rng);
            w = std::move(r.wave);
            detail = "mode=" + RawBoostModeName(s.mode) +
                     " impulses=" + std::to_string(r.report.impulses);
          }
        },
        step);
    result.clipped += ClipInPlace(result.wave);
    result.log.push_back({kind, detail});
  }
  return result;
}

}  // namespace spoofbench
