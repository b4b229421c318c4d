// src/rawboost.cc

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

#include "spoofbench/rawboost.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "spoofbench/error.h"
#include "spoofbench/fft.h"

namespace spoofbench {

namespace {

constexpr std::size_t kDesignGrid = 4096;

void CheckRange(double lo, double hi, const char *what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw UsageError(std::string("rawboost: invalid range for ") + what);
}

}  // namespace

RawBoostMode ParseRawBoostMode(const std::string &name) {
  if (name == "convolutive") return RawBoostMode::kConvolutive;
  if (name == "impulsive") return RawBoostMode::kImpulsive;
  if (name == "stationary") return RawBoostMode::kStationary;
  if (name == "combined") return RawBoostMode::kCombined;
  throw UsageError("unknown rawboost mode '" + name + "'");
}

std::string RawBoostModeName(RawBoostMode mode) {
  switch (mode) {
    case RawBoostMode::kConvolutive: return "convolutive";
    case RawBoostMode::kImpulsive: return "impulsive";
    case RawBoostMode::kStationary: return "stationary";
    case RawBoostMode::kCombined: return "combined";
  }
  return "?";
}

void RawBoostParams::Validate() const {
  const auto &c = convolutive;
  if (c.num_notches < 0) throw UsageError("rawboost: negative notch count");
  CheckRange(c.min_freq, c.max_freq, "notch frequency");
  CheckRange(c.min_bw, c.max_bw, "notch bandwidth");
  CheckRange(c.min_depth_db, c.max_depth_db, "notch depth");
  if (c.min_freq < 0.0 || c.min_bw < 0.0 || c.min_depth_db < 0.0)
    throw UsageError("rawboost: notch parameters must be nonnegative");
  if (c.min_taps < 1 || c.min_taps > c.max_taps)
    throw UsageError("rawboost: invalid filter length range");
  if (!(impulsive.density >= 0.0 && impulsive.density <= 1.0))
    throw UsageError("rawboost: impulse density must be in [0, 1]");
  if (!(impulsive.gain >= 0.0) || !std::isfinite(impulsive.gain))
    throw UsageError("rawboost: impulse gain must be nonnegative");
  CheckRange(stationary.min_snr_db, stationary.max_snr_db, "SNR");
  CheckRange(stationary.min_tilt, stationary.max_tilt, "spectral tilt");
  if (!(stationary.scale >= 0.0) || !std::isfinite(stationary.scale))
    throw UsageError("rawboost: noise scale must be nonnegative");
}

RawBoostResult RawBoostConvolutive(const Waveform &x, const ConvolutiveParams &p,
                                   Rng &rng) {
  RawBoostResult result{x, {}};
  if (p.num_notches == 0 || p.max_depth_db == 0.0 || x.empty()) return result;

  const double nyquist = x.sample_rate / 2.0;
  std::vector<double> amplitude(kDesignGrid / 2 + 1, 1.0);
  for (int k = 0; k < p.num_notches; ++k) {
    const double center = rng.Uniform(p.min_freq, std::min(p.max_freq, nyquist));
    const double width = rng.Uniform(p.min_bw, p.max_bw);
    const double depth = rng.Uniform(p.min_depth_db, p.max_depth_db);
    const double floor = std::pow(10.0, -depth / 20.0);
    for (std::size_t b = 0; b < amplitude.size(); ++b) {
      const double f = nyquist * b / (kDesignGrid / 2);
      if (std::abs(f - center) <= width / 2) amplitude[b] = std::min(amplitude[b], floor);
    }
  }
  int taps = p.min_taps + static_cast<int>(rng.UniformInt(
                              static_cast<std::uint64_t>(p.max_taps - p.min_taps + 1)));
  if (taps % 2 == 0) ++taps;
  const int half = taps / 2;

  // Window method: truncate the zero-phase impulse response of the sampled
  // amplitude and apply a Hann window.
  std::vector<double> h(taps);
  for (int n = -half; n <= half; ++n) {
    double acc = amplitude[0];
    for (std::size_t b = 1; b < kDesignGrid / 2; ++b)
      acc += 2.0 * amplitude[b] * std::cos(2.0 * std::numbers::pi * b * n / kDesignGrid);
    acc += amplitude[kDesignGrid / 2] * std::cos(std::numbers::pi * n);
    const double window = 0.5 + 0.5 * std::cos(std::numbers::pi * n / (half + 1));
    h[n + half] = acc / kDesignGrid * window;
  }

  const auto full = FftConvolve(x.samples, h);
  for (std::size_t i = 0; i < x.size(); ++i) result.wave.samples[i] = full[i + half];
  result.report.filter = std::move(h);
  return result;
}

RawBoostResult RawBoostImpulsive(const Waveform &x, const ImpulsiveParams &p,
                                 Rng &rng) {
  RawBoostResult result{x, {}};
  if (p.density == 0.0 || p.gain == 0.0) return result;
  for (double &s : result.wave.samples) {
    if (!rng.Bernoulli(p.density)) continue;
    s += p.gain * s * rng.Uniform(-1.0, 1.0);
    ++result.report.impulses;
  }
  return result;
}

RawBoostResult RawBoostStationary(const Waveform &x, const StationaryParams &p,
                                  Rng &rng) {
  RawBoostResult result{x, {}};
  if (p.scale == 0.0 || x.empty()) return result;
  const double snr = rng.Uniform(p.min_snr_db, p.max_snr_db);
  const double tilt = rng.Uniform(p.min_tilt, p.max_tilt);
  result.report.snr_db = snr;
  result.report.tilt = tilt;

  const std::size_t n = x.size();
  const std::size_t size = NextPowerOfTwo(n);
  std::vector<std::complex<double>> spec(size);
  for (std::size_t i = 0; i < n; ++i) spec[i] = rng.Normal();
  Fft(spec);
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t bin = std::min(k, size - k);
    const double f = std::max(1.0, static_cast<double>(bin) * x.sample_rate / size);
    spec[k] *= std::pow(f / 1000.0, tilt);
  }
  Fft(spec, true);
  std::vector<double> noise(n);
  for (std::size_t i = 0; i < n; ++i) noise[i] = spec[i].real();

  const double px = MeanPower(x.samples.data(), x.samples.data() + n);
  const double pn = MeanPower(noise.data(), noise.data() + n);
  if (px == 0.0 || pn == 0.0) return result;
  const double gain = p.scale * std::sqrt(px / (pn * std::pow(10.0, snr / 10.0)));
  result.report.noise_gain = gain;
  for (std::size_t i = 0; i < n; ++i) result.wave.samples[i] += gain * noise[i];
  return result;
}

RawBoostResult ApplyRawBoost(const Waveform &x, RawBoostMode mode,
                             const RawBoostParams &params, Rng &rng) {
  params.Validate();
  switch (mode) {
    case RawBoostMode::kConvolutive:
      return RawBoostConvolutive(x, params.convolutive, rng);
    case RawBoostMode::kImpulsive:
      return RawBoostImpulsive(x, params.impulsive, rng);
    case RawBoostMode::kStationary:
      return RawBoostStationary(x, params.stationary, rng);
    case RawBoostMode::kCombined: {
      RawBoostResult conv = RawBoostConvolutive(x, params.convolutive, rng);
      RawBoostResult imp = RawBoostImpulsive(conv.wave, params.impulsive, rng);
      RawBoostResult stat = RawBoostStationary(imp.wave, params.stationary, rng);
      stat.report.filter = std::move(conv.report.filter);
      stat.report.impulses = imp.report.impulses;
      return stat;
    }
  }
  throw UsageError("unknown rawboost mode");
}

}  // namespace spoofbench
