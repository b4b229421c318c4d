// include/spoofbench/rawboost.h

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

#ifndef SPOOFBENCH_RAWBOOST_H_
#define SPOOFBENCH_RAWBOOST_H_

#include <cstddef>
#include <string>
#include <vector>

#include "spoofbench/rng.h"
#include "spoofbench/wave.h"

namespace spoofbench {

enum class RawBoostMode { kConvolutive, kImpulsive, kStationary, kCombined };

RawBoostMode ParseRawBoostMode(const std::string &name);
std::string RawBoostModeName(RawBoostMode mode);

/// Random multi-notch FIR filter.  Each notch draws a center in
/// [min_freq, max_freq] Hz, a width in [min_bw, max_bw] Hz and a depth in
/// [min_depth_db, max_depth_db] dB; the filter length is drawn from
/// [min_taps, max_taps] and forced odd.
struct ConvolutiveParams {
  int num_notches = 5;
  double min_freq = 20.0, max_freq = 8000.0;
  double min_bw = 100.0, max_bw = 1000.0;
  double min_depth_db = 0.0, max_depth_db = 30.0;
  int min_taps = 11, max_taps = 101;
};

/// Each sample is hit with probability `density`; a hit adds
/// gain * x * U(-1, 1).
struct ImpulsiveParams {
  double density = 0.1;
  double gain = 2.0;
};

/// Gaussian noise with spectral tilt |H(f)| ~ (f / 1 kHz)^tilt, tilt drawn
/// from [min_tilt, max_tilt], added at an SNR drawn from [min_snr_db,
/// max_snr_db] and then multiplied by `scale` (0 disables the noise).
struct StationaryParams {
  double min_snr_db = 10.0, max_snr_db = 40.0;
  double min_tilt = -1.0, max_tilt = 1.0;
  double scale = 1.0;
};

struct RawBoostParams {
  ConvolutiveParams convolutive;
  ImpulsiveParams impulsive;
  StationaryParams stationary;

  void Validate() const;
};

struct RawBoostReport {
  std::vector<double> filter;       // convolutive taps, empty if identity
  std::size_t impulses = 0;
  double snr_db = 0.0;              // stationary target SNR
  double tilt = 0.0;
  double noise_gain = 0.0;
};

struct RawBoostResult {
  Waveform wave;
  RawBoostReport report;
};

RawBoostResult RawBoostConvolutive(const Waveform &x, const ConvolutiveParams &p,
                                   Rng &rng);
RawBoostResult RawBoostImpulsive(const Waveform &x, const ImpulsiveParams &p,
                                 Rng &rng);
RawBoostResult RawBoostStationary(const Waveform &x, const StationaryParams &p,
                                  Rng &rng);
/// Applies the selected mode; combined runs convolutive, impulsive and
/// stationary in that order.  The output is not clipped.
RawBoostResult ApplyRawBoost(const Waveform &x, RawBoostMode mode,
                             const RawBoostParams &params, Rng &rng);

}  // namespace spoofbench

#endif  // SPOOFBENCH_RAWBOOST_H_
