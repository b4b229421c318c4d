// include/spoofbench/resample.h

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

#ifndef SPOOFBENCH_RESAMPLE_H_
#define SPOOFBENCH_RESAMPLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "spoofbench/wave.h"

namespace spoofbench {

/// Band-limited interpolation with a Kaiser-windowed sinc.  The kernel spans
/// `zero_crossings` zero crossings of the (lower) output band on each side,
/// i.e. 2 * zero_crossings taps at the lower of the two rates.
struct ResamplerOptions {
  int zero_crossings = 32;
  double kaiser_beta = 8.0;
  /// Cutoff as a fraction of the lower Nyquist frequency.
  double rolloff = 0.97;
  /// Kernel table resolution per zero crossing.
  int table_resolution = 1024;
};

class SincInterpolator {
 public:
  /// `cutoff` is the normalised cutoff in cycles per input sample times two,
  /// so 1.0 keeps everything up to the input Nyquist frequency.
  SincInterpolator(double cutoff, const ResamplerOptions &options = {});

  /// y[j] = sum_i x[i] h(j*step + offset - i) / sum_i h(...), with x
  /// extended by repeating its first and last samples.
  std::vector<double> Run(std::span<const double> x, double step,
                          std::size_t out_len, double offset = 0.0) const;

  double HalfWidth() const { return half_width_; }

 private:
  double Kernel(double u) const;

  double cutoff_;
  double half_width_;  // in input samples
  double table_step_;
  std::vector<double> table_;
};

/// Converts to `out_rate`; the output has round(N * out_rate / in_rate)
/// samples.  Equal rates return a copy.
Waveform Resample(const Waveform &in, int out_rate,
                  const ResamplerOptions &options = {});

/// Playback-speed change without pitch correction: round(N / factor)
/// samples at the original rate.  factor == 1 returns an exact copy.
Waveform SpeedPerturb(const Waveform &in, double factor,
                      const ResamplerOptions &options = {});

/// 16 kHz -> 8 kHz -> 16 kHz round trip; the output keeps the input length.
Waveform Telephony(const Waveform &in, int down_rate = 8000,
                   const ResamplerOptions &options = {});

}  // namespace spoofbench

#endif  // SPOOFBENCH_RESAMPLE_H_
