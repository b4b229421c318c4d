// include/spoofbench/wave.h

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

#ifndef SPOOFBENCH_WAVE_H_
#define SPOOFBENCH_WAVE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace spoofbench {

/// Mono sample buffer, nominal range [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }

  /// Throws DataError on a non-positive rate or non-finite samples.
  void Validate() const;
};

/// Hard clip to [-1, 1]; returns the number of clipped samples.
std::size_t ClipInPlace(Waveform &wave);

/// Mean of x^2; 0 for an empty range.
double MeanPower(const double *begin, const double *end);

/// Reads RIFF/WAVE with 16-bit PCM or 32-bit IEEE float samples.
/// Multichannel files are rejected.
Waveform ReadWav(std::istream &in, const std::string &source = "<stream>");
Waveform ReadWav(const std::filesystem::path &path);

/// Writes 16-bit PCM mono; samples are clipped and rounded.
void WriteWav(std::ostream &out, const Waveform &wave);
void WriteWav(const std::filesystem::path &path, const Waveform &wave);

/// Sample -> int16 mapping used by the writer and the G.711 codec:
/// round(x * 32768) clamped to [-32768, 32767].
int ToPcm16(double x);

}  // namespace spoofbench

#endif  // SPOOFBENCH_WAVE_H_
