// include/spoofbench/lfcc.h

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

#ifndef SPOOFBENCH_LFCC_H_
#define SPOOFBENCH_LFCC_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "spoofbench/wave.h"

namespace spoofbench {

struct LfccConfig {
  double win_len = 0.020;   // seconds
  double hop = 0.010;       // seconds
  std::size_t fft_size = 512;
  int n_filters = 20;
  int n_ceps = 20;
  bool deltas = true;       // append delta and delta-delta
  double pre_emphasis = 0.0;

  /// Checks the config against a sample rate; throws UsageError.
  void Validate(int sample_rate) const;
  std::size_t WindowSamples(int sample_rate) const;
  std::size_t HopSamples(int sample_rate) const;
  int Dims() const { return deltas ? 3 * n_ceps : n_ceps; }
};

/// Row-major frames x dims matrix.
struct FeatureMatrix {
  std::vector<double> data;
  std::size_t frames = 0;
  std::size_t dims = 0;
  double frame_hop = 0.0;

  double &at(std::size_t t, std::size_t d) { return data[t * dims + d]; }
  double at(std::size_t t, std::size_t d) const { return data[t * dims + d]; }
};

/// Orthonormal DCT-II: row k, column n is
/// s_k cos(pi k (n + 0.5) / size), s_0 = sqrt(1/size), s_k = sqrt(2/size).
std::vector<std::vector<double>> DctMatrix(int size);

/// Triangular filters over bins 0..fft_size/2.  Centers are m*(fs/2)/(n+1)
/// for m = 1..n; each triangle spans its neighbours' centers (0 and fs/2 at
/// the ends) and is evaluated at the bin frequencies.
std::vector<std::vector<double>> LinearFilterbank(int n_filters,
                                                  std::size_t fft_size,
                                                  int sample_rate);
double FilterCenterHz(int filter, int n_filters, int sample_rate);

/// Log filterbank energies (floored at 1e-10) per frame, before the DCT.
FeatureMatrix LogFilterbankEnergies(const Waveform &wave,
                                    const LfccConfig &cfg);

/// Standard 2-frame regression with edge replication.
FeatureMatrix ComputeDeltas(const FeatureMatrix &in);

FeatureMatrix ComputeLfcc(const Waveform &wave, const LfccConfig &cfg = {});

/// Mean-pools non-overlapping groups of m = target_hop / frame_hop frames
/// (an incomplete tail group is dropped), then optionally applies a
/// dims x dims' projection (given as dims rows).
FeatureMatrix AlignFrames(
    const FeatureMatrix &in, double target_hop,
    const std::optional<std::vector<std::vector<double>>> &projection =
        std::nullopt);

/// Whitespace-separated matrix, one row per line.
std::vector<std::vector<double>> ReadMatrixFile(
    const std::filesystem::path &path);

/// "LFCC frames=F dims=D hop=H\n" then F*D little-endian float32 values.
void WriteFeatures(std::ostream &out, const FeatureMatrix &features);
FeatureMatrix ReadFeatures(std::istream &in);

}  // namespace spoofbench

#endif  // SPOOFBENCH_LFCC_H_
