// include/spoofbench/fft.h

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

#ifndef SPOOFBENCH_FFT_H_
#define SPOOFBENCH_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spoofbench {

constexpr bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Smallest power of two >= n.
std::size_t NextPowerOfTwo(std::size_t n);

/// In-place radix-2 FFT; the size must be a power of two.  The inverse
/// transform includes the 1/N factor.
void Fft(std::span<std::complex<double>> data, bool inverse = false);

/// |X_k|^2 for k = 0..fft_size/2 of the zero-padded frame.
std::vector<double> PowerSpectrum(std::span<const double> frame,
                                  std::size_t fft_size);

/// Full linear convolution (length a + b - 1) through the FFT.
std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b);

}  // namespace spoofbench

#endif  // SPOOFBENCH_FFT_H_
