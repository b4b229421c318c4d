// src/fft.cc

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

#include "spoofbench/fft.h"

#include <cmath>
#include <numbers>
#include <utility>

#include "spoofbench/error.h"

namespace spoofbench {

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void Fft(std::span<std::complex<double>> data, bool inverse) {
  const std::size_t n = data.size();
  if (!IsPowerOfTwo(n)) throw UsageError("FFT size must be a power of two");
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // Twiddles computed directly rather than by recurrence to keep the
      // rounding error flat for long transforms.
      const double angle = sign * 2.0 * std::numbers::pi * k / len;
      const std::complex<double> w(std::cos(angle), std::sin(angle));
      for (std::size_t i = k; i < n; i += len) {
        const std::complex<double> u = data[i];
        const std::complex<double> v = data[i + half] * w;
        data[i] = u + v;
        data[i + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto &x : data) x *= scale;
  }
}

std::vector<double> PowerSpectrum(std::span<const double> frame,
                                  std::size_t fft_size) {
  if (frame.size() > fft_size)
    throw UsageError("frame is longer than the FFT size");
  std::vector<std::complex<double>> buf(fft_size);
  for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = frame[i];
  Fft(buf);
  std::vector<double> power(fft_size / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
  return power;
}

std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = NextPowerOfTwo(out_len);
  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  Fft(fa);
  Fft(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  Fft(fa, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace spoofbench
