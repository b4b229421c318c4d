// src/resample.cc

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

#include "spoofbench/resample.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spoofbench/error.h"

namespace spoofbench {

namespace {

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

SincInterpolator::SincInterpolator(double cutoff, const ResamplerOptions &options)
    : cutoff_(cutoff) {
  if (!(cutoff > 0.0 && cutoff <= 1.0))
    throw UsageError("resampler cutoff must be in (0, 1]");
  if (options.zero_crossings < 1 || options.table_resolution < 1 ||
      !(options.kaiser_beta >= 0.0))
    throw UsageError("invalid resampler options");
  half_width_ = options.zero_crossings / cutoff;
  const std::size_t entries =
      static_cast<std::size_t>(options.zero_crossings) * options.table_resolution;
  table_step_ = half_width_ / static_cast<double>(entries);
  table_.resize(entries + 2, 0.0);
  const double i0_beta = std::cyl_bessel_i(0.0, options.kaiser_beta);
  for (std::size_t k = 0; k <= entries; ++k) {
    const double u = k * table_step_;
    const double r = u / half_width_;
    const double window =
        std::cyl_bessel_i(0.0, options.kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) /
        i0_beta;
    table_[k] = cutoff * Sinc(cutoff * u) * window;
  }
}

double SincInterpolator::Kernel(double u) const {
  u = std::abs(u);
  if (u >= half_width_) return 0.0;
  const double pos = u / table_step_;
  const auto k = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(k);
  return table_[k] + frac * (table_[k + 1] - table_[k]);
}

std::vector<double> SincInterpolator::Run(std::span<const double> x, double step,
                                          std::size_t out_len,
                                          double offset) const {
  if (x.empty()) throw DataError("cannot resample an empty signal");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> y(out_len);
  for (std::size_t j = 0; j < out_len; ++j) {
    const double t = static_cast<double>(j) * step + offset;
    const auto first = static_cast<std::ptrdiff_t>(std::ceil(t - half_width_));
    const auto last = static_cast<std::ptrdiff_t>(std::floor(t + half_width_));
    double acc = 0.0, norm = 0.0;
    for (std::ptrdiff_t i = first; i <= last; ++i) {
      const double h = Kernel(t - static_cast<double>(i));
      if (h == 0.0) continue;
      acc += h * x[std::clamp<std::ptrdiff_t>(i, 0, n - 1)];
      norm += h;
    }
    y[j] = norm != 0.0 ? acc / norm : 0.0;
  }
  return y;
}

Waveform Resample(const Waveform &in, int out_rate,
                  const ResamplerOptions &options) {
  if (in.sample_rate <= 0 || out_rate <= 0)
    throw UsageError("sample rates must be positive");
  if (out_rate == in.sample_rate) return in;
  const double ratio = static_cast<double>(out_rate) / in.sample_rate;
  const auto out_len =
      static_cast<std::size_t>(std::llround(static_cast<double>(in.size()) * ratio));
  if (out_len == 0) throw DataError("resampled signal would be empty");
  SincInterpolator interp(std::min(1.0, ratio) * options.rolloff, options);
  Waveform out;
  out.sample_rate = out_rate;
  out.samples = interp.Run(in.samples, 1.0 / ratio, out_len);
  return out;
}

Waveform SpeedPerturb(const Waveform &in, double factor,
                      const ResamplerOptions &options) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw UsageError("speed factor must be positive");
  if (factor == 1.0) return in;
  const auto out_len =
      static_cast<std::size_t>(std::llround(static_cast<double>(in.size()) / factor));
  if (out_len == 0) throw DataError("speed-perturbed signal would be empty");
  SincInterpolator interp(std::min(1.0, 1.0 / factor) * options.rolloff, options);
  Waveform out;
  out.sample_rate = in.sample_rate;
  out.samples = interp.Run(in.samples, factor, out_len);
  return out;
}

Waveform Telephony(const Waveform &in, int down_rate,
                   const ResamplerOptions &options) {
  if (in.sample_rate != 16000)
    throw DataError("telephony expects 16000 Hz input, got " +
                     std::to_string(in.sample_rate));
  if (down_rate <= 0 || down_rate >= in.sample_rate)
    throw UsageError("telephony down rate must be below the input rate");
  Waveform narrow = Resample(in, down_rate, options);
  const double ratio = static_cast<double>(in.sample_rate) / down_rate;
  SincInterpolator up(options.rolloff, options);
  Waveform out;
  out.sample_rate = in.sample_rate;
  out.samples = up.Run(narrow.samples, 1.0 / ratio, in.size());
  return out;
}

}  // namespace spoofbench
