// src/lfcc.cc

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

#include "spoofbench/lfcc.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "spoofbench/error.h"
#include "spoofbench/fft.h"

namespace spoofbench {

namespace {

constexpr double kLogFloor = 1e-10;

std::vector<double> HammingWindow(std::size_t n) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
  return w;
}

}  // namespace

std::size_t LfccConfig::WindowSamples(int sample_rate) const {
  return static_cast<std::size_t>(std::llround(win_len * sample_rate));
}

std::size_t LfccConfig::HopSamples(int sample_rate) const {
  return static_cast<std::size_t>(std::llround(hop * sample_rate));
}

void LfccConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw UsageError("LFCC: sample rate must be positive");
  if (!(win_len > 0.0) || !(hop > 0.0) || hop > win_len)
    throw UsageError("LFCC: need 0 < hop <= win_len");
  if (WindowSamples(sample_rate) < 2 || HopSamples(sample_rate) < 1)
    throw UsageError("LFCC: window or hop shorter than one sample");
  if (!IsPowerOfTwo(fft_size))
    throw UsageError("LFCC: fft_size must be a power of two");
  if (fft_size < WindowSamples(sample_rate))
    throw UsageError("LFCC: fft_size is smaller than the window");
  if (n_filters < 1 || n_ceps < 1 || n_ceps > n_filters)
    throw UsageError("LFCC: need 1 <= n_ceps <= n_filters");
  if (!(pre_emphasis >= 0.0 && pre_emphasis < 1.0))
    throw UsageError("LFCC: pre_emphasis must be in [0, 1)");
}

std::vector<std::vector<double>> DctMatrix(int size) {
  std::vector<std::vector<double>> d(size, std::vector<double>(size));
  for (int k = 0; k < size; ++k) {
    const double s = std::sqrt((k == 0 ? 1.0 : 2.0) / size);
    for (int n = 0; n < size; ++n)
      d[k][n] = s * std::cos(std::numbers::pi * k * (n + 0.5) / size);
  }
  return d;
}

double FilterCenterHz(int filter, int n_filters, int sample_rate) {
  return (filter + 1) * (sample_rate / 2.0) / (n_filters + 1);
}

std::vector<std::vector<double>> LinearFilterbank(int n_filters,
                                                  std::size_t fft_size,
                                                  int sample_rate) {
  const std::size_t bins = fft_size / 2 + 1;
  const double spacing = (sample_rate / 2.0) / (n_filters + 1);
  std::vector<std::vector<double>> fb(n_filters, std::vector<double>(bins, 0.0));
  for (int m = 0; m < n_filters; ++m) {
    const double left = m * spacing;
    const double center = (m + 1) * spacing;
    const double right = (m + 2) * spacing;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / fft_size;
      if (f > left && f <= center)
        fb[m][k] = (f - left) / (center - left);
      else if (f > center && f < right)
        fb[m][k] = (right - f) / (right - center);
    }
  }
  return fb;
}

FeatureMatrix LogFilterbankEnergies(const Waveform &wave,
                                    const LfccConfig &cfg) {
  cfg.Validate(wave.sample_rate);
  wave.Validate();
  const std::size_t win = cfg.WindowSamples(wave.sample_rate);
  const std::size_t hop = cfg.HopSamples(wave.sample_rate);
  const std::size_t n = wave.size();
  if (n < win)
    throw DataError("LFCC: input has " + std::to_string(n) +
                    " samples, shorter than one " + std::to_string(win) +
                    "-sample window");

  std::vector<double> x = wave.samples;
  if (cfg.pre_emphasis > 0.0)
    for (std::size_t i = n - 1; i > 0; --i) x[i] -= cfg.pre_emphasis * x[i - 1];

  const auto window = HammingWindow(win);
  const auto fb = LinearFilterbank(cfg.n_filters, cfg.fft_size, wave.sample_rate);

  FeatureMatrix out;
  out.frames = 1 + (n - win) / hop;
  out.dims = static_cast<std::size_t>(cfg.n_filters);
  out.frame_hop = static_cast<double>(hop) / wave.sample_rate;
  out.data.resize(out.frames * out.dims);
  std::vector<double> frame(win);
  for (std::size_t t = 0; t < out.frames; ++t) {
    for (std::size_t i = 0; i < win; ++i) frame[i] = x[t * hop + i] * window[i];
    const auto power = PowerSpectrum(frame, cfg.fft_size);
    for (int m = 0; m < cfg.n_filters; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k) e += fb[m][k] * power[k];
      out.at(t, m) = std::log(std::max(e, kLogFloor));
    }
  }
  return out;
}

FeatureMatrix ComputeDeltas(const FeatureMatrix &in) {
  constexpr int kWindow = 2;
  constexpr double kDenominator = 2.0 * (1 * 1 + 2 * 2);
  FeatureMatrix out = in;
  if (in.frames == 0) return out;
  const auto last = static_cast<std::ptrdiff_t>(in.frames) - 1;
  for (std::ptrdiff_t t = 0; t <= last; ++t) {
    for (std::size_t d = 0; d < in.dims; ++d) {
      double acc = 0.0;
      for (int k = 1; k <= kWindow; ++k) {
        const auto ahead = std::min<std::ptrdiff_t>(t + k, last);
        const auto behind = std::max<std::ptrdiff_t>(t - k, 0);
        acc += k * (in.at(ahead, d) - in.at(behind, d));
      }
      out.at(t, d) = acc / kDenominator;
    }
  }
  return out;
}

FeatureMatrix ComputeLfcc(const Waveform &wave, const LfccConfig &cfg) {
  const FeatureMatrix logfb = LogFilterbankEnergies(wave, cfg);
  const auto dct = DctMatrix(cfg.n_filters);

  FeatureMatrix ceps;
  ceps.frames = logfb.frames;
  ceps.dims = static_cast<std::size_t>(cfg.n_ceps);
  ceps.frame_hop = logfb.frame_hop;
  ceps.data.resize(ceps.frames * ceps.dims);
  for (std::size_t t = 0; t < ceps.frames; ++t)
    for (int k = 0; k < cfg.n_ceps; ++k) {
      double acc = 0.0;
      for (int m = 0; m < cfg.n_filters; ++m) acc += dct[k][m] * logfb.at(t, m);
      ceps.at(t, k) = acc;
    }
  if (!cfg.deltas) return ceps;

  const FeatureMatrix d1 = ComputeDeltas(ceps);
  const FeatureMatrix d2 = ComputeDeltas(d1);
  FeatureMatrix out;
  out.frames = ceps.frames;
  out.dims = 3 * ceps.dims;
  out.frame_hop = ceps.frame_hop;
  out.data.resize(out.frames * out.dims);
  for (std::size_t t = 0; t < out.frames; ++t)
    for (std::size_t d = 0; d < ceps.dims; ++d) {
      out.at(t, d) = ceps.at(t, d);
      out.at(t, ceps.dims + d) = d1.at(t, d);
      out.at(t, 2 * ceps.dims + d) = d2.at(t, d);
    }
  return out;
}

FeatureMatrix AlignFrames(
    const FeatureMatrix &in, double target_hop,
    const std::optional<std::vector<std::vector<double>>> &projection) {
  if (!(in.frame_hop > 0.0) || !(target_hop > 0.0))
    throw UsageError("frame alignment needs positive hops");
  const double ratio = target_hop / in.frame_hop;
  const double m_real = std::round(ratio);
  if (m_real < 1.0 || std::abs(ratio - m_real) > 1e-9 * ratio)
    throw UsageError("target hop " + std::to_string(target_hop) +
                     " is not an integer multiple of the frame hop " +
                     std::to_string(in.frame_hop));
  const auto m = static_cast<std::size_t>(m_real);

  FeatureMatrix pooled;
  pooled.frames = in.frames / m;
  pooled.dims = in.dims;
  pooled.frame_hop = target_hop;
  pooled.data.assign(pooled.frames * pooled.dims, 0.0);
  for (std::size_t t = 0; t < pooled.frames; ++t)
    for (std::size_t d = 0; d < in.dims; ++d) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += in.at(t * m + j, d);
      pooled.at(t, d) = acc / static_cast<double>(m);
    }
  if (!projection) return pooled;

  const auto &p = *projection;
  if (p.size() != in.dims || p.empty())
    throw UsageError("projection has " + std::to_string(p.size()) +
                     " rows, expected " + std::to_string(in.dims));
  const std::size_t out_dims = p[0].size();
  for (const auto &row : p)
    if (row.size() != out_dims || out_dims == 0)
      throw UsageError("projection matrix rows have unequal length");
  FeatureMatrix out;
  out.frames = pooled.frames;
  out.dims = out_dims;
  out.frame_hop = target_hop;
  out.data.assign(out.frames * out_dims, 0.0);
  for (std::size_t t = 0; t < out.frames; ++t)
    for (std::size_t e = 0; e < out_dims; ++e) {
      double acc = 0.0;
      for (std::size_t d = 0; d < in.dims; ++d) acc += pooled.at(t, d) * p[d][e];
      out.at(t, e) = acc;
    }
  return out;
}

std::vector<std::vector<double>> ReadMatrixFile(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#')
      continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw DataError(path.string(), lineno, "non-numeric value '" + tok + "'");
      }
      if (!std::isfinite(row.back()))
        throw DataError(path.string(), lineno, "non-finite value");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteFeatures(std::ostream &out, const FeatureMatrix &features) {
  std::ostringstream header;
  header << "LFCC frames=" << features.frames << " dims=" << features.dims
         << " hop=" << features.frame_hop << "\n";
  out << header.str();
  std::string body(features.data.size() * 4, '\0');
  for (std::size_t i = 0; i < features.data.size(); ++i) {
    const float f = static_cast<float>(features.data[i]);
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    for (int b = 0; b < 4; ++b)
      body[4 * i + b] = static_cast<char>((u >> (8 * b)) & 0xff);
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

FeatureMatrix ReadFeatures(std::istream &in) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("empty feature file");
  FeatureMatrix fm;
  if (std::sscanf(header.c_str(), "LFCC frames=%zu dims=%zu hop=%lf", &fm.frames,
                  &fm.dims, &fm.frame_hop) != 3)
    throw DataError("malformed feature header '" + header + "'");
  std::string body(fm.frames * fm.dims * 4, '\0');
  in.read(body.data(), static_cast<std::streamsize>(body.size()));
  if (static_cast<std::size_t>(in.gcount()) != body.size())
    throw DataError("truncated feature file");
  fm.data.resize(fm.frames * fm.dims);
  for (std::size_t i = 0; i < fm.data.size(); ++i) {
    std::uint32_t u = 0;
    for (int b = 0; b < 4; ++b)
      u |= static_cast<std::uint32_t>(static_cast<unsigned char>(body[4 * i + b]))
           << (8 * b);
    float f;
    std::memcpy(&f, &u, 4);
    fm.data[i] = f;
  }
  return fm;
}

}  // namespace spoofbench
