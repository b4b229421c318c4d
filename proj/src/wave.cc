// src/wave.cc

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

#include "spoofbench/wave.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "spoofbench/error.h"

namespace spoofbench {

void Waveform::Validate() const {
  if (sample_rate <= 0) throw DataError("sample rate must be positive");
  for (double x : samples)
    if (!std::isfinite(x)) throw DataError("waveform has non-finite samples");
}

std::size_t ClipInPlace(Waveform &wave) {
  std::size_t clipped = 0;
  for (double &x : wave.samples) {
    if (x > 1.0) {
      x = 1.0;
      ++clipped;
    } else if (x < -1.0) {
      x = -1.0;
      ++clipped;
    }
  }
  return clipped;
}

double MeanPower(const double *begin, const double *end) {
  if (begin == end) return 0.0;
  double acc = 0.0;
  for (const double *p = begin; p != end; ++p) acc += *p * *p;
  return acc / static_cast<double>(end - begin);
}

int ToPcm16(double x) {
  const double v = std::round(x * 32768.0);
  return static_cast<int>(std::clamp(v, -32768.0, 32767.0));
}

namespace {

std::uint32_t ReadU32(const unsigned char *p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::string &s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string &s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>(v >> 8));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

}  // namespace

Waveform ReadWav(std::istream &in, const std::string &source) {
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const auto *data = reinterpret_cast<const unsigned char *>(bytes.data());
  const std::size_t size = bytes.size();
  if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 ||
      std::memcmp(data + 8, "WAVE", 4) != 0)
    throw DataError(source + ": not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char *pcm = nullptr;
  std::size_t pcm_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const std::uint32_t chunk = ReadU32(data + pos + 4);
    const unsigned char *body = data + pos + 8;
    const std::size_t avail = size - pos - 8;
    if (std::memcmp(data + pos, "fmt ", 4) == 0) {
      if (chunk < 16 || avail < 16) throw DataError(source + ": short fmt chunk");
      format = ReadU16(body);
      channels = ReadU16(body + 2);
      rate = ReadU32(body + 4);
      bits = ReadU16(body + 14);
      if (format == kFormatExtensible && chunk >= 26 && avail >= 26)
        format = ReadU16(body + 24);
    } else if (std::memcmp(data + pos, "data", 4) == 0) {
      pcm = body;
      pcm_size = std::min<std::size_t>(chunk, avail);
      break;
    }
    pos += 8 + chunk + (chunk & 1);
  }
  if (format == 0) throw DataError(source + ": missing fmt chunk");
  if (pcm == nullptr) throw DataError(source + ": missing data chunk");
  if (channels != 1)
    throw DataError(source + ": " + std::to_string(channels) +
                    "-channel audio is not supported (mono only)");
  if (rate == 0) throw DataError(source + ": zero sample rate");

  Waveform wave;
  wave.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const std::size_t n = pcm_size / 2;
    wave.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      wave.samples[i] = static_cast<std::int16_t>(ReadU16(pcm + 2 * i)) / 32768.0;
  } else if (format == kFormatFloat && bits == 32) {
    const std::size_t n = pcm_size / 4;
    wave.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t u = ReadU32(pcm + 4 * i);
      float f;
      std::memcpy(&f, &u, sizeof f);
      wave.samples[i] = f;
    }
  } else {
    throw DataError(source + ": unsupported sample format (16-bit PCM or "
                    "32-bit float only)");
  }
  wave.Validate();
  return wave;
}

Waveform ReadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return ReadWav(in, path.string());
}

void WriteWav(std::ostream &out, const Waveform &wave) {
  wave.Validate();
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(wave.size() * 2);
  std::string header;
  header.reserve(44);
  header += "RIFF";
  PutU32(header, 36 + data_bytes);
  header += "WAVEfmt ";
  PutU32(header, 16);
  PutU16(header, kFormatPcm);
  PutU16(header, 1);
  PutU32(header, static_cast<std::uint32_t>(wave.sample_rate));
  PutU32(header, static_cast<std::uint32_t>(wave.sample_rate) * 2);
  PutU16(header, 2);
  PutU16(header, 16);
  header += "data";
  PutU32(header, data_bytes);
  std::string body;
  body.reserve(data_bytes);
  for (double x : wave.samples)
    PutU16(body, static_cast<std::uint16_t>(static_cast<std::int16_t>(ToPcm16(x))));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

void WriteWav(const std::filesystem::path &path, const Waveform &wave) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  WriteWav(out, wave);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace spoofbench
