// src/g711.cc

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

#include "spoofbench/g711.h"

#include "spoofbench/error.h"

namespace spoofbench {

namespace {

constexpr int kSignBit = 0x80;
constexpr int kQuantMask = 0x0f;
constexpr int kSegShift = 4;
constexpr int kSegMask = 0x70;
constexpr int kBias = 0x84;
constexpr int kClip = 8159;

constexpr int kSegAEnd[8] = {0x1f, 0x3f, 0x7f, 0xff, 0x1ff, 0x3ff, 0x7ff, 0xfff};
constexpr int kSegUEnd[8] = {0x3f, 0x7f, 0xff, 0x1ff, 0x3ff, 0x7ff, 0xfff, 0x1fff};

int Search(int value, const int (&table)[8]) {
  for (int i = 0; i < 8; ++i)
    if (value <= table[i]) return i;
  return 8;
}

}  // namespace

G711Law ParseG711Law(const std::string &name) {
  if (name == "a" || name == "alaw" || name == "a-law") return G711Law::kALaw;
  if (name == "u" || name == "mu" || name == "ulaw" || name == "mu-law")
    return G711Law::kMuLaw;
  throw UsageError("unknown G.711 law '" + name + "' (expected a or mu)");
}

std::uint8_t LinearToALaw(int pcm) {
  int mask;
  pcm >>= 3;
  if (pcm >= 0) {
    mask = 0xd5;
  } else {
    mask = 0x55;
    pcm = -pcm - 1;
  }
  const int seg = Search(pcm, kSegAEnd);
  if (seg >= 8) return static_cast<std::uint8_t>(0x7f ^ mask);
  int aval = seg << kSegShift;
  if (seg < 2)
    aval |= (pcm >> 1) & kQuantMask;
  else
    aval |= (pcm >> seg) & kQuantMask;
  return static_cast<std::uint8_t>(aval ^ mask);
}

int ALawToLinear(std::uint8_t code) {
  const int a = code ^ 0x55;
  int t = (a & kQuantMask) << 4;
  const int seg = (a & kSegMask) >> kSegShift;
  switch (seg) {
    case 0:
      t += 8;
      break;
    case 1:
      t += 0x108;
      break;
    default:
      t += 0x108;
      t <<= seg - 1;
  }
  return (a & kSignBit) ? t : -t;
}

std::uint8_t LinearToMuLaw(int pcm) {
  int mask;
  // Take the magnitude before dropping the two low bits so that negative
  // inputs truncate toward zero like positive ones.
  if (pcm < 0) {
    pcm = -pcm;
    mask = 0x7f;
  } else {
    mask = 0xff;
  }
  pcm >>= 2;
  if (pcm > kClip) pcm = kClip;
  pcm += kBias >> 2;
  const int seg = Search(pcm, kSegUEnd);
  if (seg >= 8) return static_cast<std::uint8_t>(0x7f ^ mask);
  const int uval = (seg << 4) | ((pcm >> (seg + 1)) & 0xf);
  return static_cast<std::uint8_t>(uval ^ mask);
}

int MuLawToLinear(std::uint8_t code) {
  const int u = ~code & 0xff;
  int t = ((u & kQuantMask) << 3) + kBias;
  t <<= (u & kSegMask) >> kSegShift;
  return (u & kSignBit) ? (kBias - t) : (t - kBias);
}

Waveform G711RoundTrip(const Waveform &in, G711Law law) {
  Waveform out = in;
  for (double &x : out.samples) {
    const int pcm = ToPcm16(x);
    const int dec = law == G711Law::kALaw ? ALawToLinear(LinearToALaw(pcm))
                                          : MuLawToLinear(LinearToMuLaw(pcm));
    x = dec / 32768.0;
  }
  return out;
}

}  // namespace spoofbench
