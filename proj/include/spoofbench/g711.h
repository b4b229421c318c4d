// include/spoofbench/g711.h

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

#ifndef SPOOFBENCH_G711_H_
#define SPOOFBENCH_G711_H_

#include <cstdint>

#include "spoofbench/wave.h"

namespace spoofbench {

enum class G711Law { kALaw, kMuLaw };

/// Parses "a", "alaw", "u", "mu", "ulaw" (case-sensitive).
G711Law ParseG711Law(const std::string &name);

// Segmented companding as in the public-domain Sun reference code.  The
// linear side is a 16-bit PCM value.
std::uint8_t LinearToALaw(int pcm);
int ALawToLinear(std::uint8_t code);
std::uint8_t LinearToMuLaw(int pcm);
int MuLawToLinear(std::uint8_t code);

/// Encode and decode every sample; inputs are clamped to 16-bit range.
Waveform G711RoundTrip(const Waveform &in, G711Law law);

}  // namespace spoofbench

#endif  // SPOOFBENCH_G711_H_
