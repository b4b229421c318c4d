// include/spoofbench/external-codec.h

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

#ifndef SPOOFBENCH_EXTERNAL_CODEC_H_
#define SPOOFBENCH_EXTERNAL_CODEC_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "spoofbench/wave.h"

namespace spoofbench {

/// Command templates for one encoder.  Templates are split on whitespace
/// into argv (no shell); {in}, {out} and {bitrate} are substituted per
/// argument.
struct EncoderSpec {
  std::string encode;
  std::string decode;
  std::string extension = "bin";  // intermediate file suffix
};

/// Encoder table loaded from JSON:
///   {"encoders": {"mp3": {"encode": "...", "decode": "...",
///                          "extension": "mp3"}}}
class CodecRegistry {
 public:
  CodecRegistry() = default;
  explicit CodecRegistry(std::map<std::string, EncoderSpec> encoders)
      : encoders_(std::move(encoders)) {}

  static CodecRegistry FromJson(const std::string &text,
                                const std::string &source = "<json>");
  static CodecRegistry Load(const std::filesystem::path &path);
  /// Uses $SPOOFBENCH_ENCODERS when set, otherwise an empty registry.
  static CodecRegistry FromEnvironment();

  bool Has(const std::string &id) const { return encoders_.count(id) != 0; }
  const EncoderSpec &Get(const std::string &id) const;

  /// Throws ExternalToolError naming the encoder when it is undeclared or
  /// when a binary of its templates cannot be found.
  void CheckAvailable(const std::string &id) const;

 private:
  std::map<std::string, EncoderSpec> encoders_;
};

/// argv[0] of a template resolved against PATH; empty when not found.
std::string FindExecutable(const std::string &name);

/// Runs argv, waits, throws ExternalToolError on spawn failure or a
/// nonzero exit status.  Child stdout/stderr go to /dev/null.
void RunProcess(const std::vector<std::string> &argv);

/// Writes x to a temp WAV, runs encode then decode, reads the result back,
/// resamples to x's rate when needed and trims or zero-pads to x's length.
Waveform ExternalCodecRoundTrip(const Waveform &x, const CodecRegistry &codecs,
                                const std::string &encoder_id,
                                const std::string &bitrate);

}  // namespace spoofbench

#endif  // SPOOFBENCH_EXTERNAL_CODEC_H_
