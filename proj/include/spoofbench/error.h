// include/spoofbench/error.h

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

#ifndef SPOOFBENCH_ERROR_H_
#define SPOOFBENCH_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spoofbench {

/// Base class of everything the library throws on purpose.  The three
/// subclasses map onto the CLI exit codes (2 usage, 3 data, 4 external tool).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments, bad configuration, precondition violations by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data.  When the data came from a file,
/// `source()` and `line()` point at the offending record (line is 1-based,
/// 0 when not applicable).
class DataError : public Error {
 public:
  explicit DataError(const std::string &what) : Error(what) {}
  DataError(const std::string &source, std::size_t line,
            const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string &source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_ = 0;
};

/// An external encoder/decoder process is missing or misbehaved.
class ExternalToolError : public Error {
 public:
  using Error::Error;
};

}  // namespace spoofbench

#endif  // SPOOFBENCH_ERROR_H_
