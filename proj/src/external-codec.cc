// src/external-codec.cc

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

#include "spoofbench/external-codec.h"

#include <fcntl.h>
#include <spawn.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spoofbench/error.h"
#include "spoofbench/resample.h"

extern char **environ;

namespace spoofbench {

namespace {

std::vector<std::string> SplitTemplate(const std::string &tmpl) {
  std::istringstream in(tmpl);
  std::vector<std::string> argv;
  std::string word;
  while (in >> word) argv.push_back(word);
  return argv;
}

std::string Substitute(std::string arg, const std::string &key,
                       const std::string &value) {
  for (std::size_t pos = arg.find(key); pos != std::string::npos;
       pos = arg.find(key, pos + value.size()))
    arg.replace(pos, key.size(), value);
  return arg;
}

std::vector<std::string> Expand(const std::string &tmpl, const std::string &in,
                                const std::string &out,
                                const std::string &bitrate) {
  auto argv = SplitTemplate(tmpl);
  for (auto &a : argv)
    a = Substitute(Substitute(Substitute(a, "{in}", in), "{out}", out),
                   "{bitrate}", bitrate);
  return argv;
}

bool IsExecutable(const std::string &path) {
  struct stat st;
  return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
         ::access(path.c_str(), X_OK) == 0;
}

/// Removes the directory tree when it goes out of scope.
class TempDir {
 public:
  TempDir() {
    std::string base = (std::filesystem::temp_directory_path() /
                        "spoofbench-codec-XXXXXX").string();
    if (::mkdtemp(base.data()) == nullptr)
      throw ExternalToolError(std::string("cannot create temp dir: ") +
                              std::strerror(errno));
    path_ = base;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

CodecRegistry CodecRegistry::FromJson(const std::string &text,
                                      const std::string &source) {
  std::map<std::string, EncoderSpec> table;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto &[key, _] : j.items())
      if (key != "encoders")
        throw UsageError(source + ": unknown key '" + key + "'");
    for (const auto &[id, entry] : j.at("encoders").items()) {
      EncoderSpec spec;
      for (const auto &[key, value] : entry.items()) {
        if (key == "encode")
          spec.encode = value.get<std::string>();
        else if (key == "decode")
          spec.decode = value.get<std::string>();
        else if (key == "extension")
          spec.extension = value.get<std::string>();
        else
          throw UsageError(source + ": encoder '" + id + "' has unknown key '" +
                           key + "'");
      }
      if (SplitTemplate(spec.encode).empty() || SplitTemplate(spec.decode).empty())
        throw UsageError(source + ": encoder '" + id +
                         "' needs encode and decode templates");
      table.emplace(id, std::move(spec));
    }
  } catch (const nlohmann::json::exception &e) {
    throw UsageError(source + ": malformed encoder config: " + e.what());
  }
  return CodecRegistry(std::move(table));
}

CodecRegistry CodecRegistry::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open encoder config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return FromJson(text.str(), path.string());
}

CodecRegistry CodecRegistry::FromEnvironment() {
  const char *path = std::getenv("SPOOFBENCH_ENCODERS");
  if (path == nullptr || *path == '\0') return CodecRegistry();
  return Load(path);
}

const EncoderSpec &CodecRegistry::Get(const std::string &id) const {
  auto it = encoders_.find(id);
  if (it == encoders_.end())
    throw ExternalToolError("encoder '" + id +
                            "' is not declared in the encoder config");
  return it->second;
}

void CodecRegistry::CheckAvailable(const std::string &id) const {
  const EncoderSpec &spec = Get(id);
  for (const auto *tmpl : {&spec.encode, &spec.decode}) {
    const auto argv = SplitTemplate(*tmpl);
    if (FindExecutable(argv[0]).empty())
      throw ExternalToolError("encoder '" + id + "': binary '" + argv[0] +
                              "' not found");
  }
}

std::string FindExecutable(const std::string &name) {
  if (name.empty()) return "";
  if (name.find('/') != std::string::npos)
    return IsExecutable(name) ? name : "";
  const char *path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "/usr/bin:/bin");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    const std::string candidate = (dir.empty() ? "." : dir) + "/" + name;
    if (IsExecutable(candidate)) return candidate;
  }
  return "";
}

void RunProcess(const std::vector<std::string> &argv) {
  if (argv.empty()) throw ExternalToolError("empty command");
  const std::string exe = FindExecutable(argv[0]);
  if (exe.empty()) throw ExternalToolError("binary '" + argv[0] + "' not found");
  std::vector<char *> args;
  for (const auto &a : argv) args.push_back(const_cast<char *>(a.c_str()));
  args.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  pid_t pid;
  const int rc = ::posix_spawn(&pid, exe.c_str(), &actions, nullptr, args.data(),
                               environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0)
    throw ExternalToolError("cannot start '" + argv[0] + "': " + std::strerror(rc));
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR)
      throw ExternalToolError("waitpid failed for '" + argv[0] + "'");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw ExternalToolError(
        "'" + argv[0] + "' failed with " +
        (WIFEXITED(status) ? "exit status " + std::to_string(WEXITSTATUS(status))
                           : std::string("a signal")));
}

Waveform ExternalCodecRoundTrip(const Waveform &x, const CodecRegistry &codecs,
                                const std::string &encoder_id,
                                const std::string &bitrate) {
  codecs.CheckAvailable(encoder_id);
  const EncoderSpec &spec = codecs.Get(encoder_id);
  TempDir dir;
  const std::string input = (dir.path() / "input.wav").string();
  const std::string coded = (dir.path() / ("coded." + spec.extension)).string();
  const std::string output = (dir.path() / "output.wav").string();
  WriteWav(input, x);
  RunProcess(Expand(spec.encode, input, coded, bitrate));
  RunProcess(Expand(spec.decode, coded, output, bitrate));
  Waveform decoded;
  try {
    decoded = ReadWav(std::filesystem::path(output));
  } catch (const DataError &e) {
    throw ExternalToolError("encoder '" + encoder_id +
                            "' produced unreadable output: " + e.what());
  }
  if (decoded.sample_rate != x.sample_rate)
    decoded = Resample(decoded, x.sample_rate);
  decoded.samples.resize(x.size(), 0.0);
  return decoded;
}

}  // namespace spoofbench
