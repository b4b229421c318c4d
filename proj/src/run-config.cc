// src/run-config.cc

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

#include "spoofbench/run-config.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spoofbench/error.h"

namespace spoofbench {

namespace {

using nlohmann::json;

void CheckKeys(const json &obj, std::initializer_list<const char *> known,
               const std::string &where) {
  if (!obj.is_object()) throw UsageError(where + ": expected an object");
  for (const auto &[key, _] : obj.items()) {
    bool ok = false;
    for (const char *k : known) ok |= key == k;
    if (!ok) throw UsageError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void Take(const json &obj, const char *key, T &out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

CostModel CostModelFromJson(const json &j, const std::string &source) {
  CheckKeys(j, {"dcf", "adcf"}, source);
  CostModel m;
  if (j.contains("dcf")) {
    const auto &d = j.at("dcf");
    CheckKeys(d, {"c_miss", "c_fa", "p_target"}, source + ": dcf");
    Take(d, "c_miss", m.dcf.c_miss);
    Take(d, "c_fa", m.dcf.c_fa);
    Take(d, "p_target", m.dcf.p_target);
  }
  if (j.contains("adcf")) {
    const auto &a = j.at("adcf");
    CheckKeys(a, {"c_miss", "c_fa_nontarget", "c_fa_spoof", "p_target",
                  "p_nontarget", "p_spoof"},
              source + ": adcf");
    Take(a, "c_miss", m.adcf.c_miss);
    Take(a, "c_fa_nontarget", m.adcf.c_fa_nontarget);
    Take(a, "c_fa_spoof", m.adcf.c_fa_spoof);
    Take(a, "p_target", m.adcf.p_target);
    Take(a, "p_nontarget", m.adcf.p_nontarget);
    Take(a, "p_spoof", m.adcf.p_spoof);
  }
  m.dcf.Validate();
  m.adcf.Validate();
  return m;
}

std::string Slurp(const std::filesystem::path &path, const char *what) {
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot open ") + what + " '" +
                            path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::filesystem::path Resolve(const std::filesystem::path &p,
                              const std::filesystem::path &base) {
  return p.is_relative() && !base.empty() ? base / p : p;
}

}  // namespace

CostModel ParseCostModel(const std::string &text, const std::string &source) {
  try {
    return CostModelFromJson(json::parse(text), source);
  } catch (const json::exception &e) {
    throw UsageError(source + ": malformed cost model: " + e.what());
  }
}

CostModel LoadCostModel(const std::filesystem::path &path) {
  return ParseCostModel(Slurp(path, "cost model"), path.string());
}

RunConfig ParseRunConfig(const std::string &text, const std::string &source,
                         const std::filesystem::path &base_dir) {
  RunConfig cfg;
  try {
    const json j = json::parse(text);
    CheckKeys(j, {"cost_model", "optimizer", "augment_plan", "workers", "out"},
              source);
    if (j.contains("cost_model")) {
      const auto &c = j.at("cost_model");
      cfg.cost_model = c.is_string()
                           ? LoadCostModel(Resolve(c.get<std::string>(), base_dir))
                           : CostModelFromJson(c, source + ": cost_model");
    }
    if (j.contains("optimizer")) {
      const auto &o = j.at("optimizer");
      CheckKeys(o, {"rho_begin", "rho_end", "max_evaluations", "polish_step",
                    "polish_radius", "unconstrained", "lattice_budget"},
                source + ": optimizer");
      OptimizerSettings s;
      Take(o, "rho_begin", s.rho_begin);
      Take(o, "rho_end", s.rho_end);
      Take(o, "max_evaluations", s.max_evaluations);
      Take(o, "polish_step", s.polish_step);
      Take(o, "polish_radius", s.polish_radius);
      Take(o, "unconstrained", s.unconstrained);
      Take(o, "lattice_budget", s.lattice_budget);
      if (!(s.rho_end > 0.0 && s.rho_end <= s.rho_begin) || s.max_evaluations < 1 ||
          !(s.polish_step >= 0.0) || s.polish_radius < 0 || s.lattice_budget < 0)
        throw UsageError(source + ": invalid optimizer settings");
      cfg.optimizer = s;
    }
    if (j.contains("augment_plan"))
      cfg.augment_plan = Resolve(j.at("augment_plan").get<std::string>(), base_dir);
    if (j.contains("workers")) {
      cfg.workers = j.at("workers").get<int>();
      if (*cfg.workers < 1) throw UsageError(source + ": workers must be >= 1");
    }
    if (j.contains("out")) cfg.out = Resolve(j.at("out").get<std::string>(), base_dir);
  } catch (const json::exception &e) {
    throw UsageError(source + ": malformed config: " + e.what());
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::filesystem::path &path) {
  return ParseRunConfig(Slurp(path, "config"), path.string(), path.parent_path());
}

}  // namespace spoofbench
