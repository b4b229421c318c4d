// tools/cmd-scores.cc

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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "cli-common.h"
#include "json.hpp"
#include "spoofbench/cascade.h"
#include "spoofbench/det-plot.h"
#include "spoofbench/error.h"
#include "spoofbench/fusion.h"
#include "spoofbench/qmf.h"

namespace spoofbench::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream OpenOut(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

/// Finite values as JSON numbers, infinities as "inf" / "-inf".
ordered_json Real(double v) {
  if (std::isfinite(v)) return v;
  return FormatReal(v);
}

std::string SystemName(const std::string &path) {
  return std::filesystem::path(path).stem().string();
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string scores, key, cost_model, out;
  bool per_attack = false;
  bool no_normalize = false;
  int workers = 0;
};

int RunEvaluate(const EvaluateOptions &o, const Globals &g) {
  const CostModel cost = ResolveCostModel(o.cost_model, g);
  const ScoreSet labeled = ReadLabeled(o.scores, o.key);
  const bool normalize = !o.no_normalize;
  const bool sasv = labeled.domain() == LabelDomain::kSasv;
  const double eer = ComputeEer(labeled);
  const DcfResult dcf = sasv ? MinADcf(labeled, cost.adcf, normalize)
                             : MinDcf(labeled, cost.dcf, normalize);
  const char *cost_name = sasv ? "min a-DCF" : "minDCF";
  const char *cost_key = sasv ? "min_adcf" : "min_dcf";

  const ClassScores classes = SplitByClass(labeled);
  if (sasv)
    std::cout << "trials " << labeled.size() << " (target "
              << classes.positives.size() << ", nontarget "
              << classes.nontargets.size() << ", spoof " << classes.spoofs.size()
              << ")\n";
  else
    std::cout << "trials " << labeled.size() << " (bonafide "
              << classes.positives.size() << ", spoof "
              << classes.negatives.size() << ")\n";
  std::cout << "EER " << Fixed(eer) << ", " << cost_name << " "
            << Fixed(dcf.value) << "\n";

  std::optional<AttackBreakdown> breakdown;
  if (o.per_attack) {
    breakdown = PerAttackBreakdown(labeled, cost, normalize,
                                   ResolveWorkers(o.workers, g));
    std::cout << "\n"
              << std::left << std::setw(10) << "attack" << std::setw(8)
              << "#spoof" << std::setw(10) << "EER" << cost_name << "\n";
    for (const auto &row : breakdown->rows)
      std::cout << std::left << std::setw(10) << row.attack << std::setw(8)
                << row.num_spoof << std::setw(10) << Fixed(row.eer)
                << Fixed(row.cost) << "\n";
  }

  if (auto out = ResolveOut(o.out, g)) {
    std::ofstream csv = OpenOut(*out / "evaluate.csv");
    csv << "scope,num_spoof,eer," << cost_key << ",threshold\n";
    csv << "pooled," << (sasv ? classes.spoofs.size() : classes.negatives.size())
        << ',' << FormatReal(eer) << ',' << FormatReal(dcf.value) << ','
        << FormatReal(dcf.threshold) << "\n";
    if (breakdown) {
      std::ofstream per = OpenOut(*out / "per_attack.csv");
      per << "attack,num_spoof,eer," << cost_key << "\n";
      for (const auto &row : breakdown->rows)
        per << row.attack << ',' << row.num_spoof << ',' << FormatReal(row.eer)
            << ',' << FormatReal(row.cost) << "\n";
    }
  }
  return 0;
}

// --------------------------------------------------------------- det-curve

struct DetOptions {
  std::string scores, key, out;
};

int RunDetCurve(const DetOptions &o, const Globals &g) {
  const ScoreSet labeled = ReadLabeled(o.scores, o.key);
  const DetCurve curve = ComputeDetCurve(labeled);
  auto out = ResolveOut(o.out, g);
  if (!out) {
    WriteDetCsv(std::cout, curve);
    return 0;
  }
  std::ofstream csv = OpenOut(*out / "det.csv");
  WriteDetCsv(csv, curve);
  std::ofstream svg = OpenOut(*out / "det.svg");
  WriteDetSvg(svg, {{SystemName(o.scores), curve}});
  std::cout << "wrote " << curve.points.size() << " operating points to "
            << (*out / "det.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------ synth-scores

struct SynthCliOptions {
  std::string classes, attacks, name = "system", out;
  double sigma = 1.0;
  double quality_bias = 0.0;
  std::uint64_t seed = 0;
  bool qualities = false;
};

std::vector<SynthClass> ParseClasses(const std::string &spec) {
  std::vector<std::tuple<std::string, std::size_t, double>> raw;
  std::istringstream items(spec);
  std::string item;
  bool sasv = false;
  while (std::getline(items, item, ',')) {
    const auto eq = item.find('='), colon = item.find(':');
    if (eq == std::string::npos || colon == std::string::npos || colon < eq)
      throw UsageError("bad class spec '" + item + "' (expected label=count:mean)");
    const std::string label = item.substr(0, eq);
    std::size_t count;
    double mean;
    try {
      count = std::stoul(item.substr(eq + 1, colon - eq - 1));
      mean = std::stod(item.substr(colon + 1));
    } catch (const std::exception &) {
      throw UsageError("bad class spec '" + item + "'");
    }
    sasv |= label == "target" || label == "nontarget";
    raw.emplace_back(label, count, mean);
  }
  std::vector<SynthClass> out;
  for (const auto &[label, count, mean] : raw) {
    Label l;
    if (label == "bonafide") l = Label::kBonafide;
    else if (label == "target") l = Label::kTarget;
    else if (label == "nontarget") l = Label::kNonTarget;
    else if (label == "spoof") l = sasv ? Label::kSpoofImpostor : Label::kSpoof;
    else throw UsageError("unknown class label '" + label + "'");
    out.push_back({l, count, mean});
  }
  return out;
}

int RunSynth(const SynthCliOptions &o, const Globals &g) {
  SynthOptions opts;
  opts.classes = ParseClasses(o.classes);
  opts.sigma = o.sigma;
  opts.seed = o.seed;
  opts.qualities = o.qualities;
  opts.quality_bias = o.quality_bias;
  if (!o.attacks.empty()) {
    std::istringstream ids(o.attacks);
    std::string id;
    while (std::getline(ids, id, ',')) opts.attacks.push_back(id);
  }
  const ScoreSet set = SynthesizeScores(opts);
  const auto out = RequireOut(o.out, g);
  WriteScoreFile(out / (o.name + ".scores"), set);
  std::ofstream key = OpenOut(out / (o.name + ".key"));
  WriteKey(key, set);
  if (o.qualities) {
    std::ofstream q = OpenOut(out / (o.name + ".quality"));
    WriteQualities(q, set);
  }
  std::cout << "wrote " << set.size() << " trials to "
            << (out / (o.name + ".scores")).string() << "\n";
  return 0;
}

// -------------------------------------------------------------------- fuse

struct FuseOptions {
  std::vector<std::string> scores;
  std::string weights, key, normalize = "none", objective = "min-dcf", cost_model,
                           out;
  bool optimize = false;
  bool unconstrained = false;
  bool multi_duration = false;
};

void CheckIdenticalTrials(const std::vector<ScoreSet> &sets) {
  std::set<std::string> first;
  for (const auto &r : sets[0].records()) first.insert(r.trial);
  for (std::size_t s = 1; s < sets.size(); ++s) {
    std::set<std::string> ids;
    for (const auto &r : sets[s].records()) ids.insert(r.trial);
    if (ids != first)
      throw DataError("multi-duration fusion: system " + std::to_string(s + 1) +
                      " does not cover the same trials as system 1");
  }
}

int RunFuse(const FuseOptions &o, const Globals &g) {
  if (o.scores.size() < 2) throw UsageError("fusion needs at least two score files");
  if (o.optimize == !o.weights.empty())
    throw UsageError("give exactly one of --weights FILE or --optimize");
  if (o.optimize && o.key.empty()) throw UsageError("--optimize needs --key");

  std::vector<std::string> names;
  std::vector<ScoreSet> sets;
  for (const auto &path : o.scores) {
    names.push_back(SystemName(path));
    sets.push_back(o.optimize ? ReadLabeled(path, o.key) : ReadScoreFile(path));
  }
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
    throw UsageError("score files must have distinct base names");
  if (o.multi_duration) CheckIdenticalTrials(sets);
  AlignedScores aligned = AlignSystems(sets);
  for (std::size_t s = 0; s < names.size(); ++s)
    if (aligned.dropped[s] > 0)
      std::cerr << "warning: " << names[s] << ": " << aligned.dropped[s]
                << " trial(s) not scored by every system were dropped\n";
  aligned = NormalizeSystems(aligned, ParseNormalizeMethod(o.normalize));

  const auto out = ResolveOut(o.out, g);
  FusionWeights weights;
  if (o.optimize) {
    OptimizerSettings settings = g.config.optimizer.value_or(OptimizerSettings{});
    if (o.unconstrained) settings.unconstrained = true;
    FusionObjective objective;
    if (o.objective == "min-dcf") objective = FusionObjective::kMinDcf;
    else if (o.objective == "eer") objective = FusionObjective::kEer;
    else throw UsageError("unknown objective '" + o.objective + "'");
    FusionProblem problem(aligned, objective, ResolveCostModel(o.cost_model, g).dcf,
                          settings);
    std::ostringstream trace;
    trace << "phase,evaluation,objective";
    for (const auto &n : names) trace << ",w_" << n;
    trace << "\n";
    OptimizeResult result = OptimizeWeightsSeeded(problem);
    for (const auto &e : result.trace) {
      trace << e.phase << ',' << e.evaluation << ',' << FormatReal(e.objective);
      for (double w : e.weights) trace << ',' << FormatReal(w);
      trace << "\n";
    }
    std::cout << trace.str();
    std::cout << "objective " << FormatReal(result.objective) << " after "
              << result.evaluations << " evaluations"
              << (result.budget_exhausted ? " (budget exhausted)" : "") << "\n";
    if (out) {
      std::ofstream t = OpenOut(*out / "trace.csv");
      t << trace.str();
    }
    weights = result.weights;
  } else {
    const auto table = ReadWeightsFile(o.weights);
    std::vector<double> w(names.size());
    std::vector<bool> seen(names.size(), false);
    for (const auto &[name, value] : table) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end())
        throw DataError(o.weights + ": weight for unknown system '" + name + "'");
      w[it - names.begin()] = value;
      seen[it - names.begin()] = true;
    }
    for (std::size_t s = 0; s < names.size(); ++s)
      if (!seen[s])
        throw DataError(o.weights + ": no weight for system '" + names[s] + "'");
    const bool simplex = std::all_of(w.begin(), w.end(), [](double v) { return v >= 0.0; });
    weights = FusionWeights(w, simplex);
  }

  const ScoreSet fused = Fuse(aligned, weights);
  if (out) {
    WriteScoreFile(*out / "fused.scores", fused);
    std::ofstream wf = OpenOut(*out / "weights.txt");
    WriteWeights(wf, names, weights);
  } else if (!o.optimize) {
    WriteScores(std::cout, fused);
  } else {
    WriteWeights(std::cout, names, weights);
  }
  return 0;
}

// --------------------------------------------------------------- calibrate

struct CalibrateOptions {
  std::string dev_scores, dev_key, dev_quality, eval_scores, eval_quality, model,
      cost_model, out;
  double lambda = 1e-2;
};

double DevCost(const ScoreSet &labeled, const CostModel &cost) {
  return labeled.domain() == LabelDomain::kSasv ? MinADcf(labeled, cost.adcf).value
                                                : MinDcf(labeled, cost.dcf).value;
}

int RunCalibrate(const CalibrateOptions &o, const Globals &g) {
  const auto &schema = DefaultQualitySchema();
  const auto out = RequireOut(o.out, g);
  const CostModel cost = ResolveCostModel(o.cost_model, g);
  std::optional<QmfModel> model;
  if (!o.model.empty()) model = LoadQmfModel(o.model);

  if (!o.dev_scores.empty()) {
    if (o.dev_quality.empty()) throw UsageError("--dev-scores needs --dev-quality");
    ScoreSet dev = o.dev_key.empty() ? ReadScoreFile(o.dev_scores)
                                     : ReadLabeled(o.dev_scores, o.dev_key);
    dev = AttachQualities(dev, ReadQualityFile(o.dev_quality), schema);
    if (!model) {
      if (!dev.labeled()) throw UsageError("fitting a QMF model needs --dev-key");
      QmfFitOptions fit;
      fit.l2_lambda = o.lambda;
      model = FitQmf(dev, schema, fit);
      SaveQmfModel(out / "qmf.json", *model);
    }
    const ScoreSet calibrated = ApplyQmf(*model, dev);
    WriteScoreFile(out / "dev.scores", calibrated);
    if (dev.labeled()) {
      const char *name = dev.domain() == LabelDomain::kSasv ? "min a-DCF" : "minDCF";
      std::cout << "dev " << name << " before " << Fixed(DevCost(dev, cost))
                << ", after " << Fixed(DevCost(calibrated, cost)) << "\n";
    }
  }
  if (!model) throw UsageError("give --model or a dev set to fit on");
  if (!o.eval_scores.empty()) {
    if (o.eval_quality.empty()) throw UsageError("--eval-scores needs --eval-quality");
    const ScoreSet eval = AttachQualities(ReadScoreFile(o.eval_scores),
                                          ReadQualityFile(o.eval_quality), schema);
    WriteScoreFile(out / "eval.scores", ApplyQmf(*model, eval));
    std::cout << "calibrated " << eval.size() << " eval trials\n";
  }
  return 0;
}

// ----------------------------------------------------------------- cascade

struct CascadeOptions {
  std::string gate, scorer, dev_gate, dev_scorer, key, eval_key,
      gate_role = "asv-gates-cm", cost_model, out;
  std::optional<double> gate_threshold, floor;
  bool exact_floor = false;
};

int RunCascade(const CascadeOptions &o, const Globals &g) {
  const CostModel cost = ResolveCostModel(o.cost_model, g);
  CascadeConfig cfg;
  cfg.gate_role = ParseGateRole(o.gate_role);

  const bool have_dev = !o.dev_gate.empty() || !o.dev_scorer.empty();
  if (have_dev && (o.dev_gate.empty() || o.dev_scorer.empty() || o.key.empty()))
    throw UsageError("--dev-gate, --dev-scorer and --key go together");
  std::optional<ScoreSet> dev_gate, dev_scorer;
  if (have_dev) {
    dev_gate = ReadLabeled(o.dev_gate, o.key);
    dev_scorer = ReadLabeled(o.dev_scorer, o.key);
  }

  if (o.floor) {
    cfg.floor_score = *o.floor;
    if (dev_scorer && cfg.floor_score > ComputeFloor(*dev_scorer))
      throw UsageError("--floor is above the minimum dev scorer score");
  } else if (dev_scorer) {
    cfg.floor_score = o.exact_floor ? ComputeFloor(*dev_scorer)
                                    : DefaultFloor(*dev_scorer);
  } else {
    throw UsageError("need --floor or a dev set to derive it from");
  }

  std::optional<GateSelection> selection;
  if (o.gate_threshold) {
    cfg.gate_threshold = *o.gate_threshold;
  } else if (dev_gate) {
    selection = SelectGateThreshold(*dev_gate, *dev_scorer, cfg, cost.adcf);
    cfg.gate_threshold = selection->gate_threshold;
  } else {
    throw UsageError("need --gate-threshold or a dev set to select it on");
  }
  cfg.Validate();

  ScoreSet gate = ReadScoreFile(o.gate);
  ScoreSet scorer = ReadScoreFile(o.scorer);
  if (!o.eval_key.empty()) {
    gate = ReadLabeled(o.gate, o.eval_key);
    scorer = ReadLabeled(o.scorer, o.eval_key);
  }
  const ScoreSet sasv = CascadeScore(gate, scorer, cfg);

  ordered_json summary;
  summary["gate_role"] = GateRoleName(cfg.gate_role);
  summary["gate_threshold"] = Real(cfg.gate_threshold);
  summary["floor_score"] = Real(cfg.floor_score);
  if (selection) {
    summary["dev_min_adcf"] = selection->dev_min_adcf;
    summary["candidates"] = selection->candidates;
  }
  std::cout << "gate_threshold " << FormatReal(cfg.gate_threshold) << ", floor "
            << FormatReal(cfg.floor_score);
  if (selection) std::cout << ", dev min a-DCF " << Fixed(selection->dev_min_adcf);
  std::cout << "\n";
  if (sasv.labeled() && sasv.domain() == LabelDomain::kSasv) {
    const double eval_cost = MinADcf(sasv, cost.adcf).value;
    summary["eval_min_adcf"] = eval_cost;
    std::cout << "eval min a-DCF " << Fixed(eval_cost) << "\n";
  }

  if (auto out = ResolveOut(o.out, g)) {
    // Keep the output unlabeled like any other score file.
    std::vector<ScoreRecord> records;
    for (const auto &r : sasv.records()) records.push_back({r.trial, r.score, {}, {}, {}});
    WriteScoreFile(*out / "sasv.scores", ScoreSet(std::move(records)));
    std::ofstream s = OpenOut(*out / "cascade.json");
    s << summary.dump(2) << "\n";
  } else {
    for (const auto &r : sasv.records())
      std::cout << r.trial << '\t' << FormatReal(r.score) << '\n';
  }
  return 0;
}

}  // namespace

void RegisterScoreCommands(CLI::App &app, Globals &g, std::vector<Command> &out) {
  {
    auto o = std::make_shared<EvaluateOptions>();
    auto *sub = app.add_subcommand(
        "evaluate", "EER and minDCF (or min a-DCF for SASV keys) of a score file");
    sub->add_option("scores", o->scores, "Score file (trial<TAB>score)")
        ->required()->check(CLI::ExistingFile);
    sub->add_option("--key", o->key, "Key file (trial<TAB>label[<TAB>attack])")
        ->required()->check(CLI::ExistingFile);
    sub->add_option("--cost-model", o->cost_model, "Cost model JSON")
        ->check(CLI::ExistingFile);
    sub->add_flag("--per-attack", o->per_attack, "Add a per-attack breakdown");
    sub->add_flag("--no-normalize", o->no_normalize, "Report unnormalised costs");
    sub->add_option("--workers", o->workers, "Threads for the per-attack table");
    sub->add_option("--out", o->out, "Directory for evaluate.csv / per_attack.csv");
    out.push_back({sub, [o, &g] { return RunEvaluate(*o, g); }});
  }
  {
    auto o = std::make_shared<DetOptions>();
    auto *sub = app.add_subcommand("det-curve", "Exhaustive DET operating points");
    sub->add_option("scores", o->scores, "Score file")->required()->check(CLI::ExistingFile);
    sub->add_option("--key", o->key, "Key file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Directory for det.csv and det.svg (else CSV to stdout)");
    out.push_back({sub, [o, &g] { return RunDetCurve(*o, g); }});
  }
  {
    auto o = std::make_shared<SynthCliOptions>();
    auto *sub = app.add_subcommand("synth-scores", "Seeded Gaussian score fixtures");
    sub->add_option("--classes", o->classes,
                    "Comma list of label=count:mean, e.g. bonafide=500:2,spoof=500:-2")
        ->required();
    sub->add_option("--sigma", o->sigma, "Common class standard deviation");
    sub->add_option("--seed", o->seed, "Random seed")->required();
    sub->add_option("--attacks", o->attacks, "Comma list of attack ids for spoof trials");
    sub->add_flag("--qualities", o->qualities, "Also write a quality sidecar");
    sub->add_option("--quality-bias", o->quality_bias,
                    "Score shift proportional to the normalised test duration");
    sub->add_option("--name", o->name, "Base name of the written files");
    sub->add_option("--out", o->out, "Output directory");
    out.push_back({sub, [o, &g] { return RunSynth(*o, g); }});
  }
  {
    auto o = std::make_shared<FuseOptions>();
    auto *sub = app.add_subcommand("fuse", "Weighted linear score fusion");
    sub->add_option("scores", o->scores, "Score files, one per system (>= 2)")
        ->required()->check(CLI::ExistingFile);
    sub->add_option("--weights", o->weights, "system<TAB>weight file (system = file stem)")
        ->check(CLI::ExistingFile);
    sub->add_flag("--optimize", o->optimize, "Search weights on labeled data");
    sub->add_option("--key", o->key, "Key file for --optimize")->check(CLI::ExistingFile);
    sub->add_option("--normalize", o->normalize, "none, zscore or minmax")
        ->check(CLI::IsMember({"none", "zscore", "minmax"}));
    sub->add_option("--objective", o->objective, "min-dcf or eer")
        ->check(CLI::IsMember({"min-dcf", "eer"}));
    sub->add_option("--cost-model", o->cost_model, "Cost model JSON")
        ->check(CLI::ExistingFile);
    sub->add_flag("--unconstrained", o->unconstrained,
                  "Allow negative weights (they still sum to one)");
    sub->add_flag("--multi-duration", o->multi_duration,
                  "Inputs are one system at several crop durations");
    sub->add_option("--out", o->out, "Directory for fused.scores, weights.txt, trace.csv");
    out.push_back({sub, [o, &g] { return RunFuse(*o, g); }});
  }
  {
    auto o = std::make_shared<CalibrateOptions>();
    auto *sub = app.add_subcommand("calibrate", "Quality measure function calibration");
    sub->add_option("--dev-scores", o->dev_scores, "Dev score file")->check(CLI::ExistingFile);
    sub->add_option("--dev-key", o->dev_key, "Dev key")->check(CLI::ExistingFile);
    sub->add_option("--dev-quality", o->dev_quality, "Dev quality sidecar")
        ->check(CLI::ExistingFile);
    sub->add_option("--eval-scores", o->eval_scores, "Eval score file")
        ->check(CLI::ExistingFile);
    sub->add_option("--eval-quality", o->eval_quality, "Eval quality sidecar")
        ->check(CLI::ExistingFile);
    sub->add_option("--model", o->model, "Apply this saved model instead of fitting")
        ->check(CLI::ExistingFile);
    sub->add_option("--lambda", o->lambda, "L2 penalty on the non-bias weights");
    sub->add_option("--cost-model", o->cost_model, "Cost model JSON")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Directory for qmf.json, dev.scores, eval.scores");
    out.push_back({sub, [o, &g] { return RunCalibrate(*o, g); }});
  }
  {
    auto o = std::make_shared<CascadeOptions>();
    auto *sub = app.add_subcommand("cascade", "Gate/scorer tandem SASV scores");
    sub->add_option("--gate", o->gate, "Eval gate scores")->required()->check(CLI::ExistingFile);
    sub->add_option("--scorer", o->scorer, "Eval scorer scores")
        ->required()->check(CLI::ExistingFile);
    sub->add_option("--dev-gate", o->dev_gate, "Dev gate scores")->check(CLI::ExistingFile);
    sub->add_option("--dev-scorer", o->dev_scorer, "Dev scorer scores")
        ->check(CLI::ExistingFile);
    sub->add_option("--key", o->key, "SASV dev key")->check(CLI::ExistingFile);
    sub->add_option("--eval-key", o->eval_key, "SASV eval key (report only)")
        ->check(CLI::ExistingFile);
    sub->add_option("--gate-role", o->gate_role, "asv-gates-cm or cm-gates-asv")
        ->check(CLI::IsMember({"asv-gates-cm", "cm-gates-asv"}));
    sub->add_option("--gate-threshold", o->gate_threshold, "Fixed gate threshold");
    sub->add_option("--floor", o->floor, "Fixed floor score");
    sub->add_flag("--exact-floor", o->exact_floor,
                  "Floor = dev scorer minimum without the 1e-6 margin");
    sub->add_option("--cost-model", o->cost_model, "Cost model JSON")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "Directory for sasv.scores and cascade.json");
    out.push_back({sub, [o, &g] { return RunCascade(*o, g); }});
  }
}

}  // namespace spoofbench::cli
