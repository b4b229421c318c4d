// include/spoofbench/cobyla.h

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

#ifndef SPOOFBENCH_COBYLA_H_
#define SPOOFBENCH_COBYLA_H_

#include <functional>
#include <span>
#include <vector>

namespace spoofbench {

/// Constrained Optimization BY Linear Approximation, after Powell (1994).
///
/// Minimises f(x) subject to c_k(x) >= 0 without derivatives.  A simplex of
/// n + 1 evaluated points defines linear models of f and of every c_k; each
/// iteration minimises the linear model of f under the linearised
/// constraints inside a trust region of radius rho, judges the step with the
/// merit function f + mu * max(0, -min_k c_k), and either keeps rho, improves
/// the simplex geometry, or halves rho.  The run ends when rho reaches
/// rho_end or the evaluation budget is spent.
///
/// Departures from the reference Fortran: the trust-region subproblem is
/// solved by an active-set projection instead of Powell's incremental
/// method, and mu is never decreased.
struct CobylaOptions {
  double rho_begin = 0.25;
  double rho_end = 1e-4;
  int max_evaluations = 2000;
  /// A point counts as feasible when every c_k(x) >= -feasibility_tol.
  double feasibility_tol = 1e-12;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;
/// Feasible iff the returned value is >= 0.
using ConstraintFn = std::function<double(std::span<const double>)>;

/// Reported each time the best feasible point strictly improves.
struct CobylaIterate {
  int evaluation = 0;
  double objective = 0.0;
  double rho = 0.0;
  std::vector<double> x;
};
using CobylaMonitor = std::function<void(const CobylaIterate &)>;

enum class CobylaStatus { kConverged, kBudgetExhausted };

struct CobylaResult {
  /// Best feasible point evaluated (least violation if none was feasible).
  std::vector<double> x;
  double objective = 0.0;
  double max_violation = 0.0;
  int evaluations = 0;
  CobylaStatus status = CobylaStatus::kConverged;
  /// True when some evaluated feasible point beat the starting point.
  bool improved = false;
  double final_rho = 0.0;
};

CobylaResult MinimizeCobyla(const ObjectiveFn &objective,
                            std::span<const double> x0,
                            std::span<const ConstraintFn> constraints,
                            const CobylaOptions &options = {},
                            const CobylaMonitor &monitor = {});

}  // namespace spoofbench

#endif  // SPOOFBENCH_COBYLA_H_
