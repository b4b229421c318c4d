// src/cobyla.cc

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

#include "spoofbench/cobyla.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "spoofbench/error.h"

namespace spoofbench {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Simplex acceptability thresholds and geometry step length (Powell's
// alpha, beta and gamma), and the ratio that counts as a productive step.
constexpr double kAlpha = 0.25;
constexpr double kBeta = 2.1;
constexpr double kGamma = 0.5;
constexpr double kDelta = 1.1;
constexpr double kProductiveRatio = 0.1;

struct Vertex {
  VectorXd x;
  double f = 0.0;
  VectorXd c;
  double violation = 0.0;
};

class BudgetExhausted {};

/// Minimise g.d subject to c + A d >= 0 and |d| <= rho.  Constraints are
/// made active one at a time (most violated first) and the step is the
/// min-norm point of the active set plus the projected steepest descent
/// direction scaled to the trust-region boundary.
VectorXd SolveSubproblem(const VectorXd &g, const MatrixXd &a,
                         const VectorXd &c, double rho) {
  const Eigen::Index n = g.size();
  const Eigen::Index m = c.size();
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < m; ++k)
    if (c(k) < 0.0) active.push_back(k);
  // Keep at most n of the initially violated constraints, most violated
  // first.
  std::sort(active.begin(), active.end(),
            [&](Eigen::Index x, Eigen::Index y) { return c(x) < c(y); });
  if (static_cast<Eigen::Index>(active.size()) > n) active.resize(n);

  VectorXd d = VectorXd::Zero(n);
  for (Eigen::Index iter = 0; iter <= m; ++iter) {
    VectorXd particular = VectorXd::Zero(n);
    MatrixXd projector = MatrixXd::Identity(n, n);
    if (!active.empty()) {
      MatrixXd normals(active.size(), n);
      VectorXd rhs(active.size());
      for (std::size_t i = 0; i < active.size(); ++i) {
        normals.row(i) = a.row(active[i]);
        rhs(i) = -c(active[i]);
      }
      Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(normals);
      particular = cod.solve(rhs);
      MatrixXd pinv = cod.pseudoInverse();
      projector -= pinv * normals;
    }
    const double pnorm = particular.norm();
    if (pnorm >= rho) {
      d = particular * (rho / pnorm);
      break;
    }
    VectorXd pg = projector * g;
    const double pgnorm = pg.norm();
    if (pgnorm <= 1e-14 * std::max(1.0, g.norm())) {
      d = particular;
    } else {
      const double room = std::sqrt(rho * rho - pnorm * pnorm);
      d = particular - (room / pgnorm) * pg;
    }
    // Most violated inactive linearised constraint.
    Eigen::Index worst = -1;
    double worst_value = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (std::find(active.begin(), active.end(), k) != active.end()) continue;
      const double v = c(k) + a.row(k).dot(d);
      const double tol = 1e-12 * (1.0 + std::abs(c(k)));
      if (v < -tol && v < worst_value) {
        worst = k;
        worst_value = v;
      }
    }
    if (worst < 0 || static_cast<Eigen::Index>(active.size()) >= n) break;
    active.push_back(worst);
  }
  return d;
}

double PredictedViolation(const VectorXd &c, const MatrixXd &a,
                          const VectorXd &d) {
  double v = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k)
    v = std::max(v, -(c(k) + a.row(k).dot(d)));
  return v;
}

}  // namespace

CobylaResult MinimizeCobyla(const ObjectiveFn &objective,
                            std::span<const double> x0,
                            std::span<const ConstraintFn> constraints,
                            const CobylaOptions &options,
                            const CobylaMonitor &monitor) {
  if (!(options.rho_begin > 0.0) || !(options.rho_end > 0.0) ||
      options.rho_end > options.rho_begin)
    throw UsageError("COBYLA needs 0 < rho_end <= rho_begin");
  if (options.max_evaluations < 1)
    throw UsageError("COBYLA needs a positive evaluation budget");

  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  const Eigen::Index m = static_cast<Eigen::Index>(constraints.size());

  CobylaResult result;
  std::optional<Vertex> best_feasible;
  std::optional<Vertex> least_violating;
  double start_objective = 0.0;
  bool start_feasible = false;
  double rho = options.rho_begin;

  auto evaluate = [&](const VectorXd &x) -> Vertex {
    if (result.evaluations >= options.max_evaluations) throw BudgetExhausted();
    std::span<const double> view(x.data(), static_cast<std::size_t>(x.size()));
    Vertex v;
    v.x = x;
    v.f = objective(view);
    v.c.resize(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      v.c(k) = constraints[k](view);
      v.violation = std::max(v.violation, -v.c(k));
    }
    ++result.evaluations;
    if (!std::isfinite(v.f))
      throw UsageError("COBYLA objective returned a non-finite value");
    const bool feasible = v.violation <= options.feasibility_tol;
    if (result.evaluations == 1) {
      start_objective = v.f;
      start_feasible = feasible;
    }
    if (feasible && (!best_feasible || v.f < best_feasible->f)) {
      best_feasible = v;
      if (result.evaluations > 1 && (!start_feasible || v.f < start_objective))
        result.improved = true;
      if (monitor)
        monitor({result.evaluations, v.f, rho,
                 std::vector<double>(x.data(), x.data() + n)});
    }
    if (!least_violating || v.violation < least_violating->violation)
      least_violating = v;
    return v;
  };

  try {
    VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) start(i) = x0[i];
    std::vector<Vertex> sim;
    sim.push_back(evaluate(start));
    if (n == 0) throw BudgetExhausted();  // nothing to optimise

    auto build_simplex = [&]() {
      Vertex pole = sim[0];
      sim.assign(1, pole);
      for (Eigen::Index j = 0; j < n; ++j) {
        VectorXd x = pole.x;
        x(j) += rho;
        sim.push_back(evaluate(x));
      }
    };
    build_simplex();

    double mu = 0.0;
    MatrixXd dirs(n, n), simi(n, n);
    VectorXd g(n);
    MatrixXd a(m, n);

    // Make the lowest-merit vertex the pole and rebuild the inverse.  Returns
    // false when the simplex is singular and had to be rebuilt.
    auto analyse = [&]() -> bool {
      std::size_t pole = 0;
      for (std::size_t j = 1; j < sim.size(); ++j)
        if (sim[j].f + mu * sim[j].violation <
            sim[pole].f + mu * sim[pole].violation)
          pole = j;
      std::swap(sim[0], sim[pole]);
      for (Eigen::Index j = 0; j < n; ++j) dirs.col(j) = sim[j + 1].x - sim[0].x;
      Eigen::FullPivLU<MatrixXd> lu(dirs);
      if (!lu.isInvertible()) {
        build_simplex();
        return false;
      }
      simi = lu.inverse();
      VectorXd df(n);
      for (Eigen::Index j = 0; j < n; ++j) df(j) = sim[j + 1].f - sim[0].f;
      g = simi.transpose() * df;
      for (Eigen::Index k = 0; k < m; ++k) {
        VectorXd dc(n);
        for (Eigen::Index j = 0; j < n; ++j) dc(j) = sim[j + 1].c(k) - sim[0].c(k);
        a.row(k) = (simi.transpose() * dc).transpose();
      }
      return true;
    };

    // Replace the worst-shaped vertex with a point gamma*rho from the pole.
    // Returns false when the simplex is already acceptable.
    auto improve_geometry = [&]() -> bool {
      Eigen::Index far = -1, flat = -1;
      double far_len = kBeta * rho, flat_sig = kAlpha * rho;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double eta = dirs.col(j).norm();
        const double sig = 1.0 / simi.row(j).norm();
        if (eta > far_len) {
          far = j;
          far_len = eta;
        }
        if (sig < flat_sig) {
          flat = j;
          flat_sig = sig;
        }
      }
      const Eigen::Index j = far >= 0 ? far : flat;
      if (j < 0) return false;
      const double sig = 1.0 / simi.row(j).norm();
      VectorXd step = (kGamma * rho * sig) * simi.row(j).transpose();
      const double plus = g.dot(step) + mu * PredictedViolation(sim[0].c, a, step);
      const double minus =
          -g.dot(step) + mu * PredictedViolation(sim[0].c, a, -step);
      if (minus < plus) step = -step;
      sim[j + 1] = evaluate(sim[0].x + step);
      return true;
    };

    for (;;) {
      if (!analyse()) continue;
      VectorXd d = SolveSubproblem(g, a, sim[0].c, rho);
      bool reduce = d.norm() < 0.5 * rho;
      if (!reduce) {
        const double resnew = PredictedViolation(sim[0].c, a, d);
        const double prerec = sim[0].violation - resnew;
        const double preref = -g.dot(d);
        if (prerec > 0.0) {
          const double barmu = -preref / prerec;
          if (mu < 1.5 * barmu) {
            mu = 2.0 * barmu;
            const double pole_merit = sim[0].f + mu * sim[0].violation;
            bool pole_changed = false;
            for (std::size_t j = 1; j < sim.size(); ++j)
              pole_changed |= sim[j].f + mu * sim[j].violation < pole_merit;
            if (pole_changed) continue;
          }
        }
        const double prerem = preref + mu * prerec;
        Vertex trial = evaluate(sim[0].x + d);
        const double ared = (sim[0].f + mu * sim[0].violation) -
                            (trial.f + mu * trial.violation);
        const double ratio =
            prerem > 0.0 ? ared / prerem : (ared > 0.0 ? 1.0 : -1.0);

        VectorXd sigma = simi * d;
        Eigen::Index drop = -1;
        double threshold = ared > 0.0 ? 0.0 : 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
          double weight = std::abs(sigma(j));
          if (ared > 0.0) {
            const double dist = (sim[j + 1].x - trial.x).norm() / (kDelta * rho);
            weight *= std::max(1.0, dist * dist);
          }
          if (weight > threshold) {
            drop = j;
            threshold = weight;
          }
        }
        if (drop >= 0) sim[drop + 1] = std::move(trial);
        if (drop >= 0 && ratio >= kProductiveRatio) continue;
        if (drop >= 0 && !analyse()) continue;
      }
      if (improve_geometry()) continue;
      if (rho <= options.rho_end) break;
      rho *= 0.5;
      if (rho <= 1.5 * options.rho_end) rho = options.rho_end;
    }
    result.status = CobylaStatus::kConverged;
  } catch (const BudgetExhausted &) {
    result.status = n == 0 ? CobylaStatus::kConverged
                           : CobylaStatus::kBudgetExhausted;
  }

  const Vertex &chosen = best_feasible ? *best_feasible : *least_violating;
  result.x.assign(chosen.x.data(), chosen.x.data() + n);
  result.objective = chosen.f;
  result.max_violation = chosen.violation;
  result.final_rho = rho;
  return result;
}

}  // namespace spoofbench
