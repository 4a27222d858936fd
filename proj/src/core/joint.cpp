/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "core/error.hpp"
#include "core/solver/ipm.hpp"
#include "core/solver/lp.hpp"

namespace hajlab::detail {

namespace {

double power_value(const std::vector<double>& coef, double p, const std::vector<double>& x) {
  double v = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) v += coef[k] * std::pow(std::max(x[k], 0.0), p);
  return v;
}

PowerSolution reweighted(const solver::RowMatrix& a, const std::vector<double>& coef, double p,
                         const SolverOptions& opts,
                         const std::vector<std::vector<double>>& extra_points) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(0.25, 4.0);

  std::vector<std::vector<double>> starts;
  const auto base = solver::solve_lp(a, coef);
  starts.push_back(base.x);
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    std::vector<double> c(coef);
    for (double& v : c) v *= jitter(rng);
    starts.push_back(solver::solve_lp(a, c).x);
  }
  for (const auto& pt : extra_points) {
    std::vector<double> x(pt);
    solver::repair_feasibility(a, coef, x);
    starts.push_back(std::move(x));
  }

  PowerSolution best;
  best.value = std::numeric_limits<double>::infinity();
  best.status = SolveStatus::kHeuristic;
  std::size_t total_iterations = 0;
  for (auto x : starts) {
    double val = power_value(coef, p, x);
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, v);
    double eps = std::max(scale, 1.0) * 0.1;
    for (std::size_t it = 0; it < 40; ++it, ++total_iterations) {
      // Majorize the concave power at the current point by its tangent.
      std::vector<double> c(coef.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = coef[k] * p * std::pow(std::max(x[k], 0.0) + eps, p - 1.0);
      }
      auto next = solver::solve_lp(a, c).x;
      const double nval = power_value(coef, p, next);
      if (nval <= val) {
        const bool stalled = val - nval <= 1e-12 * std::max(1.0, val);
        x = std::move(next);
        val = nval;
        if (stalled && eps < 1e-9) break;
      }
      eps = std::max(eps * 0.3, 1e-12);
    }
    if (val < best.value) {
      best.value = val;
      best.x = x;
    }
  }
  best.iterations = total_iterations;
  return best;
}

}  // namespace

PowerSolution solve_power_program(const solver::RowMatrix& a, const std::vector<double>& coef,
                                  double p, const SolverOptions& opts,
                                  const std::vector<std::vector<double>>& extra_points) {
  PowerSolution out;
  if (a.cols == 0) return out;
  if (p == 1.0) {
    const auto res = solver::solve_lp(a, coef);
    out.x = res.x;
    out.value = res.value;
    out.lower_bound = res.lower_bound;
    out.iterations = res.iterations;
    out.kkt_residual = res.value - res.lower_bound;
    const bool tight = res.value - res.lower_bound <= 1e-9 * std::max(1.0, std::abs(res.value));
    out.status = res.optimal && tight && res.primal_violation == 0.0 ? SolveStatus::kExact
                                                                     : SolveStatus::kHeuristic;
    return out;
  }
  if (p > 1.0) {
    solver::IpmOptions io;
    io.tolerance = opts.tolerance;
    io.max_iterations = opts.max_iterations;
    const auto res = solver::solve_separable(a, coef, std::vector<double>(coef.size(), 0.0), p, io);
    out.x = res.x;
    out.value = res.value;
    out.lower_bound = res.lower_bound;
    out.iterations = res.iterations;
    out.kkt_residual = res.kkt_residual;
    out.status = res.converged && res.primal_violation == 0.0 ? SolveStatus::kConverged
                                                              : SolveStatus::kHeuristic;
    return out;
  }
  return reweighted(a, coef, p, opts, extra_points);
}

JointProgram build_joint_program(const MetricMeasureSpace& space, const PointSet& e,
                                 const PointSet& dom, double s) {
  JointProgram jp;
  jp.dom = dom;
  const std::size_t k = dom.size();
  jp.v_var.assign(k, -1);
  jp.g_var.assign(k, -1);
  int next = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (!e.contains(dom[a])) jp.v_var[a] = next++;
  }
  jp.num_v = static_cast<std::size_t>(next);
  for (std::size_t a = 0; a < k; ++a) jp.g_var[a] = next++;
  jp.rows.cols = static_cast<std::size_t>(next);

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const int va = jp.v_var[a], vb = jp.v_var[b];
      if (va < 0 && vb < 0) continue;
      const double inv = 1.0 / std::pow(space.distance(dom[a], dom[b]), s);
      const int ga = jp.g_var[a], gb = jp.g_var[b];
      if (va >= 0 && vb >= 0) {
        jp.rows.add_row({{ga, 1.0}, {gb, 1.0}, {va, -inv}, {vb, inv}}, 0.0);
        jp.rows.add_row({{ga, 1.0}, {gb, 1.0}, {va, inv}, {vb, -inv}}, 0.0);
      } else {
        // 1 - v_free <= d^s (g_a + g_b)
        const int vf = va >= 0 ? va : vb;
        jp.rows.add_row({{ga, 1.0}, {gb, 1.0}, {vf, inv}}, inv);
      }
    }
  }
  return jp;
}

void unpack_joint(const JointProgram& jp, const PointSet& e, std::size_t n,
                  const std::vector<double>& x, std::vector<double>& v, std::vector<double>& g) {
  v.assign(n, 0.0);
  g.assign(n, 0.0);
  for (Index i : e) v[i] = 1.0;
  for (std::size_t a = 0; a < jp.dom.size(); ++a) {
    const Index i = jp.dom[a];
    if (jp.v_var[a] >= 0) v[i] = std::clamp(x[static_cast<std::size_t>(jp.v_var[a])], 0.0, 1.0);
    g[i] = std::max(0.0, x[static_cast<std::size_t>(jp.g_var[a])]);
  }
}

}  // namespace hajlab::detail
