/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Internal helpers shared by the capacity solvers.
#pragma once

#include <optional>
#include <vector>

#include "core/hajlasz.hpp"
#include "core/solver/sparse.hpp"

namespace hajlab::detail {

/// Solution of  min sum_k coef_k x_k^p  s.t.  A x >= b, x >= 0.
struct PowerSolution {
  std::vector<double> x;
  double value = 0.0;
  std::optional<double> lower_bound;
  SolveStatus status = SolveStatus::kExact;
  std::size_t iterations = 0;
  double kkt_residual = 0.0;
};

/// p = 1: exact simplex. p > 1: interior point. 0 < p < 1: iteratively
/// reweighted LPs from seeded starts plus any supplied feasible points.
PowerSolution solve_power_program(const solver::RowMatrix& a, const std::vector<double>& coef,
                                  double p, const SolverOptions& opts,
                                  const std::vector<std::vector<double>>& extra_points = {});

/// Variables and pair rows of the joint (test function, gradient) program
/// on the index set `dom`, with the test function fixed to 1 on `e` and
/// substituted out. Rows encode |v_i - v_j| <= d^s (g_i + g_j) for pairs in
/// dom; the upper bound v <= 1 is left implicit (clamping preserves
/// feasibility and lowers the cost).
struct JointProgram {
  PointSet dom;
  std::vector<int> v_var;  // per dom position, -1 where fixed to 1
  std::vector<int> g_var;  // per dom position
  std::size_t num_v = 0;
  solver::RowMatrix rows;
};

JointProgram build_joint_program(const MetricMeasureSpace& space, const PointSet& e,
                                 const PointSet& dom, double s);

/// Full-length test function (1 on e, clamped to [0,1], 0 off dom) and
/// gradient (0 off dom) from a solution vector.
void unpack_joint(const JointProgram& jp, const PointSet& e, std::size_t n,
                  const std::vector<double>& x, std::vector<double>& v, std::vector<double>& g);

}  // namespace hajlab::detail
