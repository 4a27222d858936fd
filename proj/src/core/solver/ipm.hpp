/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "core/solver/sparse.hpp"

namespace hajlab::solver {

/// min  sum_k pcoef_k x_k^power + lin_k x_k   s.t.  A x >= b, x >= 0,
/// with power > 1 and pcoef > 0. Primal-dual interior point with
/// Mehrotra correction; the Newton system is reduced to dense normal
/// equations in x, whose size is the number of variables.
struct IpmOptions {
  std::size_t max_iterations = 200;
  double tolerance = 1e-8;  // KKT residual for "converged"
};

struct IpmResult {
  std::vector<double> x;  // repaired to be feasible
  std::vector<double> y;
  double value = 0.0;
  double lower_bound = 0.0;  // Lagrangian dual value at y (always valid)
  double kkt_residual = 0.0;
  double primal_violation = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

IpmResult solve_separable(const RowMatrix& a, const std::vector<double>& pcoef,
                          const std::vector<double>& lin, double power,
                          const IpmOptions& opts = {});

/// Objective of the program above at x.
double separable_objective(const std::vector<double>& pcoef, const std::vector<double>& lin,
                           double power, const std::vector<double>& x);

}  // namespace hajlab::solver
