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

/// min c^T x  s.t.  A x >= b, x >= 0, with c >= 0.
///
/// Solved through its dual  max b^T y  s.t.  A^T y <= c, y >= 0, whose slack
/// basis is feasible because c >= 0. The basis has one row per primal
/// variable, so rows (pair constraints) can be numerous.
struct LpOptions {
  std::size_t max_iterations = 500000;
  std::size_t refactor_every = 100;
  double gap_tolerance = 1e-9;
};

struct LpResult {
  std::vector<double> x;  // primal, repaired to be feasible
  std::vector<double> y;  // dual multipliers, scaled to be feasible
  double value = 0.0;     // c^T x
  double lower_bound = 0.0;
  double primal_violation = 0.0;  // after repair; 0 means feasible
  std::size_t iterations = 0;
  bool optimal = false;  // simplex terminated with no improving column
};

LpResult solve_lp(const RowMatrix& a, const std::vector<double>& cost,
                  const LpOptions& opts = {});

}  // namespace hajlab::solver
