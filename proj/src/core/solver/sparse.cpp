/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/solver/sparse.hpp"

#include <algorithm>
#include <limits>

namespace hajlab::solver {

double repair_feasibility(const RowMatrix& a, const std::vector<double>& cost,
                          std::vector<double>& x) {
  for (double& v : x) v = std::max(v, 0.0);
  const auto monotone = a.monotone_columns();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double deficit = a.rhs[i] - a.row_dot(i, x.data());
    if (deficit <= 0.0) continue;
    // Cheapest monotone variable per unit of row activity.
    int best = -1;
    double best_rate = std::numeric_limits<double>::infinity();
    double best_coef = 0.0;
    for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) {
      const auto k = static_cast<std::size_t>(a.index[e]);
      if (!monotone[k] || a.value[e] <= 0.0) continue;
      const double rate = cost[k] / a.value[e];
      if (rate < best_rate) {
        best_rate = rate;
        best = a.index[e];
        best_coef = a.value[e];
      }
    }
    if (best < 0) {
      worst = std::max(worst, deficit);
      continue;
    }
    x[static_cast<std::size_t>(best)] += deficit / best_coef;
    // Rounding can leave a residue of one ulp; nudge once more.
    const double left = a.rhs[i] - a.row_dot(i, x.data());
    if (left > 0.0) x[static_cast<std::size_t>(best)] += 2.0 * left / best_coef;
  }
  return worst;
}

double max_violation(const RowMatrix& a, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    worst = std::max(worst, a.rhs[i] - a.row_dot(i, x.data()));
  }
  return worst;
}

}  // namespace hajlab::solver
