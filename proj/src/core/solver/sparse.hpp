/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <vector>

namespace hajlab::solver {

/// Row-compressed constraint matrix for systems A x >= b.
struct RowMatrix {
  std::size_t cols = 0;
  std::vector<std::size_t> start{0};
  std::vector<int> index;
  std::vector<double> value;
  std::vector<double> rhs;

  std::size_t rows() const noexcept { return rhs.size(); }

  void add_row(std::initializer_list<std::pair<int, double>> entries, double b) {
    for (const auto& [k, a] : entries) {
      if (a != 0.0) {
        index.push_back(k);
        value.push_back(a);
      }
    }
    start.push_back(index.size());
    rhs.push_back(b);
  }

  double row_dot(std::size_t i, const double* x) const noexcept {
    double acc = 0.0;
    for (std::size_t e = start[i]; e < start[i + 1]; ++e) acc += value[e] * x[index[e]];
    return acc;
  }

  /// True for columns whose entries are all nonnegative: raising such a
  /// variable never breaks a satisfied row.
  std::vector<bool> monotone_columns() const {
    std::vector<bool> ok(cols, true);
    for (std::size_t e = 0; e < index.size(); ++e) {
      if (value[e] < 0.0) ok[static_cast<std::size_t>(index[e])] = false;
    }
    return ok;
  }
};

/// Clamps x at 0 and raises monotone variables until every row holds.
/// Returns the largest remaining violation (0 when fully repaired).
double repair_feasibility(const RowMatrix& a, const std::vector<double>& cost,
                          std::vector<double>& x);

/// Largest violation of A x >= b, x >= 0.
double max_violation(const RowMatrix& a, const std::vector<double>& x);

}  // namespace hajlab::solver
