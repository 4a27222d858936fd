/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/hajlasz.hpp"
#include "core/limits.hpp"
#include "core/space.hpp"

namespace hajlab {

struct LimitsConfig {
  double s = 1.0;
  double p = 1.0;
  double kappa = 2.0;
  std::vector<double> lambdas{2.0};
  Index basepoint = 0;
  std::optional<int> j_max;  // defaults to the last full annulus
  double floor = 1e-6;
  double threshold = 0.05;
  SolverOptions solver;
};

/// Median trace, exceptional set, thinness tails of that set and the limit
/// along its complement, for one function on one space. The gradient is the
/// scaled fractional gradient, which is always feasible.
struct LimitsRun {
  std::vector<double> g;
  MedianTrace trace;
  ExceptionalSet exceptional;
  ThinnessReport thinness;
  std::optional<LimitReport> limit;  // absent when the complement is bounded
  std::vector<double> radii;
};

LimitsRun run_limits(const MetricMeasureSpace& space, std::span<const double> u,
                     const LimitsConfig& cfg);

/// Columns j, median, a_j, b_j, |E_j|, cap_j, tail_m; capacities for the
/// first lambda.
std::string limits_csv(const LimitsRun& run);

}  // namespace hajlab
