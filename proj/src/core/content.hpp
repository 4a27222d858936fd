/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <vector>

#include "core/hajlasz.hpp"
#include "core/space.hpp"

namespace hajlab {

struct Ball {
  Index center = 0;
  double radius = 0.0;
};

struct Covering {
  std::vector<Ball> balls;
  double cost = 0.0;  // sum mu(B) / r^d
  PointSet covers;
};

enum class ContentMode { kExact, kGreedy };

struct ContentResult {
  double value = 0.0;
  Covering covering;
  bool exact = false;
  std::optional<double> greedy_ratio_bound;  // 1 + ln|E| when greedy
  std::size_t candidates = 0;
  std::size_t nodes = 0;
};

struct ContentOptions {
  std::size_t node_limit = 2'000'000;
};

/// Restricted content inf sum mu(B_i)/r_i^d over covers of E by open balls
/// centred in X with radii in (0, rho].
ContentResult hausdorff_content(const MetricMeasureSpace& space, const PointSet& e, double d,
                                double rho, ContentMode mode = ContentMode::kExact,
                                const ContentOptions& opts = {});

struct SubadditivityReport {
  double lhs = 0.0;  // H(E u F)
  double rhs = 0.0;  // H(E) + H(F)
  bool exact = false;
  bool passed = false;
};

SubadditivityReport content_subadditivity_check(const MetricMeasureSpace& space,
                                                const PointSet& e, const PointSet& f, double d,
                                                double rho);

struct ComparisonReport {
  double rho = 0.0;
  double dimension = 0.0;  // sp - alpha
  double content = 0.0;
  bool content_exact = false;
  double scaled_content = 0.0;  // content / kappa^{j alpha} (or content)
  double capacity = 0.0;
  SolveStatus capacity_status = SolveStatus::kExact;
  double ratio = 0.0;
};

/// E inside A_{kappa^j}(O); content at scale 5 (1 - 1/Lambda) kappa^j against
/// the relative capacity in Lambda A_{kappa^j}(O).
ComparisonReport capacity_content_comparison(const MetricMeasureSpace& space, const PointSet& e,
                                             Index basepoint, double kappa, double lambda, int j,
                                             double s, double p, double alpha,
                                             const SolverOptions& opts = {});

/// Content at scale 5 min(1, diam X) against the full-norm capacity.
ComparisonReport capacity_content_fullnorm_check(const MetricMeasureSpace& space,
                                                 const PointSet& e, double s, double p,
                                                 double alpha, const SolverOptions& opts = {});

}  // namespace hajlab
