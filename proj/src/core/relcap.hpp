/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>

#include "core/hajlasz.hpp"
#include "core/space.hpp"

namespace hajlab {

/// cap_{s,p}(E, F): min over v >= 1 on E, g >= 0 of
/// sum_F w v^p / diam(F)^{sp} + sum_F w g^p, with the pair constraints
/// restricted to F.
CapacityResult relative_capacity(const MetricMeasureSpace& space, const PointSet& e,
                                 const PointSet& f, double s, double p,
                                 const SolverOptions& opts = {});

/// The relative-capacity functional at a given (v, g), both full length.
double relative_functional(const MetricMeasureSpace& space, const PointSet& f,
                           std::span<const double> v, std::span<const double> g, double s,
                           double p);

struct WeakTypeReport {
  int j = 0;
  double t = 0.0;
  double median = 0.0;
  PointSet e_t;
  bool v_admissible = false;    // v >= 1 on E_t
  double gradient_residual = 0.0;
  bool gradient_ok = false;     // g/t is an s-gradient of v
  double capacity = 0.0;
  double capacity_certified = 0.0;  // certified lower bound used in the comparison
  double functional = 0.0;      // relative functional at (v, g/t)
  double constant = 0.0;        // instance-derived C
  double measure_ratio = 0.0;   // mu(Lambda A) / mu(A)
  double energy = 0.0;          // integral of g^p over Lambda A
  double rhs = 0.0;             // C / t^p * energy
  bool passed = false;
};

WeakTypeReport weak_type_check(const MetricMeasureSpace& space, std::span<const double> u,
                               std::span<const double> g, Index basepoint, double kappa,
                               double lambda, int j, double t, double s, double p,
                               const SolverOptions& opts = {});

}  // namespace hajlab
