/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>
#include <utility>

#include "core/space.hpp"

namespace hajlab {

/// How the level condition mu({u > a}) vs mu(E)/2 is compared. Only kStrict
/// is the definition; kNonStrict exists so the verification harness can
/// demonstrate that a mutated tie rule is caught.
enum class MedianRule { kStrict, kNonStrict };

/// Smallest a in u(E) with mu({x in E : u(x) > a}) < mu(E)/2.
double median(const MetricMeasureSpace& space, std::span<const double> u, const PointSet& e,
              MedianRule rule = MedianRule::kStrict);

struct MedianWitness {
  double value = 0.0;
  PointSet sub;  // {u <= m}
  PointSet sup;  // {u >= m}
};

MedianWitness level_sets(const MetricMeasureSpace& space, std::span<const double> u,
                         const PointSet& e);

/// Half-measure subset on which |m_u(E) - c| <= |u(x) - c|.
PointSet shift_witness(const MetricMeasureSpace& space, std::span<const double> u,
                       const PointSet& e, double c);

/// Half-measure subsets of E and F with |m_u(E) - m_u(F)| <= |u(x) - u(y)|.
std::pair<PointSet, PointSet> pair_witness(const MetricMeasureSpace& space,
                                           std::span<const double> u, const PointSet& e,
                                           const PointSet& f);

/// 4 * 2^max(p-1, 0)
double oscillation_constant(double p);

struct OscillationReport {
  double lhs = 0.0;  // |m_u(E) - m_u(F)|^p
  double rhs = 0.0;  // C(p) D^{sp} (avg_E g^p + avg_F g^p)
  double c_p = 0.0;
  double d_sup = 0.0;
  double median_e = 0.0;
  double median_f = 0.0;
  bool passed = false;
};

/// Throws InfeasibleGradient unless g is an s-gradient of u.
OscillationReport oscillation_bound_check(const MetricMeasureSpace& space,
                                          std::span<const double> u, std::span<const double> g,
                                          const PointSet& e, const PointSet& f, double s,
                                          double p);

}  // namespace hajlab
