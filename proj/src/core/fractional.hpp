/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>
#include <vector>

#include "core/hajlasz.hpp"
#include "core/space.hpp"

namespace hajlab {

struct FracNormResult {
  double norm = 0.0;
  std::vector<double> inner;   // per point, before the outer p/q power
  std::vector<double> g_frac;  // inner^(1/q)
};

/// Gagliardo-type seminorm with the diagonal excluded:
/// inner_x = sum_{z != x} w_z |u_x - u_z|^q / (d^{sq} mu(B(x, d(x,z)))).
FracNormResult w_norm(const MetricMeasureSpace& space, std::span<const double> u, double s,
                      double p, double q);

/// Constant making C g_frac an s-gradient of u whenever g_frac comes from
/// the proof construction: C = 2^(1/q) + (2 c_q (2^(sq) c_mu^2 + 2))^(1/q),
/// c_q = 2^max(q-1, 0).
double embedding_constant_bound(double s, double q, double c_mu);

/// max(1, C_bound)^p: constant in Cap_M <= C Cap_W.
double capacity_comparison_constant(double s, double p, double q, double c_mu);

/// Smallest C >= 0 with C g an s-gradient of u: the largest pair ratio
/// |u_i - u_j| / (d^s (g_i + g_j)). Infinite if some needed pair has g = 0.
double minimal_gradient_scale(const MetricMeasureSpace& space, std::span<const double> u,
                              std::span<const double> g, double s);

/// C g_frac (q = 1) scaled to be exactly feasible: a cheap s-gradient.
std::vector<double> scaled_fractional_gradient(const MetricMeasureSpace& space,
                                               std::span<const double> u, double s,
                                               double q = 1.0);

struct EmbeddingReport {
  double c_mu = 1.0;
  double c_min = 0.0;     // smallest scale making C g_frac feasible
  double c_bound = 0.0;   // proof-derived constant
  bool scale_ok = false;  // c_min <= c_bound
  double w_norm = 0.0;
  double m_norm = 0.0;    // ||u|| in the Hajlasz seminorm (minimal gradient)
  SolveStatus m_status = SolveStatus::kExact;
  double rhs = 0.0;       // c_bound * w_norm
  bool norm_ok = false;   // m_norm <= rhs
  std::vector<double> g_scaled;  // c_min * g_frac
  bool passed() const { return scale_ok && norm_ok; }
};

EmbeddingReport embedding_check(const MetricMeasureSpace& space, std::span<const double> u,
                                double s, double p, double q, const SolverOptions& opts = {});

/// Cap_{W^{s,p}_q}(E): min (||u||_p + ||u||_W)^p over 0 <= u <= 1, u = 1 on E.
CapacityResult wspq_capacity(const MetricMeasureSpace& space, const PointSet& e, double s,
                             double p, double q, const SolverOptions& opts = {});

}  // namespace hajlab
