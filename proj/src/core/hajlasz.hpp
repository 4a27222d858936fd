/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "core/space.hpp"

namespace hajlab {

/// Candidate s-gradient together with how well it does the job.
struct GradientCertificate {
  std::vector<double> g;
  double s = 1.0;
  double p = 1.0;
  /// max over pairs of |u_i - u_j| - d_ij^s (g_i + g_j), clamped at 0.
  double feasibility_residual = 0.0;
  Index worst_i = 0;
  Index worst_j = 0;
  /// (sum_i w_i g_i^p)^(1/p)
  double lp_norm = 0.0;
};

enum class SolveStatus { kExact, kConverged, kHeuristic };
std::string_view status_name(SolveStatus s) noexcept;

struct SolverOptions {
  double tolerance = 1e-8;        // KKT residual target for iterative solvers
  std::size_t max_iterations = 200;
  std::uint64_t seed = 1;
  std::size_t restarts = 4;       // seeded starts for the nonconvex range
};

struct CapacityResult {
  double value = 0.0;
  std::optional<double> lower_bound;
  std::vector<double> v_opt;  // full-length test function (or u for the seminorm)
  GradientCertificate g_opt;
  SolveStatus status = SolveStatus::kExact;
  std::size_t iterations = 0;
  double kkt_residual = 0.0;
};

/// Tolerance used when a gradient is required to be feasible: residual
/// relative to the largest oscillation of u.
double feasibility_tolerance(std::span<const double> u);

GradientCertificate is_s_gradient(const MetricMeasureSpace& space, std::span<const double> u,
                                  std::span<const double> g, double s, double p = 1.0);

/// Throws InfeasibleGradient when g is not an s-gradient of u.
GradientCertificate require_s_gradient(const MetricMeasureSpace& space,
                                       std::span<const double> u, std::span<const double> g,
                                       double s, double p = 1.0);

double lp_norm(const MetricMeasureSpace& space, std::span<const double> f, double p);
/// sum_i w_i |f_i|^p over the members of e.
double power_integral(const MetricMeasureSpace& space, std::span<const double> f, double p,
                      const PointSet& e);

/// Minimizes sum w g^p over s-gradients g of u.
CapacityResult minimal_gradient(const MetricMeasureSpace& space, std::span<const double> u,
                                double s, double p, const SolverOptions& opts = {});

/// Cap_{M^{s,p}}(E): min (||u||_p + ||g||_p)^p over u >= 1 on E, g in D_s(u).
CapacityResult msp_capacity(const MetricMeasureSpace& space, const PointSet& e, double s,
                            double p, const SolverOptions& opts = {});

/// Constant C with Cap(E u F) <= C (Cap(E) + Cap(F)), from the test function
/// max(u_E, u_F) with gradient max(g_E, g_F): C = 2^|p-1|.
double msp_subadditivity_constant(double p);

void validate_exponents(double s, double p);

}  // namespace hajlab
