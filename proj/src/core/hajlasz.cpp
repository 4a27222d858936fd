/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/hajlasz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"
#include "core/fractional.hpp"
#include "core/joint.hpp"

namespace hajlab {

std::string_view status_name(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::kExact: return "exact";
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kHeuristic: return "heuristic";
  }
  return "unknown";
}

void validate_exponents(double s, double p) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::kBadExponent, "s must lie in (0, 1], got " + std::to_string(s));
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kBadExponent, "p must be positive, got " + std::to_string(p));
  }
}

double feasibility_tolerance(std::span<const double> u) {
  if (u.empty()) return 1e-9;
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  return 1e-9 * (1.0 + (*hi - *lo));
}

double lp_norm(const MetricMeasureSpace& space, std::span<const double> f, double p) {
  double acc = 0.0;
  for (Index i = 0; i < space.size(); ++i) acc += space.weight(i) * std::pow(std::abs(f[i]), p);
  return std::pow(acc, 1.0 / p);
}

double power_integral(const MetricMeasureSpace& space, std::span<const double> f, double p,
                      const PointSet& e) {
  double acc = 0.0;
  for (Index i : e) acc += space.weight(i) * std::pow(std::abs(f[i]), p);
  return acc;
}

GradientCertificate is_s_gradient(const MetricMeasureSpace& space, std::span<const double> u,
                                  std::span<const double> g, double s, double p) {
  const std::size_t n = space.size();
  if (u.size() != n || g.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "function length does not match the space");
  }
  GradientCertificate cert;
  cert.g.assign(g.begin(), g.end());
  cert.s = s;
  cert.p = p;
  for (double v : g) {
    if (v < 0.0 || std::isnan(v)) throw Error(ErrorCode::kInvalidInput, "gradient must be >= 0");
  }
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double excess =
          std::abs(u[i] - u[j]) - std::pow(space.distance(i, j), s) * (g[i] + g[j]);
      if (excess > worst) {
        worst = excess;
        cert.worst_i = i;
        cert.worst_j = j;
      }
    }
  }
  cert.feasibility_residual = worst;
  cert.lp_norm = lp_norm(space, g, p);
  return cert;
}

GradientCertificate require_s_gradient(const MetricMeasureSpace& space,
                                       std::span<const double> u, std::span<const double> g,
                                       double s, double p) {
  auto cert = is_s_gradient(space, u, g, s, p);
  if (cert.feasibility_residual > feasibility_tolerance(u)) {
    std::ostringstream msg;
    msg << "pair (" << cert.worst_i << ", " << cert.worst_j << ") violated by "
        << cert.feasibility_residual;
    throw Error(ErrorCode::kInfeasibleGradient, msg.str());
  }
  return cert;
}

CapacityResult minimal_gradient(const MetricMeasureSpace& space, std::span<const double> u,
                                double s, double p, const SolverOptions& opts) {
  validate_exponents(s, p);
  const std::size_t n = space.size();
  if (u.size() != n) throw Error(ErrorCode::kInvalidInput, "function length does not match");
  for (double v : u) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidInput, "function values must be finite");
  }

  solver::RowMatrix rows;
  rows.cols = n;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double need = std::abs(u[i] - u[j]) / std::pow(space.distance(i, j), s);
      if (need > 0.0) {
        rows.add_row({{static_cast<int>(i), 1.0}, {static_cast<int>(j), 1.0}}, need);
      }
    }
  }
  const std::vector<double> w(space.weights().begin(), space.weights().end());

  std::vector<std::vector<double>> extra;
  if (p < 1.0 && rows.rows() > 0) {
    extra.push_back(scaled_fractional_gradient(space, u, s));
  }
  detail::PowerSolution sol;
  if (rows.rows() == 0) {
    sol.x.assign(n, 0.0);
    sol.lower_bound = 0.0;
    sol.status = SolveStatus::kExact;
  } else {
    sol = detail::solve_power_program(rows, w, p, opts, extra);
  }

  CapacityResult out;
  out.v_opt.assign(u.begin(), u.end());
  out.g_opt = is_s_gradient(space, u, sol.x, s, p);
  out.value = 0.0;
  for (Index i = 0; i < n; ++i) out.value += w[i] * std::pow(sol.x[i], p);
  out.lower_bound = sol.lower_bound;
  if (out.lower_bound) out.lower_bound = std::min(*out.lower_bound, out.value);
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.kkt_residual = sol.kkt_residual;
  return out;
}

namespace {

// (||u||_p + ||g||_p)^p with p > 1 through the split
// (a + b)^p = min over t in (0,1) of a^p t^(1-p) + b^p (1-t)^(1-p).
// For fixed t the program is separable; its optimal value F(t) is convex in
// t. A few alternating updates of t usually settle; otherwise golden-section
// search on F. The boundary t -> 1 is u = 1, g = 0 with value mu(X).
CapacityResult msp_power(const MetricMeasureSpace& space, const PointSet& e, double s, double p,
                         const SolverOptions& opts) {
  const std::size_t n = space.size();
  const auto jp = detail::build_joint_program(space, e, space.all(), s);
  const auto& dom = jp.dom;

  CapacityResult out;
  double best = space.total_measure();
  std::vector<double> best_v(n, 1.0), best_g(n, 0.0);
  bool all_converged = true;

  // Solves at split t; returns F(t) and the split suggested by the solution.
  auto solve_at = [&](double theta, double& next_theta) {
    std::vector<double> coef(jp.rows.cols);
    const double cu = std::pow(theta, 1.0 - p), cg = std::pow(1.0 - theta, 1.0 - p);
    for (std::size_t a = 0; a < dom.size(); ++a) {
      const double w = space.weight(dom[a]);
      if (jp.v_var[a] >= 0) coef[static_cast<std::size_t>(jp.v_var[a])] = cu * w;
      coef[static_cast<std::size_t>(jp.g_var[a])] = cg * w;
    }
    const auto sol = detail::solve_power_program(jp.rows, coef, p, opts);
    all_converged = all_converged && sol.status != SolveStatus::kHeuristic;
    out.iterations += sol.iterations;
    out.kkt_residual = sol.kkt_residual;
    std::vector<double> v, g;
    detail::unpack_joint(jp, e, n, sol.x, v, g);
    const double an = lp_norm(space, v, p), gn = lp_norm(space, g, p);
    const double val = std::pow(an + gn, p);
    if (val < best) {
      best = val;
      best_v = std::move(v);
      best_g = std::move(g);
    }
    next_theta = an + gn > 0 ? an / (an + gn) : 0.5;
    // F(t) includes the fixed part on E through the v-coefficients.
    return sol.value + cu * measure(space, e);
  };

  bool settled = false;
  double theta = 0.5, last = std::numeric_limits<double>::infinity();
  for (std::size_t round = 0; round < 12 && !settled; ++round) {
    double next = theta;
    const double f = solve_at(theta, next);
    settled = std::abs(last - f) <= 1e-10 * std::max(1.0, f) && std::abs(next - theta) <= 1e-6;
    last = f;
    theta = std::clamp(next, 1e-9, 1.0 - 1e-9);
  }
  if (!settled) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 1e-9, hi = 1.0 - 1e-9, unused = 0.0;
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = solve_at(a, unused), fb = solve_at(b, unused);
    while (hi - lo > 1e-7) {
      if (fa < fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - phi * (hi - lo);
        fa = solve_at(a, unused);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + phi * (hi - lo);
        fb = solve_at(b, unused);
      }
    }
    settled = true;
  }
  out.value = best;
  out.v_opt = best_v;
  out.g_opt = is_s_gradient(space, best_v, best_g, s, p);
  out.status = all_converged && settled ? SolveStatus::kConverged : SolveStatus::kHeuristic;
  return out;
}

}  // namespace

CapacityResult msp_capacity(const MetricMeasureSpace& space, const PointSet& e, double s,
                            double p, const SolverOptions& opts) {
  validate_exponents(s, p);
  const std::size_t n = space.size();
  for (Index i : e) {
    if (i >= n) throw Error(ErrorCode::kInvalidInput, "point index out of range");
  }
  CapacityResult out;
  if (e.empty()) {
    out.v_opt.assign(n, 0.0);
    out.g_opt = is_s_gradient(space, out.v_opt, out.v_opt, s, p);
    out.lower_bound = 0.0;
    return out;
  }
  if (e.size() == n) {
    out.v_opt.assign(n, 1.0);
    const std::vector<double> zero(n, 0.0);
    out.g_opt = is_s_gradient(space, out.v_opt, zero, s, p);
    out.value = space.total_measure();
    out.lower_bound = out.value;
    return out;
  }
  if (p > 1.0) return msp_power(space, e, s, p, opts);

  // For p <= 1 the sum-then-power objective is handled through the
  // separable surrogate sum w u^p + sum w g^p, which is exact at p = 1.
  const auto jp = detail::build_joint_program(space, e, space.all(), s);
  std::vector<double> coef(jp.rows.cols);
  for (std::size_t a = 0; a < jp.dom.size(); ++a) {
    const double w = space.weight(jp.dom[a]);
    if (jp.v_var[a] >= 0) coef[static_cast<std::size_t>(jp.v_var[a])] = w;
    coef[static_cast<std::size_t>(jp.g_var[a])] = w;
  }
  const auto sol = detail::solve_power_program(jp.rows, coef, p, opts);
  std::vector<double> v, g;
  detail::unpack_joint(jp, e, n, sol.x, v, g);
  out.v_opt = v;
  out.g_opt = is_s_gradient(space, v, g, s, p);
  out.value = std::pow(lp_norm(space, v, p) + lp_norm(space, g, p), p);
  out.iterations = sol.iterations;
  out.kkt_residual = sol.kkt_residual;
  out.status = sol.status;
  if (p == 1.0 && sol.lower_bound) {
    out.lower_bound = std::min(out.value, *sol.lower_bound + measure(space, e));
  }
  return out;
}

double msp_subadditivity_constant(double p) { return std::pow(2.0, std::abs(p - 1.0)); }

}  // namespace hajlab
