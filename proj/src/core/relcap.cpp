/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/relcap.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/joint.hpp"
#include "core/median.hpp"

namespace hajlab {

CapacityResult relative_capacity(const MetricMeasureSpace& space, const PointSet& e,
                                 const PointSet& f, double s, double p,
                                 const SolverOptions& opts) {
  validate_exponents(s, p);
  for (Index i : f) {
    if (i >= space.size()) throw Error(ErrorCode::kInvalidInput, "point index out of range");
  }
  if (!is_subset(e, f)) throw Error(ErrorCode::kBadProblem, "E must be a subset of F");
  if (f.empty()) throw Error(ErrorCode::kBadProblem, "F is empty");
  const double dm = diam(space, f);
  if (!(dm > 0.0)) throw Error(ErrorCode::kBadProblem, "diam(F) must be positive");
  const std::size_t n = space.size();
  const double vscale = 1.0 / std::pow(dm, s * p);

  CapacityResult out;
  if (e.empty()) {
    out.v_opt.assign(n, 0.0);
    out.g_opt = is_s_gradient(space, out.v_opt, out.v_opt, s, p);
    out.lower_bound = 0.0;
    return out;
  }

  const auto jp = detail::build_joint_program(space, e, f, s);
  std::vector<double> coef(jp.rows.cols);
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double w = space.weight(f[a]);
    if (jp.v_var[a] >= 0) coef[static_cast<std::size_t>(jp.v_var[a])] = vscale * w;
    coef[static_cast<std::size_t>(jp.g_var[a])] = w;
  }
  const double fixed = vscale * measure(space, e);

  std::vector<std::vector<double>> extra;
  if (p < 1.0) {
    // v = 1 on F with zero gradient is always admissible.
    std::vector<double> ones(jp.rows.cols, 0.0);
    for (std::size_t k = 0; k < jp.num_v; ++k) ones[k] = 1.0;
    extra.push_back(std::move(ones));
  }
  const auto sol = jp.rows.cols == 0 ? detail::PowerSolution{}
                                     : detail::solve_power_program(jp.rows, coef, p, opts, extra);
  std::vector<double> v, g;
  if (jp.rows.cols == 0) {
    v.assign(n, 0.0);
    g.assign(n, 0.0);
    for (Index i : e) v[i] = 1.0;
  } else {
    detail::unpack_joint(jp, e, n, sol.x, v, g);
  }
  out.value = relative_functional(space, f, v, g, s, p);
  out.v_opt = v;
  // Gradient feasibility is only required on F; report it on the subspace.
  const auto sub = space.subspace(f);
  std::vector<double> vf(f.size()), gf(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    vf[a] = v[f[a]];
    gf[a] = g[f[a]];
  }
  out.g_opt = is_s_gradient(sub, vf, gf, s, p);
  out.g_opt.g = g;
  out.status = jp.rows.cols == 0 ? SolveStatus::kExact : sol.status;
  out.iterations = sol.iterations;
  out.kkt_residual = sol.kkt_residual;
  if (jp.rows.cols == 0) {
    out.lower_bound = out.value;
  } else if (sol.lower_bound) {
    out.lower_bound = std::min(out.value, *sol.lower_bound + fixed);
  }
  return out;
}

double relative_functional(const MetricMeasureSpace& space, const PointSet& f,
                           std::span<const double> v, std::span<const double> g, double s,
                           double p) {
  const double dm = diam(space, f);
  double vp = 0.0, gp = 0.0;
  for (Index i : f) {
    vp += space.weight(i) * std::pow(std::abs(v[i]), p);
    gp += space.weight(i) * std::pow(g[i], p);
  }
  return vp / std::pow(dm, s * p) + gp;
}

WeakTypeReport weak_type_check(const MetricMeasureSpace& space, std::span<const double> u,
                               std::span<const double> g, Index basepoint, double kappa,
                               double lambda, int j, double t, double s, double p,
                               const SolverOptions& opts) {
  validate_exponents(s, p);
  if (!(kappa > 1.0)) throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  if (!(lambda > 1.0)) throw Error(ErrorCode::kBadProblem, "lambda must exceed 1");
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidInput, "t must be positive");
  require_s_gradient(space, u, g, s, p);
  const PointSet a = annulus(space, basepoint, kappa, 1.0, j);
  if (a.empty()) throw Error(ErrorCode::kEmptyAnnulus, "annulus j=" + std::to_string(j) + " is empty");
  const PointSet f = annulus(space, basepoint, kappa, lambda, j);

  WeakTypeReport rep;
  rep.j = j;
  rep.t = t;
  rep.median = median(space, u, a);
  std::vector<Index> et;
  for (Index x : a) {
    if (std::abs(u[x] - rep.median) > t) et.push_back(x);
  }
  rep.e_t = PointSet(std::move(et));

  const std::size_t n = space.size();
  std::vector<double> v(n), gt(n);
  for (Index i = 0; i < n; ++i) {
    v[i] = std::abs(u[i] - rep.median) / t;
    gt[i] = g[i] / t;
  }
  rep.v_admissible = true;
  for (Index x : rep.e_t) rep.v_admissible = rep.v_admissible && v[x] >= 1.0;
  const auto cert = is_s_gradient(space, v, gt, s, p);
  rep.gradient_residual = cert.feasibility_residual;
  rep.gradient_ok = cert.feasibility_residual <= feasibility_tolerance(v);

  rep.functional = relative_functional(space, f, v, gt, s, p);
  const auto cap = relative_capacity(space, rep.e_t, f, s, p, opts);
  rep.capacity = cap.value;
  rep.capacity_certified = cap.lower_bound ? *cap.lower_bound : cap.value;

  // |u(x) - m| <= |u(x) - u(y)| on a half-measure subset of A (shift
  // witness with c = u(x)), then average, using A in Lambda A:
  // int_F |u - m|^p <= diam(F)^{sp} c_p (1 + 2 mu(F)/mu(A)) int_F g^p.
  const double cp = std::pow(2.0, std::max(p - 1.0, 0.0));
  rep.measure_ratio = measure(space, f) / measure(space, a);
  rep.constant = 1.0 + cp * (1.0 + 2.0 * rep.measure_ratio);
  rep.energy = power_integral(space, g, p, f);
  rep.rhs = rep.constant / std::pow(t, p) * rep.energy;

  const double slack = 1e-9 * std::max(1.0, rep.functional);
  rep.passed = rep.v_admissible && rep.gradient_ok &&
               rep.capacity_certified <= rep.functional + slack &&
               rep.functional <= rep.rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

}  // namespace hajlab
