/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "core/error.hpp"
#include "core/joint.hpp"
#include "core/solver/lp.hpp"

namespace hajlab {

namespace {

void validate_frac(double s, double p, double q) {
  validate_exponents(s, p);
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::kBadExponent, "q must be positive, got " + std::to_string(q));
  }
}

// Kernel K(x, z) = w_z / (d^{sq} mu(B(x, d))), row-major, zero diagonal.
std::vector<double> kernel(const MetricMeasureSpace& space, double s, double q) {
  const std::size_t n = space.size();
  std::vector<double> k(n * n, 0.0);
  for (Index x = 0; x < n; ++x) {
    for (Index z = 0; z < n; ++z) {
      if (z == x) continue;
      const double d = space.distance(x, z);
      k[x * n + z] = space.weight(z) / (std::pow(d, s * q) * space.ball_measure(x, d));
    }
  }
  return k;
}

}  // namespace

FracNormResult w_norm(const MetricMeasureSpace& space, std::span<const double> u, double s,
                      double p, double q) {
  validate_frac(s, p, q);
  const std::size_t n = space.size();
  if (u.size() != n) throw Error(ErrorCode::kInvalidInput, "function length does not match");
  FracNormResult out;
  out.inner.assign(n, 0.0);
  out.g_frac.assign(n, 0.0);
  const auto k = kernel(space, s, q);
  double total = 0.0;
  for (Index x = 0; x < n; ++x) {
    double acc = 0.0;
    for (Index z = 0; z < n; ++z) {
      if (z != x) acc += k[x * n + z] * std::pow(std::abs(u[x] - u[z]), q);
    }
    out.inner[x] = acc;
    out.g_frac[x] = std::pow(acc, 1.0 / q);
    total += space.weight(x) * std::pow(acc, p / q);
  }
  out.norm = std::pow(total, 1.0 / p);
  return out;
}

double embedding_constant_bound(double s, double q, double c_mu) {
  const double cq = std::pow(2.0, std::max(q - 1.0, 0.0));
  return std::pow(2.0, 1.0 / q) +
         std::pow(2.0 * cq * (std::pow(2.0, s * q) * c_mu * c_mu + 2.0), 1.0 / q);
}

double capacity_comparison_constant(double s, double p, double q, double c_mu) {
  return std::pow(std::max(1.0, embedding_constant_bound(s, q, c_mu)), p);
}

double minimal_gradient_scale(const MetricMeasureSpace& space, std::span<const double> u,
                              std::span<const double> g, double s) {
  double c = 0.0;
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = i + 1; j < space.size(); ++j) {
      const double diff = std::abs(u[i] - u[j]);
      if (diff == 0.0) continue;
      const double have = std::pow(space.distance(i, j), s) * (g[i] + g[j]);
      if (have <= 0.0) return std::numeric_limits<double>::infinity();
      c = std::max(c, diff / have);
    }
  }
  return c;
}

std::vector<double> scaled_fractional_gradient(const MetricMeasureSpace& space,
                                               std::span<const double> u, double s, double q) {
  auto g = w_norm(space, u, s, 1.0, q).g_frac;
  // The ratio is attained exactly, so nudge by one part in 1e12 to absorb
  // rounding in the feasibility check.
  const double c = minimal_gradient_scale(space, u, g, s) * (1.0 + 1e-12);
  for (double& v : g) v *= c;
  return g;
}

EmbeddingReport embedding_check(const MetricMeasureSpace& space, std::span<const double> u,
                                double s, double p, double q, const SolverOptions& opts) {
  validate_frac(s, p, q);
  EmbeddingReport rep;
  rep.c_mu = doubling_constant(space).first;
  const auto wn = w_norm(space, u, s, p, q);
  rep.w_norm = wn.norm;
  rep.c_min = minimal_gradient_scale(space, u, wn.g_frac, s);
  rep.c_bound = embedding_constant_bound(s, q, rep.c_mu);
  rep.scale_ok = rep.c_min <= rep.c_bound;
  rep.g_scaled = wn.g_frac;
  for (double& v : rep.g_scaled) v *= rep.c_min * (1.0 + 1e-12);
  const auto mg = minimal_gradient(space, u, s, p, opts);
  rep.m_norm = std::pow(mg.value, 1.0 / p);
  rep.m_status = mg.status;
  rep.rhs = rep.c_bound * rep.w_norm;
  rep.norm_ok = rep.m_norm <= rep.rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

namespace {

// p = q = 1: linear program with one epigraph variable per unordered pair.
CapacityResult wspq_linear(const MetricMeasureSpace& space, const PointSet& e, double s) {
  const std::size_t n = space.size();
  std::vector<int> uvar(n, -1);
  int next = 0;
  for (Index i = 0; i < n; ++i) {
    if (!e.contains(i)) uvar[i] = next++;
  }
  const auto k = kernel(space, s, 1.0);
  solver::RowMatrix rows;
  std::vector<double> cost;
  for (Index i = 0; i < n; ++i) {
    if (uvar[i] >= 0) cost.push_back(space.weight(i));
  }
  struct Pair {
    Index x, z;
    int t;
  };
  std::vector<Pair> pairs;
  for (Index x = 0; x < n; ++x) {
    for (Index z = x + 1; z < n; ++z) {
      if (uvar[x] < 0 && uvar[z] < 0) continue;
      pairs.push_back({x, z, next++});
      cost.push_back(space.weight(x) * k[x * n + z] + space.weight(z) * k[z * n + x]);
    }
  }
  rows.cols = static_cast<std::size_t>(next);
  for (const auto& pr : pairs) {
    const int ux = uvar[pr.x], uz = uvar[pr.z];
    if (ux >= 0 && uz >= 0) {
      rows.add_row({{pr.t, 1.0}, {ux, -1.0}, {uz, 1.0}}, 0.0);
      rows.add_row({{pr.t, 1.0}, {ux, 1.0}, {uz, -1.0}}, 0.0);
    } else {
      rows.add_row({{pr.t, 1.0}, {ux >= 0 ? ux : uz, 1.0}}, 1.0);
    }
  }
  const auto res = solver::solve_lp(rows, cost);
  CapacityResult out;
  out.v_opt.assign(n, 1.0);
  for (Index i = 0; i < n; ++i) {
    if (uvar[i] >= 0) out.v_opt[i] = std::clamp(res.x[static_cast<std::size_t>(uvar[i])], 0.0, 1.0);
  }
  const auto wn = w_norm(space, out.v_opt, s, 1.0, 1.0);
  out.value = lp_norm(space, out.v_opt, 1.0) + wn.norm;
  out.lower_bound = std::min(out.value, res.lower_bound + measure(space, e));
  out.g_opt = is_s_gradient(space, out.v_opt, wn.g_frac, s, 1.0);
  out.iterations = res.iterations;
  out.kkt_residual = out.value - *out.lower_bound;
  const bool tight = out.kkt_residual <= 1e-9 * std::max(1.0, out.value);
  out.status = res.optimal && tight ? SolveStatus::kExact : SolveStatus::kHeuristic;
  return out;
}

// Smoothed objective Phi(u) = ||u||_p + ||u||_W, whose p-th power is the
// capacity functional; minimized by accelerated projected gradient over
// the free coordinates in [0, 1].
class FracObjective {
 public:
  FracObjective(const MetricMeasureSpace& space, double s, double p, double q)
      : space_(space), n_(space.size()), p_(p), q_(q), k_(kernel(space, s, q)) {}

  double value(const std::vector<double>& u, double eps) const {
    return lp_part(u, eps) + w_part(u, eps, nullptr);
  }

  double value_and_gradient(const std::vector<double>& u, double eps,
                            std::vector<double>& grad) const {
    grad.assign(n_, 0.0);
    std::vector<double> ga(n_, 0.0);
    const double a = lp_part(u, eps, &ga);
    const double w = w_part(u, eps, &grad);
    for (std::size_t i = 0; i < n_; ++i) grad[i] += ga[i];
    return a + w;
  }

 private:
  double lp_part(const std::vector<double>& u, double eps, std::vector<double>* grad = nullptr) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) acc += space_.weight(i) * std::pow(u[i] + eps, p_);
    const double a = std::pow(acc, 1.0 / p_);
    if (grad) {
      for (std::size_t i = 0; i < n_; ++i) {
        (*grad)[i] = std::pow(acc, 1.0 / p_ - 1.0) * space_.weight(i) * std::pow(u[i] + eps, p_ - 1.0);
      }
    }
    return a;
  }

  double w_part(const std::vector<double>& u, double eps, std::vector<double>* grad) const {
    std::vector<double> inner(n_, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t z = 0; z < n_; ++z) {
        if (z == x) continue;
        const double d = u[x] - u[z];
        inner[x] += k_[x * n_ + z] * (std::pow(d * d + eps * eps, q_ / 2.0) - std::pow(eps, q_));
      }
    }
    double total = 0.0;
    for (std::size_t x = 0; x < n_; ++x) total += space_.weight(x) * std::pow(inner[x] + eps, p_ / q_);
    const double w = std::pow(total, 1.0 / p_);
    if (grad) {
      const double outer = std::pow(total, 1.0 / p_ - 1.0) / p_;
      for (std::size_t x = 0; x < n_; ++x) {
        const double mid = space_.weight(x) * (p_ / q_) * std::pow(inner[x] + eps, p_ / q_ - 1.0);
        for (std::size_t z = 0; z < n_; ++z) {
          if (z == x) continue;
          const double d = u[x] - u[z];
          const double dphi = q_ * d * std::pow(d * d + eps * eps, q_ / 2.0 - 1.0);
          const double t = outer * mid * k_[x * n_ + z] * dphi;
          (*grad)[x] += t;
          (*grad)[z] -= t;
        }
      }
    }
    return w;
  }

  const MetricMeasureSpace& space_;
  std::size_t n_;
  double p_, q_;
  std::vector<double> k_;
};

CapacityResult wspq_gradient(const MetricMeasureSpace& space, const PointSet& e, double s,
                             double p, double q, const SolverOptions& opts) {
  const std::size_t n = space.size();
  const FracObjective obj(space, s, p, q);
  const bool convex = p >= 1.0 && q >= 1.0;
  std::vector<bool> fixed(n, false);
  for (Index i : e) fixed[i] = true;

  auto project = [&](std::vector<double>& u) {
    for (std::size_t i = 0; i < n; ++i) u[i] = fixed[i] ? 1.0 : std::clamp(u[i], 0.0, 1.0);
  };
  // Projected-gradient stationarity at smoothing level eps.
  auto stationarity = [&](const std::vector<double>& u, double eps) {
    std::vector<double> grad;
    obj.value_and_gradient(u, eps, grad);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (fixed[i]) continue;
      const double step = std::clamp(u[i] - grad[i], 0.0, 1.0);
      worst = std::max(worst, std::abs(u[i] - step));
    }
    return worst;
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> u(n, 0.0);
    project(u);
    starts.push_back(u);
    // Indicator of a small neighbourhood of E.
    std::vector<double> v(n, 0.0);
    for (Index i = 0; i < n; ++i) {
      for (Index j : e) v[i] = std::max(v[i], 1.0 - space.distance(i, j) / space.diameter());
    }
    project(v);
    starts.push_back(v);
  }
  const std::size_t extra = convex ? 0 : opts.restarts;
  for (std::size_t r = 0; r < extra; ++r) {
    std::vector<double> u(n);
    for (double& x : u) x = unit(rng);
    project(u);
    starts.push_back(u);
  }

  CapacityResult out;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_u;
  std::size_t iterations = 0;
  const std::size_t budget = std::max<std::size_t>(opts.max_iterations, 1) * 100;
  for (auto u : starts) {
    std::vector<double> y = u, grad, prev = u;
    double lip = 1.0;
    double t = 1.0;
    for (double eps : {1e-3, 1e-5, 1e-7, 1e-9, 1e-11}) {
      t = 1.0;
      y = u;
      for (std::size_t it = 0; it < budget / 5; ++it, ++iterations) {
        const double fy = obj.value_and_gradient(y, eps, grad);
        std::vector<double> cand(n);
        double fc = 0.0;
        // Backtracking on the local Lipschitz estimate.
        for (int bt = 0; bt < 60; ++bt) {
          for (std::size_t i = 0; i < n; ++i) cand[i] = y[i] - grad[i] / lip;
          project(cand);
          double model = fy;
          for (std::size_t i = 0; i < n; ++i) {
            const double d = cand[i] - y[i];
            model += grad[i] * d + 0.5 * lip * d * d;
          }
          fc = obj.value(cand, eps);
          if (fc <= model + 1e-15 * std::abs(model)) break;
          lip *= 2.0;
        }
        const double fu = obj.value(u, eps);
        if (fc > fu) {
          // Restart momentum when the step goes uphill.
          t = 1.0;
          y = u;
          lip *= 2.0;
          continue;
        }
        prev = u;
        u = cand;
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + (t - 1.0) / t_next * (u[i] - prev[i]);
        project(y);
        t = t_next;
        lip *= 0.9;
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i) move = std::max(move, std::abs(u[i] - prev[i]));
        if (move <= 1e-13) break;
      }
    }
    const double val = obj.value(u, 0.0);
    if (val < best) {
      best = val;
      best_u = u;
    }
  }

  out.v_opt = best_u;
  out.value = std::pow(best, p);
  out.iterations = iterations;
  out.kkt_residual = stationarity(best_u, 1e-12);
  const auto wn = w_norm(space, best_u, s, p, q);
  out.g_opt = is_s_gradient(space, best_u, wn.g_frac, s, p);
  out.status = convex && out.kkt_residual <= opts.tolerance * 100.0 ? SolveStatus::kConverged
                                                                   : SolveStatus::kHeuristic;
  if (convex) {
    // Frank-Wolfe gap over the box gives a certified lower bound on Phi.
    std::vector<double> grad;
    const double phi = obj.value_and_gradient(best_u, 1e-12, grad);
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (fixed[i] || !std::isfinite(grad[i])) continue;
      gap += std::max(0.0, grad[i] * best_u[i]) + std::max(0.0, -grad[i] * (1.0 - best_u[i]));
    }
    if (std::isfinite(gap)) out.lower_bound = std::pow(std::max(0.0, phi - gap), p);
  }
  return out;
}

}  // namespace

CapacityResult wspq_capacity(const MetricMeasureSpace& space, const PointSet& e, double s,
                             double p, double q, const SolverOptions& opts) {
  validate_frac(s, p, q);
  const std::size_t n = space.size();
  for (Index i : e) {
    if (i >= n) throw Error(ErrorCode::kInvalidInput, "point index out of range");
  }
  if (e.empty()) throw Error(ErrorCode::kEmptySet, "capacity of the empty set is trivially 0");
  if (e.size() == n) {
    CapacityResult out;
    out.v_opt.assign(n, 1.0);
    out.value = std::pow(lp_norm(space, out.v_opt, p), p);
    out.lower_bound = out.value;
    out.g_opt = is_s_gradient(space, out.v_opt, std::vector<double>(n, 0.0), s, p);
    return out;
  }
  if (p == 1.0 && q == 1.0) return wspq_linear(space, e, s);
  return wspq_gradient(space, e, s, p, q, opts);
}

}  // namespace hajlab
