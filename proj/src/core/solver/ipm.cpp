/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/solver/ipm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace hajlab::solver {

double separable_objective(const std::vector<double>& pcoef, const std::vector<double>& lin,
                           double power, const std::vector<double>& x) {
  double f = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    f += pcoef[k] * std::pow(std::max(x[k], 0.0), power) + lin[k] * x[k];
  }
  return f;
}

namespace {

using Vec = Eigen::VectorXd;

void at_times(const RowMatrix& a, const Vec& v, Vec& out) {
  out.setZero(static_cast<Eigen::Index>(a.cols));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double vi = v[static_cast<Eigen::Index>(i)];
    if (vi == 0.0) continue;
    for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) out[a.index[e]] += a.value[e] * vi;
  }
}

void a_times(const RowMatrix& a, const Vec& x, Vec& out) {
  out.resize(static_cast<Eigen::Index>(a.rows()));
  for (std::size_t i = 0; i < a.rows(); ++i) out[static_cast<Eigen::Index>(i)] = a.row_dot(i, x.data());
}

double max_step(const Vec& v, const Vec& dv) {
  double alpha = 1.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (dv[k] < 0.0) alpha = std::min(alpha, -v[k] / dv[k]);
  }
  return alpha;
}

double lagrangian_bound(const RowMatrix& a, const std::vector<double>& pcoef,
                        const std::vector<double>& lin, double power,
                        const std::vector<double>& y) {
  Vec yy = Eigen::Map<const Vec>(y.data(), static_cast<Eigen::Index>(y.size()));
  Vec aty;
  at_times(a, yy, aty);
  double bound = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) bound += a.rhs[i] * y[i];
  for (std::size_t k = 0; k < a.cols; ++k) {
    const double slope = aty[static_cast<Eigen::Index>(k)] - lin[k];
    if (slope <= 0.0) continue;
    const double xs = std::pow(slope / (power * pcoef[k]), 1.0 / (power - 1.0));
    bound -= (power - 1.0) * pcoef[k] * std::pow(xs, power);
  }
  return bound;
}

}  // namespace

IpmResult solve_separable(const RowMatrix& a, const std::vector<double>& pcoef,
                          const std::vector<double>& lin, double power, const IpmOptions& opts) {
  const std::size_t n = a.cols;
  const std::size_t m = a.rows();
  if (!(power > 1.0)) throw Error(ErrorCode::kBadExponent, "interior point needs power > 1");
  if (pcoef.size() != n || lin.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "objective size mismatch");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(pcoef[k] > 0.0)) throw Error(ErrorCode::kInvalidInput, "power coefficients must be > 0");
  }
  IpmResult out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const auto N = static_cast<Eigen::Index>(n);
  const auto M = static_cast<Eigen::Index>(m);
  Eigen::Map<const Vec> b(a.rhs.data(), M);
  Eigen::Map<const Vec> c(pcoef.data(), N);
  Eigen::Map<const Vec> l(lin.data(), N);

  Vec x = Vec::Ones(N), z = Vec::Ones(N), y = Vec::Ones(M), s(M);
  Vec ax, aty;
  a_times(a, x, ax);
  for (Eigen::Index i = 0; i < M; ++i) s[i] = std::max(ax[i] - b[i], 1.0);
  const double bnorm = m ? b.lpNorm<Eigen::Infinity>() : 0.0;
  const double total = static_cast<double>(m + n);

  auto gradient = [&](const Vec& xv) {
    Vec g(N);
    for (Eigen::Index k = 0; k < N; ++k) g[k] = c[k] * power * std::pow(xv[k], power - 1.0) + l[k];
    return g;
  };

  Eigen::MatrixXd normal(N, N);
  Eigen::LLT<Eigen::MatrixXd> llt;
  double kkt = std::numeric_limits<double>::infinity();
  std::size_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    const Vec grad = gradient(x);
    a_times(a, x, ax);
    at_times(a, y, aty);
    const Vec rd = grad - aty - z;
    const Vec rp = ax - s - b;
    const double comp = s.dot(y) + x.dot(z);
    const double mu = comp / total;
    double fval = 0.0;
    for (Eigen::Index k = 0; k < N; ++k) fval += c[k] * std::pow(x[k], power) + l[k] * x[k];
    const double pres = m ? rp.lpNorm<Eigen::Infinity>() / (1.0 + bnorm) : 0.0;
    const double dres = rd.lpNorm<Eigen::Infinity>() / (1.0 + grad.lpNorm<Eigen::Infinity>());
    kkt = std::max({pres, dres, comp / (1.0 + std::abs(fval))});
    if (kkt <= 1e-2 * opts.tolerance) break;

    // Normal matrix  H + X^-1 Z + A^T D A.
    const Vec d = y.cwiseQuotient(s);
    normal.setZero();
    for (Eigen::Index k = 0; k < N; ++k) {
      normal(k, k) = c[k] * power * (power - 1.0) * std::pow(x[k], power - 2.0) + z[k] / x[k];
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double di = d[static_cast<Eigen::Index>(i)];
      for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) {
        const double ve = di * a.value[e];
        for (std::size_t f = a.start[i]; f < a.start[i + 1]; ++f) {
          normal(a.index[e], a.index[f]) += ve * a.value[f];
        }
      }
    }
    llt.compute(normal);
    if (llt.info() != Eigen::Success) {
      normal.diagonal().array() += 1e-12 * (1.0 + normal.diagonal().cwiseAbs().maxCoeff());
      llt.compute(normal);
      if (llt.info() != Eigen::Success) break;
    }

    Vec dx, dy, ds, dz;
    auto solve = [&](const Vec& rs, const Vec& rx) {
      Vec t1 = d.cwiseProduct(rp) - rs.cwiseQuotient(s);
      Vec at1;
      at_times(a, t1, at1);
      const Vec rhs = -rd - at1 + rx.cwiseQuotient(x);
      dx = llt.solve(rhs);
      Vec adx;
      a_times(a, dx, adx);
      dy = -d.cwiseProduct(rp + adx) + rs.cwiseQuotient(s);
      ds = (rs - s.cwiseProduct(dy)).cwiseQuotient(y);
      dz = (rx - z.cwiseProduct(dx)).cwiseQuotient(x);
    };

    // Predictor.
    solve(-s.cwiseProduct(y), -x.cwiseProduct(z));
    double ap = std::min(max_step(x, dx), max_step(s, ds));
    double ad = std::min(max_step(y, dy), max_step(z, dz));
    double alpha = std::min(ap, ad);
    const double mu_aff = ((s + alpha * ds).dot(y + alpha * dy) +
                           (x + alpha * dx).dot(z + alpha * dz)) / total;
    const double sigma = std::pow(std::clamp(mu_aff / std::max(mu, 1e-300), 0.0, 1.0), 3.0);

    // Corrector with the second-order complementarity term.
    const Vec rs = Vec::Constant(M, sigma * mu) - s.cwiseProduct(y) - ds.cwiseProduct(dy);
    const Vec rx = Vec::Constant(N, sigma * mu) - x.cwiseProduct(z) - dx.cwiseProduct(dz);
    solve(rs, rx);
    ap = std::min(max_step(x, dx), max_step(s, ds));
    ad = std::min(max_step(y, dy), max_step(z, dz));
    alpha = std::min(1.0, 0.995 * std::min(ap, ad));
    x += alpha * dx;
    s += alpha * ds;
    y += alpha * dy;
    z += alpha * dz;
    for (Eigen::Index k = 0; k < N; ++k) {
      x[k] = std::max(x[k], 1e-300);
      z[k] = std::max(z[k], 1e-300);
    }
    for (Eigen::Index i = 0; i < M; ++i) {
      s[i] = std::max(s[i], 1e-300);
      y[i] = std::max(y[i], 1e-300);
    }
  }

  out.iterations = it;
  out.kkt_residual = kkt;
  out.converged = kkt <= opts.tolerance;
  out.x.assign(x.data(), x.data() + N);
  out.primal_violation = repair_feasibility(a, pcoef, out.x);
  out.value = separable_objective(pcoef, lin, power, out.x);
  out.y.assign(y.data(), y.data() + M);
  out.lower_bound = std::min(out.value, lagrangian_bound(a, pcoef, lin, power, out.y));
  return out;
}

}  // namespace hajlab::solver
