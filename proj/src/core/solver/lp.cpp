/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/solver/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace hajlab::solver {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kHarrisTol = 1e-10;
constexpr double kPriceTol = 1e-11;
constexpr std::size_t kDegenerateSwitch = 50;

// Dual simplex tableau in revised form. Columns 0..m-1 are the dual
// variables y_i (column = row i of A, transposed); columns m..m+n-1 are the
// slacks of A^T y <= c.
class DualSimplex {
 public:
  DualSimplex(const RowMatrix& a, const std::vector<double>& c, const LpOptions& opts)
      : a_(a), c_(c), opts_(opts), n_(a.cols), m_(a.rows()) {
    head_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) head_[k] = m_ + k;
    row_norm_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = 0.0;
      for (std::size_t e = a_.start[i]; e < a_.start[i + 1]; ++e) s += a_.value[e] * a_.value[e];
      row_norm_[i] = std::sqrt(std::max(s, 1e-300));
    }
    refactor();
  }

  void run() {
    std::size_t degenerate_run = 0;
    bool bland = false;
    std::size_t since_refactor = 0;
    while (iterations_ < opts_.max_iterations) {
      if (since_refactor >= opts_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
      const auto [q, dq] = price(bland);
      if (q == kNone) {
        // Confirm on a fresh factorization before declaring optimality.
        if (since_refactor == 0) {
          optimal_ = true;
          return;
        }
        refactor();
        since_refactor = 0;
        continue;
      }
      Eigen::VectorXd w = column_image(q);
      const std::size_t r = ratio_test(w, bland);
      if (r == kNone) {
        throw Error(ErrorCode::kSolverFailure,
                    "dual unbounded: covering constraints are infeasible");
      }
      const double theta = std::max(0.0, xb_[static_cast<Eigen::Index>(r)] /
                                             w[static_cast<Eigen::Index>(r)]);
      if (theta * std::abs(dq) <= 1e-14) {
        if (++degenerate_run >= kDegenerateSwitch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(q, dq, r, w, theta);
      ++iterations_;
      ++since_refactor;
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = -lambda_[static_cast<Eigen::Index>(k)];
    return x;
  }

  std::vector<double> dual() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
      if (head_[k] < m_) y[head_[k]] = std::max(0.0, xb_[static_cast<Eigen::Index>(k)]);
    }
    return y;
  }

  std::size_t iterations() const { return iterations_; }
  bool optimal() const { return optimal_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  double basic_cost(std::size_t col) const { return col < m_ ? -a_.rhs[col] : 0.0; }

  void refactor() {
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t col = head_[k];
      const auto kk = static_cast<Eigen::Index>(k);
      if (col < m_) {
        for (std::size_t e = a_.start[col]; e < a_.start[col + 1]; ++e) b(a_.index[e], kk) = a_.value[e];
      } else {
        b(static_cast<Eigen::Index>(col - m_), kk) = 1.0;
      }
    }
    binv_ = b.partialPivLu().inverse();
    Eigen::Map<const Eigen::VectorXd> c(c_.data(), n);
    xb_ = binv_ * c;
    for (Eigen::Index k = 0; k < n; ++k) xb_[k] = std::max(0.0, xb_[k]);
    Eigen::VectorXd cb(n);
    for (std::size_t k = 0; k < n_; ++k) cb[static_cast<Eigen::Index>(k)] = basic_cost(head_[k]);
    lambda_ = binv_.transpose() * cb;
  }

  // Most negative scaled reduced cost (Dantzig), or the first negative one
  // under Bland's rule.
  std::pair<std::size_t, double> price(bool bland) const {
    std::vector<double> x(n_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = -lambda_[static_cast<Eigen::Index>(k)];
    std::size_t best = kNone;
    double best_score = 0.0;
    double best_d = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double d = a_.row_dot(i, x.data()) - a_.rhs[i];
      if (d >= -kPriceTol * (1.0 + std::abs(a_.rhs[i]))) continue;
      const double score = d / row_norm_[i];
      if (bland) return {i, d};
      if (score < best_score) {
        best_score = score;
        best = i;
        best_d = d;
      }
    }
    for (std::size_t k = 0; k < n_; ++k) {
      const double d = x[k];
      if (d >= -kPriceTol) continue;
      if (bland) return {m_ + k, d};
      if (d < best_score) {
        best_score = d;
        best = m_ + k;
        best_d = d;
      }
    }
    return {best, best_d};
  }

  Eigen::VectorXd column_image(std::size_t q) const {
    if (q >= m_) return binv_.col(static_cast<Eigen::Index>(q - m_));
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t e = a_.start[q]; e < a_.start[q + 1]; ++e) {
      w.noalias() += a_.value[e] * binv_.col(a_.index[e]);
    }
    return w;
  }

  std::size_t ratio_test(const Eigen::VectorXd& w, bool bland) const {
    const auto n = static_cast<Eigen::Index>(n_);
    if (bland) {
      std::size_t best = kNone;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index k = 0; k < n; ++k) {
        if (w[k] <= kPivotTol) continue;
        const double ratio = xb_[k] / w[k];
        const auto uk = static_cast<std::size_t>(k);
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && best != kNone && head_[uk] < head_[best])) {
          best_ratio = std::min(best_ratio, ratio);
          best = uk;
        }
      }
      return best;
    }
    // Harris two-pass: relaxed bound first, then the largest pivot below it.
    double bound = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (w[k] > kPivotTol) bound = std::min(bound, (xb_[k] + kHarrisTol) / w[k]);
    }
    if (!std::isfinite(bound)) return kNone;
    std::size_t best = kNone;
    double best_w = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (w[k] > kPivotTol && xb_[k] / w[k] <= bound && w[k] > best_w) {
        best_w = w[k];
        best = static_cast<std::size_t>(k);
      }
    }
    return best;
  }

  void pivot(std::size_t q, double dq, std::size_t r, const Eigen::VectorXd& w, double theta) {
    const auto rr = static_cast<Eigen::Index>(r);
    xb_.noalias() -= theta * w;
    xb_[rr] = theta;
    for (Eigen::Index k = 0; k < xb_.size(); ++k) xb_[k] = std::max(0.0, xb_[k]);
    const Eigen::RowVectorXd prow = binv_.row(rr) / w[rr];
    binv_.noalias() -= w * prow;
    binv_.row(rr) = prow;
    lambda_.noalias() += dq * prow.transpose();
    head_[r] = q;
  }

  const RowMatrix& a_;
  const std::vector<double>& c_;
  LpOptions opts_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> head_;
  std::vector<double> row_norm_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd lambda_;
  std::size_t iterations_ = 0;
  bool optimal_ = false;
};

}  // namespace

LpResult solve_lp(const RowMatrix& a, const std::vector<double>& cost, const LpOptions& opts) {
  if (cost.size() != a.cols) throw Error(ErrorCode::kInvalidInput, "cost size mismatch");
  for (double c : cost) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::kInvalidInput, "LP costs must be finite and nonnegative");
    }
  }
  LpResult out;
  if (a.cols == 0) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a.rhs[i] > 0.0) throw Error(ErrorCode::kSolverFailure, "empty LP is infeasible");
    }
    out.optimal = true;
    return out;
  }

  DualSimplex simplex(a, cost, opts);
  simplex.run();
  out.iterations = simplex.iterations();
  out.optimal = simplex.optimal();

  out.x = simplex.primal();
  out.primal_violation = repair_feasibility(a, cost, out.x);
  out.value = 0.0;
  for (std::size_t k = 0; k < a.cols; ++k) out.value += cost[k] * out.x[k];

  // Scale y into A^T y <= c so b^T y is a certified lower bound.
  out.y = simplex.dual();
  std::vector<double> aty(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (out.y[i] == 0.0) continue;
    for (std::size_t e = a.start[i]; e < a.start[i + 1]; ++e) {
      aty[static_cast<std::size_t>(a.index[e])] += a.value[e] * out.y[i];
    }
  }
  double scale = 1.0;
  for (std::size_t k = 0; k < a.cols; ++k) {
    if (aty[k] > cost[k]) scale = std::min(scale, cost[k] / aty[k]);
  }
  double lb = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out.y[i] *= scale;
    lb += a.rhs[i] * out.y[i];
  }
  out.lower_bound = std::min(lb, out.value);
  return out;
}

}  // namespace hajlab::solver
