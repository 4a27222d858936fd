/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "core/hajlasz.hpp"
#include "core/space.hpp"

namespace hajlab {

struct MedianTrace {
  Index basepoint = 0;
  double kappa = 2.0;
  int j_min = 0;
  int j_max = 0;
  std::vector<double> medians;  // NaN where the annulus is empty
  std::vector<bool> empty;
};

MedianTrace median_trace(const MetricMeasureSpace& space, std::span<const double> u,
                         Index basepoint, double kappa, int j_min, int j_max);

/// Largest j whose annulus A_{kappa^j}(O) is nonempty.
int last_nonempty_annulus(const MetricMeasureSpace& space, Index basepoint, double kappa);

struct DecayStep {
  int k = 0;
  double diff = 0.0;   // |m_{k+1} - m_k|
  double bound = 0.0;  // C kappa^{k(s - sigma/p)} ||g||_p
  bool passed = false;
};

struct DecayReport {
  double sigma = 0.0;
  double c_R = 0.0;      // max mu(B(O,kappa^k)) / mu(B(O,kappa^{k+1})) over the steps used
  double c_sigma = 0.0;  // smallest constant in mu(B(O,1)) R^sigma <= c_sigma mu(B(O,R))
  double ball_one = 0.0; // mu(B(O,1))
  double constant = 0.0;
  double g_norm = 0.0;
  std::vector<DecayStep> steps;
  double fitted_rate = 0.0;  // log-log slope of diff against kappa^k
  double model_rate = 0.0;   // s - sigma/p
  std::size_t fit_points = 0;
  bool passed = false;       // every step within its bound
};

/// Steps k = k_min..k_max-1 compare consecutive annuli; defaults to
/// k_min = 0 and the last full annulus.
DecayReport median_decay_check(const MetricMeasureSpace& space, std::span<const double> u,
                               std::span<const double> g, Index basepoint, double kappa,
                               double s, double p, double sigma,
                               std::optional<int> k_min = std::nullopt,
                               std::optional<int> k_max = std::nullopt);

struct BSequence {
  std::vector<double> tail;  // R_j = sum_{k >= j} a_k
  std::vector<double> b;     // max(R_j, floor)^{1/(2p)}
  double sum_ratio = 0.0;    // sum a_j / b_j^p
  double main_bound = 0.0;   // 2 sqrt(sum a)
  double floor_term = 0.0;   // contribution of indices with R_j < floor
  bool bound_holds = false;
};

BSequence build_b_sequence(std::span<const double> a, double p, double floor);

struct ExceptionalSet {
  int j_min = 0;
  int j_max = 0;
  std::vector<double> medians;
  std::vector<double> a_seq;
  std::vector<double> b_seq;
  std::vector<PointSet> e_j;
  PointSet set_union;
  double floor_used = 0.0;
  double sum_ratio = 0.0;
  double main_bound = 0.0;
  double floor_term = 0.0;
  int overlap = 0;  // max_x #{j : x in Lambda A_j}
};

ExceptionalSet exceptional_set(const MetricMeasureSpace& space, std::span<const double> u,
                               std::span<const double> g, Index basepoint, double kappa,
                               double lambda, double s, double p, double floor, int j_min,
                               int j_max);

struct ThinnessTail {
  double lambda = 0.0;
  std::vector<double> per_j_cap;
  std::vector<SolveStatus> status;
  std::vector<double> tail_sums;  // tail_sums[m] = sum_{j >= m} per_j_cap[j]
  bool consistent = false;
};

struct ThinnessReport {
  int j_min = 0;
  int j_max = 0;  // truncation
  double threshold = 0.0;
  std::vector<ThinnessTail> per_lambda;
  bool consistent = false;  // all lambdas consistent
};

/// Consistent with thinness at the truncation scale iff some tail sum drops
/// to `threshold` or below.
ThinnessReport thinness_tail(const MetricMeasureSpace& space, const PointSet& e, Index basepoint,
                             double kappa, std::span<const double> lambdas, double s, double p,
                             int j_min, int j_max, double threshold = 0.05,
                             const SolverOptions& opts = {});

struct ComplementLevel {
  double radius = 0.0;
  double sup = 0.0;
  double inf = 0.0;
  std::size_t count = 0;
};

struct LimitReport {
  std::vector<ComplementLevel> levels;
  double c = 0.0;        // midpoint at the largest radius
  double epsilon = 0.0;  // half-width at the largest radius
  double median_limit = 0.0;  // median over the last nonempty annulus
  double median_gap = 0.0;    // |c - median_limit|
};

/// Throws ComplementEmptyBeyondN if no point outside E lies beyond some radius.
LimitReport limit_along_complement(const MetricMeasureSpace& space, std::span<const double> u,
                                   const PointSet& e, Index basepoint,
                                   std::span<const double> radii, double kappa = 2.0);

}  // namespace hajlab
