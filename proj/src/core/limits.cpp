/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/median.hpp"
#include "core/parallel.hpp"
#include "core/relcap.hpp"

namespace hajlab {

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  }
}

void check_basepoint(const MetricMeasureSpace& space, Index o) {
  if (o >= space.size()) throw Error(ErrorCode::kInvalidInput, "basepoint out of range");
}

void check_range(int j_min, int j_max) {
  if (j_min > j_max) throw Error(ErrorCode::kInvalidInput, "empty j range");
}

double max_distance_from(const MetricMeasureSpace& space, Index o) {
  return space.sorted_distances(o).back();
}

}  // namespace

MedianTrace median_trace(const MetricMeasureSpace& space, std::span<const double> u,
                         Index basepoint, double kappa, int j_min, int j_max) {
  check_kappa(kappa);
  check_basepoint(space, basepoint);
  check_range(j_min, j_max);
  MedianTrace tr;
  tr.basepoint = basepoint;
  tr.kappa = kappa;
  tr.j_min = j_min;
  tr.j_max = j_max;
  for (int j = j_min; j <= j_max; ++j) {
    const PointSet a = annulus(space, basepoint, kappa, 1.0, j);
    tr.empty.push_back(a.empty());
    tr.medians.push_back(a.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : median(space, u, a));
  }
  return tr;
}

int last_nonempty_annulus(const MetricMeasureSpace& space, Index basepoint, double kappa) {
  check_kappa(kappa);
  check_basepoint(space, basepoint);
  const double r = max_distance_from(space, basepoint);
  if (!(r > 0.0)) throw Error(ErrorCode::kDegenerateSpace, "basepoint sees no other point");
  int j = static_cast<int>(std::floor(std::log(r) / std::log(kappa)));
  // Guard the floor against rounding in the logarithms.
  while (std::pow(kappa, j + 1) <= r) ++j;
  while (std::pow(kappa, j) > r) --j;
  return j;
}

DecayReport median_decay_check(const MetricMeasureSpace& space, std::span<const double> u,
                               std::span<const double> g, Index basepoint, double kappa,
                               double s, double p, double sigma, std::optional<int> k_min,
                               std::optional<int> k_max) {
  validate_exponents(s, p);
  check_kappa(kappa);
  check_basepoint(space, basepoint);
  require_s_gradient(space, u, g, s, p);
  const int lo = k_min.value_or(0);
  const int hi = k_max.value_or(last_full_annulus(space, basepoint, kappa));
  if (hi <= lo) throw Error(ErrorCode::kInvalidInput, "need at least two annuli");

  DecayReport rep;
  rep.sigma = sigma;
  rep.model_rate = s - sigma / p;
  rep.g_norm = lp_norm(space, g, p);
  rep.ball_one = space.ball_measure(basepoint, 1.0);

  // Instance constants at exactly the radii the chain uses:
  // mu(A_k) >= (1 - c_R) mu(B(O, kappa^{k+1})) >= (1 - c_R) mu(B(O,1)) kappa^{k sigma} / c_sigma.
  rep.c_R = 0.0;
  rep.c_sigma = 0.0;
  for (int k = lo; k <= hi; ++k) {
    const double r = std::pow(kappa, k), big = std::pow(kappa, k + 1);
    const double inner = space.ball_measure(basepoint, r);
    const double outer = space.ball_measure(basepoint, big);
    rep.c_R = std::max(rep.c_R, inner / outer);
    rep.c_sigma = std::max(rep.c_sigma, rep.ball_one * std::pow(big, sigma) / outer);
  }
  rep.c_sigma = std::max(rep.c_sigma, 1.0);
  const double cp = 4.0 * std::pow(2.0, std::max(p - 1.0, 0.0));
  if (rep.c_R < 1.0) {
    rep.constant = std::pow(cp * std::pow(2.0 * kappa * kappa, s * p) * 2.0 * rep.c_sigma /
                                ((1.0 - rep.c_R) * rep.ball_one),
                            1.0 / p);
  } else {
    rep.constant = std::numeric_limits<double>::infinity();
  }

  const auto tr = median_trace(space, u, basepoint, kappa, lo, hi);
  std::vector<double> xs, ys;
  rep.passed = true;
  for (int k = lo; k < hi; ++k) {
    const auto idx = static_cast<std::size_t>(k - lo);
    DecayStep st;
    st.k = k;
    if (tr.empty[idx] || tr.empty[idx + 1]) continue;
    st.diff = std::abs(tr.medians[idx + 1] - tr.medians[idx]);
    st.bound = rep.constant * std::pow(kappa, k * rep.model_rate) * rep.g_norm;
    st.passed = st.diff <= st.bound * (1.0 + 1e-12);
    rep.passed = rep.passed && st.passed;
    if (st.diff > 0.0) {
      xs.push_back(k * std::log(kappa));
      ys.push_back(std::log(st.diff));
    }
    rep.steps.push_back(st);
  }
  rep.fit_points = xs.size();
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    rep.fitted_rate = sxy / sxx;
  } else {
    rep.fitted_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

BSequence build_b_sequence(std::span<const double> a, double p, double floor) {
  if (!(p > 0.0)) throw Error(ErrorCode::kBadExponent, "p must be positive");
  if (!(floor > 0.0) || !std::isfinite(floor)) {
    throw Error(ErrorCode::kInvalidInput, "floor must be positive");
  }
  for (double v : a) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kNegativeEntry, "sequence entries must be finite and >= 0");
    }
  }
  const std::size_t n = a.size();
  BSequence out;
  out.tail.assign(n, 0.0);
  out.b.assign(n, 0.0);
  // Adding nonnegative terms keeps the suffix sums exactly nonincreasing.
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    acc += a[k];
    out.tail[k] = acc;
  }
  const double total = acc;
  for (std::size_t k = 0; k < n; ++k) {
    out.b[k] = std::pow(std::max(out.tail[k], floor), 1.0 / (2.0 * p));
    const double term = a[k] / std::pow(out.b[k], p);
    out.sum_ratio += term;
    if (out.tail[k] < floor) out.floor_term += term;
  }
  // sum (R_j - R_{j+1}) / sqrt(R_j) <= 2 sum (sqrt R_j - sqrt R_{j+1}) <= 2 sqrt R_0;
  // indices below the floor contribute at most R / sqrt(floor) each in total.
  out.main_bound = 2.0 * std::sqrt(total);
  out.bound_holds = out.sum_ratio <= (out.main_bound + out.floor_term) * (1.0 + 1e-12);
  return out;
}

ExceptionalSet exceptional_set(const MetricMeasureSpace& space, std::span<const double> u,
                               std::span<const double> g, Index basepoint, double kappa,
                               double lambda, double s, double p, double floor, int j_min,
                               int j_max) {
  validate_exponents(s, p);
  check_kappa(kappa);
  check_basepoint(space, basepoint);
  check_range(j_min, j_max);
  if (!(lambda > 1.0)) throw Error(ErrorCode::kBadProblem, "lambda must exceed 1");
  require_s_gradient(space, u, g, s, p);

  ExceptionalSet ex;
  ex.j_min = j_min;
  ex.j_max = j_max;
  ex.floor_used = floor;
  std::vector<int> overlap(space.size(), 0);
  for (int j = j_min; j <= j_max; ++j) {
    const PointSet big = annulus(space, basepoint, kappa, lambda, j);
    ex.a_seq.push_back(power_integral(space, g, p, big));
    for (Index x : big) ++overlap[x];
  }
  ex.overlap = overlap.empty() ? 0 : *std::max_element(overlap.begin(), overlap.end());
  const auto bs = build_b_sequence(ex.a_seq, p, floor);
  ex.b_seq = bs.b;
  ex.sum_ratio = bs.sum_ratio;
  ex.main_bound = bs.main_bound;
  ex.floor_term = bs.floor_term;
  for (int j = j_min; j <= j_max; ++j) {
    const auto idx = static_cast<std::size_t>(j - j_min);
    const PointSet a = annulus(space, basepoint, kappa, 1.0, j);
    std::vector<Index> ej;
    double m = std::numeric_limits<double>::quiet_NaN();
    if (!a.empty()) {
      m = median(space, u, a);
      for (Index x : a) {
        if (std::abs(u[x] - m) > ex.b_seq[idx]) ej.push_back(x);
      }
    }
    ex.medians.push_back(m);
    ex.e_j.emplace_back(std::move(ej));
    ex.set_union = hajlab::set_union(ex.set_union, ex.e_j.back());
  }
  return ex;
}

ThinnessReport thinness_tail(const MetricMeasureSpace& space, const PointSet& e, Index basepoint,
                             double kappa, std::span<const double> lambdas, double s, double p,
                             int j_min, int j_max, double threshold, const SolverOptions& opts) {
  validate_exponents(s, p);
  check_kappa(kappa);
  check_basepoint(space, basepoint);
  check_range(j_min, j_max);
  if (lambdas.empty()) throw Error(ErrorCode::kInvalidInput, "no lambda given");
  for (double l : lambdas) {
    if (!(l > 1.0)) throw Error(ErrorCode::kBadProblem, "lambda must exceed 1");
  }
  ThinnessReport rep;
  rep.j_min = j_min;
  rep.j_max = j_max;
  rep.threshold = threshold;
  rep.consistent = true;
  const auto nj = static_cast<std::size_t>(j_max - j_min + 1);
  for (double lambda : lambdas) {
    ThinnessTail tt;
    tt.lambda = lambda;
    tt.per_j_cap.assign(nj, 0.0);
    tt.status.assign(nj, SolveStatus::kExact);
    parallel_for(nj, [&](std::size_t k) {
      const int j = j_min + static_cast<int>(k);
      const PointSet part = set_intersection(e, annulus(space, basepoint, kappa, 1.0, j));
      if (part.empty()) return;
      const auto cap =
          relative_capacity(space, part, annulus(space, basepoint, kappa, lambda, j), s, p, opts);
      tt.per_j_cap[k] = cap.value;
      tt.status[k] = cap.status;
    });
    tt.tail_sums.assign(nj, 0.0);
    double acc = 0.0;
    for (std::size_t k = nj; k-- > 0;) {
      acc += tt.per_j_cap[k];
      tt.tail_sums[k] = acc;
    }
    tt.consistent = std::any_of(tt.tail_sums.begin(), tt.tail_sums.end(),
                                [&](double v) { return v <= threshold; });
    rep.consistent = rep.consistent && tt.consistent;
    rep.per_lambda.push_back(std::move(tt));
  }
  return rep;
}

LimitReport limit_along_complement(const MetricMeasureSpace& space, std::span<const double> u,
                                   const PointSet& e, Index basepoint,
                                   std::span<const double> radii, double kappa) {
  check_basepoint(space, basepoint);
  check_kappa(kappa);
  if (radii.empty()) throw Error(ErrorCode::kInvalidInput, "empty radius schedule");
  if (u.size() != space.size()) throw Error(ErrorCode::kInvalidInput, "function length mismatch");
  LimitReport rep;
  for (double r : radii) {
    ComplementLevel lv;
    lv.radius = r;
    lv.sup = -std::numeric_limits<double>::infinity();
    lv.inf = std::numeric_limits<double>::infinity();
    for (Index x = 0; x < space.size(); ++x) {
      if (e.contains(x) || !(space.distance(x, basepoint) > r)) continue;
      lv.sup = std::max(lv.sup, u[x]);
      lv.inf = std::min(lv.inf, u[x]);
      ++lv.count;
    }
    if (lv.count == 0) {
      throw Error(ErrorCode::kComplementEmptyBeyondN,
                  "no point outside E beyond radius " + std::to_string(r));
    }
    rep.levels.push_back(lv);
  }
  const auto far = std::max_element(rep.levels.begin(), rep.levels.end(),
                                    [](const auto& a, const auto& b) { return a.radius < b.radius; });
  rep.c = 0.5 * (far->sup + far->inf);
  rep.epsilon = 0.5 * (far->sup - far->inf);
  const int jl = last_full_annulus(space, basepoint, kappa);
  rep.median_limit = median(space, u, annulus(space, basepoint, kappa, 1.0, jl));
  rep.median_gap = std::abs(rep.c - rep.median_limit);
  return rep;
}

}  // namespace hajlab
