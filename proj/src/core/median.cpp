/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/median.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/hajlasz.hpp"

namespace hajlab {

namespace {

void check_set(const MetricMeasureSpace& space, std::span<const double> u, const PointSet& e) {
  if (e.empty()) throw Error(ErrorCode::kEmptySet, "median of an empty set");
  if (u.size() != space.size()) {
    throw Error(ErrorCode::kInvalidInput, "function length does not match the space");
  }
  for (Index i : e) {
    if (i >= space.size()) throw Error(ErrorCode::kInvalidInput, "point index out of range");
    if (!std::isfinite(u[i])) throw Error(ErrorCode::kInvalidInput, "function must be finite on E");
  }
}

PointSet select(const PointSet& e, std::span<const double> u, bool (*keep)(double, double),
                double m) {
  std::vector<Index> out;
  for (Index i : e) {
    if (keep(u[i], m)) out.push_back(i);
  }
  return PointSet(std::move(out));
}

}  // namespace

double median(const MetricMeasureSpace& space, std::span<const double> u, const PointSet& e,
              MedianRule rule) {
  check_set(space, u, e);
  std::vector<Index> order(e.begin(), e.end());
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return u[a] > u[b]; });
  long double total = 0.0L;
  for (Index i : e) total += space.weight(i);
  const long double half = total / 2.0L;

  // Walk the distinct values downward; mu({u > a}) grows as a decreases, so
  // the admissible values form an upper ray.
  long double above = 0.0L;
  double best = u[order.front()];
  std::size_t k = 0;
  while (k < order.size()) {
    const double a = u[order[k]];
    const bool ok = rule == MedianRule::kStrict ? above < half : above <= half;
    if (!ok) break;
    best = a;
    while (k < order.size() && u[order[k]] == a) above += space.weight(order[k++]);
  }
  return best;
}

MedianWitness level_sets(const MetricMeasureSpace& space, std::span<const double> u,
                         const PointSet& e) {
  MedianWitness w;
  w.value = median(space, u, e);
  w.sub = select(e, u, [](double x, double m) { return x <= m; }, w.value);
  w.sup = select(e, u, [](double x, double m) { return x >= m; }, w.value);
  return w;
}

PointSet shift_witness(const MetricMeasureSpace& space, std::span<const double> u,
                       const PointSet& e, double c) {
  const auto w = level_sets(space, u, e);
  return w.value >= c ? w.sup : w.sub;
}

std::pair<PointSet, PointSet> pair_witness(const MetricMeasureSpace& space,
                                           std::span<const double> u, const PointSet& e,
                                           const PointSet& f) {
  const auto we = level_sets(space, u, e);
  const auto wf = level_sets(space, u, f);
  if (we.value <= wf.value) return {we.sub, wf.sup};
  return {we.sup, wf.sub};
}

double oscillation_constant(double p) { return 4.0 * std::pow(2.0, std::max(p - 1.0, 0.0)); }

OscillationReport oscillation_bound_check(const MetricMeasureSpace& space,
                                          std::span<const double> u, std::span<const double> g,
                                          const PointSet& e, const PointSet& f, double s,
                                          double p) {
  validate_exponents(s, p);
  check_set(space, u, e);
  check_set(space, u, f);
  require_s_gradient(space, u, g, s, p);
  OscillationReport rep;
  rep.median_e = median(space, u, e);
  rep.median_f = median(space, u, f);
  rep.lhs = std::pow(std::abs(rep.median_e - rep.median_f), p);
  rep.c_p = oscillation_constant(p);
  rep.d_sup = separation_sup(space, e, f);
  const double avg_e = power_integral(space, g, p, e) / measure(space, e);
  const double avg_f = power_integral(space, g, p, f) / measure(space, f);
  rep.rhs = rep.c_p * std::pow(rep.d_sup, s * p) * (avg_e + avg_f);
  // Feasibility is checked to a relative tolerance, so allow the same slack.
  rep.passed = rep.lhs <= rep.rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

}  // namespace hajlab
