/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "core/error.hpp"

namespace hajlab {

PointSet::PointSet(std::initializer_list<Index> members) : PointSet(std::vector<Index>(members)) {}

PointSet::PointSet(std::vector<Index> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool PointSet::contains(Index i) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), i);
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  std::vector<Index> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet(std::move(out));
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  std::vector<Index> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet(std::move(out));
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PointSet(std::move(out));
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

MetricMeasureSpace MetricMeasureSpace::build(std::vector<double> dist, std::vector<double> weight,
                                             std::vector<std::string> labels,
                                             std::vector<std::vector<double>> coords) {
  const std::size_t n = weight.size();
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "space has no points");
  if (dist.size() != n * n) {
    throw Error(ErrorCode::kInvalidInput, "distance matrix is not n x n for n = " +
                                              std::to_string(n));
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "label count does not match point count");
  }
  if (!coords.empty() && coords.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "coordinate count does not match point count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weight[i] > 0.0) || !std::isfinite(weight[i])) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  "weight[" + std::to_string(i) + "] = " + std::to_string(weight[i]));
    }
  }
  double scale = 0.0;
  for (double d : dist) {
    if (!std::isfinite(d) || d < 0.0) {
      throw Error(ErrorCode::kInvalidInput, "distances must be finite and nonnegative");
    }
    scale = std::max(scale, d);
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i * n + i] != 0.0) {
      throw Error(ErrorCode::kInvalidInput, "dist[" + std::to_string(i) + "][" +
                                                std::to_string(i) + "] must be 0");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = dist[i * n + j];
      const double b = dist[j * n + i];
      if (std::abs(a - b) > tol) {
        std::ostringstream msg;
        msg << "dist[" << i << "][" << j << "] = " << a << " but dist[" << j << "][" << i
            << "] = " << b;
        throw Error(ErrorCode::kAsymmetricDistance, msg.str());
      }
      if (!(a > 0.0)) {
        throw Error(ErrorCode::kInvalidInput, "distinct points " + std::to_string(i) + ", " +
                                                  std::to_string(j) + " at distance 0");
      }
      dist[j * n + i] = a;
    }
  }
  // Triangle inequality d(i,k) <= d(i,j) + d(j,k); report the worst triple.
  double worst = 0.0;
  std::size_t wi = 0, wj = 0, wk = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* di = dist.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dij = di[j];
      const double* dj = dist.data() + j * n;
      for (std::size_t k = i + 1; k < n; ++k) {
        const double excess = di[k] - dij - dj[k];
        if (excess > worst) {
          worst = excess;
          wi = i;
          wj = j;
          wk = k;
        }
      }
    }
  }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "worst triple (" << wi << ", " << wj << ", " << wk << "): d(" << wi << "," << wk
        << ") = " << dist[wi * n + wk] << " > " << dist[wi * n + wj] << " + "
        << dist[wj * n + wk];
    throw Error(ErrorCode::kTriangleViolation, msg.str());
  }

  MetricMeasureSpace s;
  s.n_ = n;
  s.dist_ = std::move(dist);
  s.weight_ = std::move(weight);
  s.labels_ = std::move(labels);
  s.coords_ = std::move(coords);
  s.index();
  return s;
}

void MetricMeasureSpace::index() {
  const std::size_t n = n_;
  diameter_ = 0.0;
  min_positive_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      diameter_ = std::max(diameter_, dist_[i * n + j]);
      min_positive_ = std::min(min_positive_, dist_[i * n + j]);
    }
  }
  if (n < 2) min_positive_ = 0.0;
  total_ = std::accumulate(weight_.begin(), weight_.end(), 0.0);

  order_.resize(n * n);
  sorted_.resize(n * n);
  prefix_.resize(n * (n + 1));
  for (std::size_t x = 0; x < n; ++x) {
    Index* ord = order_.data() + x * n;
    std::iota(ord, ord + n, Index{0});
    const double* row = dist_.data() + x * n;
    std::stable_sort(ord, ord + n, [row](Index a, Index b) { return row[a] < row[b]; });
    double* pre = prefix_.data() + x * (n + 1);
    pre[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sorted_[x * n + k] = row[ord[k]];
      pre[k + 1] = pre[k] + weight_[ord[k]];
    }
  }
}

std::size_t MetricMeasureSpace::ball_count(Index x, double r) const noexcept {
  const double* row = sorted_.data() + x * n_;
  return static_cast<std::size_t>(std::lower_bound(row, row + n_, r) - row);
}

double MetricMeasureSpace::ball_measure(Index x, double r) const noexcept {
  return prefix_[x * (n_ + 1) + ball_count(x, r)];
}

PointSet MetricMeasureSpace::all() const {
  std::vector<Index> m(n_);
  std::iota(m.begin(), m.end(), Index{0});
  return PointSet(std::move(m));
}

MetricMeasureSpace MetricMeasureSpace::subspace(const PointSet& subset) const {
  const std::size_t k = subset.size();
  std::vector<double> d(k * k);
  std::vector<double> w(k);
  std::vector<std::string> labels;
  std::vector<std::vector<double>> coords;
  for (std::size_t a = 0; a < k; ++a) {
    w[a] = weight_[subset[a]];
    if (!labels_.empty()) labels.push_back(labels_[subset[a]]);
    if (!coords_.empty()) coords.push_back(coords_[subset[a]]);
    for (std::size_t b = 0; b < k; ++b) d[a * k + b] = distance(subset[a], subset[b]);
  }
  return build(std::move(d), std::move(w), std::move(labels), std::move(coords));
}

MetricMeasureSpace MetricMeasureSpace::with_scaled_weights(double t) const {
  std::vector<double> w(weight_);
  for (double& x : w) x *= t;
  return build(dist_, std::move(w), labels_, coords_);
}

MetricMeasureSpace MetricMeasureSpace::with_scaled_distances(double t) const {
  std::vector<double> d(dist_);
  for (double& x : d) x *= t;
  return build(std::move(d), weight_, labels_, {});
}

MetricMeasureSpace MetricMeasureSpace::permuted(std::span<const Index> perm) const {
  if (perm.size() != n_) throw Error(ErrorCode::kInvalidInput, "permutation size mismatch");
  std::vector<double> d(n_ * n_);
  std::vector<double> w(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    w[a] = weight_[perm[a]];
    for (std::size_t b = 0; b < n_; ++b) d[a * n_ + b] = distance(perm[a], perm[b]);
  }
  return build(std::move(d), std::move(w));
}

MetricMeasureSpace build_space(const std::vector<std::vector<double>>& dist,
                               const std::vector<double>& weight) {
  const std::size_t n = weight.size();
  if (dist.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "distance matrix has " + std::to_string(dist.size()) +
                                              " rows for " + std::to_string(n) + " weights");
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : dist) {
    if (row.size() != n) throw Error(ErrorCode::kInvalidInput, "distance matrix is ragged");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MetricMeasureSpace::build(std::move(flat), weight);
}

PointSet ball(const MetricMeasureSpace& space, Index center, double r) {
  const std::size_t count = space.ball_count(center, r);
  auto order = space.by_distance(center);
  return PointSet(std::vector<Index>(order.begin(), order.begin() + static_cast<long>(count)));
}

double measure(const MetricMeasureSpace& space, const PointSet& e) {
  double total = 0.0;
  for (Index i : e) total += space.weight(i);
  return total;
}

double diam(const MetricMeasureSpace& space, const PointSet& e) {
  if (e.empty()) throw Error(ErrorCode::kEmptySet, "diameter of the empty set");
  double d = 0.0;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a + 1; b < e.size(); ++b) d = std::max(d, space.distance(e[a], e[b]));
  }
  return d;
}

double separation_sup(const MetricMeasureSpace& space, const PointSet& e, const PointSet& f) {
  double d = 0.0;
  for (Index x : e) {
    for (Index y : f) d = std::max(d, space.distance(x, y));
  }
  return d;
}

PointSet shell(const MetricMeasureSpace& space, Index basepoint, double inner, double outer) {
  std::vector<Index> out;
  auto row = space.distance_row(basepoint);
  for (Index x = 0; x < space.size(); ++x) {
    if (row[x] >= inner && row[x] < outer) out.push_back(x);
  }
  return PointSet(std::move(out));
}

PointSet annulus(const MetricMeasureSpace& space, Index basepoint, double kappa, double lambda,
                 int j) {
  if (!(kappa > 1.0)) throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  if (!(lambda >= 1.0)) throw Error(ErrorCode::kInvalidInput, "lambda must be at least 1");
  const double r = std::pow(kappa, j);
  return shell(space, basepoint, r / lambda, lambda * kappa * r);
}

AnnulusDecomposition annuli(const MetricMeasureSpace& space, Index basepoint, double kappa,
                            double lambda, int j_min, int j_max) {
  if (!(kappa > 1.0)) throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  if (!(lambda >= 1.0)) throw Error(ErrorCode::kInvalidInput, "lambda must be at least 1");
  if (basepoint >= space.size()) throw Error(ErrorCode::kInvalidInput, "basepoint out of range");
  if (j_max < j_min) throw Error(ErrorCode::kInvalidInput, "empty j range");
  AnnulusDecomposition out;
  out.basepoint = basepoint;
  out.kappa = kappa;
  out.lambda = lambda;
  out.j_min = j_min;
  out.j_max = j_max;
  for (int j = j_min; j <= j_max; ++j) {
    out.annuli.push_back(annulus(space, basepoint, kappa, 1.0, j));
    out.inflated.push_back(annulus(space, basepoint, kappa, lambda, j));
    out.empty.push_back(out.annuli.back().empty());
  }
  return out;
}

int last_full_annulus(const MetricMeasureSpace& space, Index basepoint, double kappa) {
  auto row = space.sorted_distances(basepoint);
  const double reach = row.empty() ? 0.0 : row.back();
  int j = 0;
  while (std::pow(kappa, j + 2) <= reach * (1.0 + 1e-12)) ++j;
  return j;
}

namespace {

// Right endpoints of the constancy intervals of r -> mu(B(x, r)) and
// r -> mu(B(x, factor*r)).
std::vector<double> ratio_breakpoints(const MetricMeasureSpace& space, Index x, double factor) {
  std::vector<double> bp;
  for (double d : space.sorted_distances(x)) {
    if (d > 0.0) {
      bp.push_back(d);
      bp.push_back(d / factor);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

struct RadiusSample {
  double left;   // inf of the interval (clipped to r_lo)
  double right;  // right endpoint (clipped to r_hi)
  double mass;   // mu(B(x, r)) on the interval
};

// Constancy intervals of mu(B(x, .)) intersected with [r_lo, r_hi].
std::vector<RadiusSample> radius_samples(const MetricMeasureSpace& space, Index x, double r_lo,
                                         double r_hi) {
  std::vector<RadiusSample> out;
  if (!(r_hi >= r_lo)) return out;
  std::vector<double> cuts;
  for (double d : space.sorted_distances(x)) {
    if (d > r_lo && d < r_hi) cuts.push_back(d);
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double left = r_lo;
  for (double c : cuts) {
    out.push_back({left, c, space.ball_measure(x, c)});
    left = c;
  }
  out.push_back({left, r_hi, space.ball_measure(x, r_hi)});
  // Intervals are (left, right]; the first one also contains r_lo itself,
  // where the mass may be smaller when r_lo is a distance value.
  const double at_lo = space.ball_measure(x, r_lo);
  if (at_lo < out.front().mass) out.insert(out.begin(), {r_lo, r_lo, at_lo});
  return out;
}

double fitted_slope(const std::vector<RadiusSample>& samples) {
  // Least squares of log mass against log radius over distinct right endpoints.
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) {
    if (s.right > 0.0) pts.emplace_back(std::log(s.right), std::log(s.mass));
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (auto [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (auto [a, b] : pts) {
    sxx += (a - mx) * (a - mx);
    sxy += (a - mx) * (b - my);
  }
  if (sxx <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

void reverse_doubling_at(const MetricMeasureSpace& space, Index x, double kappa, double r_lo,
                         double r_hi, double& best, ScaleWitness& witness) {
  auto eval = [&](double r) {
    const double ratio = space.ball_measure(x, r) / space.ball_measure(x, kappa * r);
    if (ratio > best) {
      best = ratio;
      witness = {x, r};
    }
  };
  for (double b : ratio_breakpoints(space, x, kappa)) {
    if (b >= r_lo && b <= r_hi) eval(b);
  }
  eval(r_hi);
}

}  // namespace

double reverse_growth_constant(const MetricMeasureSpace& space, Index center, double sigma,
                               double r_lo, double r_hi) {
  const auto samples = radius_samples(space, center, r_lo, r_hi);
  double c = 1.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (std::size_t m = k; m < samples.size(); ++m) {
      const double r = samples[k].left;
      const double r0 = samples[m].right;
      if (!(r > 0.0) || !(r0 > r)) continue;
      c = std::max(c, samples[k].mass / samples[m].mass * std::pow(r0 / r, sigma));
    }
  }
  return c;
}

BasepointGrowth basepoint_growth(const MetricMeasureSpace& space, Index basepoint, double kappa) {
  if (!(kappa > 1.0)) throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  if (space.size() < 2) throw Error(ErrorCode::kDegenerateSpace, "need at least two points");
  if (basepoint >= space.size()) throw Error(ErrorCode::kInvalidInput, "basepoint out of range");
  BasepointGrowth g;
  g.basepoint = basepoint;
  g.r_lo = space.min_positive_distance();
  g.r_hi = space.diameter() / kappa;
  g.c_R = 0.0;
  if (g.r_hi >= g.r_lo) {
    reverse_doubling_at(space, basepoint, kappa, g.r_lo, g.r_hi, g.c_R, g.c_R_witness);
  } else {
    g.c_R = 1.0;
  }
  const double slope = fitted_slope(radius_samples(space, basepoint, g.r_lo, g.r_hi));
  g.sigma = std::isfinite(slope) ? std::max(0.0, slope) : 0.0;
  g.c_sigma = reverse_growth_constant(space, basepoint, g.sigma, g.r_lo, g.r_hi);
  return g;
}

std::pair<double, ScaleWitness> doubling_constant(const MetricMeasureSpace& space) {
  double c_mu = 1.0;
  ScaleWitness witness{0, space.min_positive_distance()};
  for (Index x = 0; x < space.size(); ++x) {
    for (double r : ratio_breakpoints(space, x, 2.0)) {
      const double ratio = space.ball_measure(x, 2.0 * r) / space.ball_measure(x, r);
      if (ratio > c_mu) {
        c_mu = ratio;
        witness = {x, r};
      }
    }
  }
  return {c_mu, witness};
}

GeometryReport geometry_report(const MetricMeasureSpace& space, double kappa,
                               std::optional<Index> basepoint) {
  if (!(kappa > 1.0)) throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  if (space.size() < 2) throw Error(ErrorCode::kDegenerateSpace, "need at least two points");
  GeometryReport rep;
  rep.kappa = kappa;
  const std::size_t n = space.size();

  std::tie(rep.c_mu, rep.c_mu_witness) = doubling_constant(space);
  rep.Q = std::log2(rep.c_mu);

  rep.r_lo = space.min_positive_distance();
  rep.r_hi = space.diameter() / kappa;
  rep.c_R_range_empty = rep.r_hi < rep.r_lo;
  if (rep.c_R_range_empty) {
    rep.c_R = 1.0;
  } else {
    rep.c_R = 0.0;
    for (Index x = 0; x < n; ++x) {
      reverse_doubling_at(space, x, kappa, rep.r_lo, rep.r_hi, rep.c_R, rep.c_R_witness);
    }
  }

  double sigma = std::numeric_limits<double>::infinity();
  for (Index x = 0; x < n; ++x) {
    const double slope = fitted_slope(radius_samples(space, x, rep.r_lo, rep.r_hi));
    if (std::isfinite(slope) && slope < sigma) {
      sigma = slope;
      rep.sigma_witness = x;
    }
  }
  rep.sigma = std::isfinite(sigma) ? std::max(0.0, sigma) : 0.0;
  rep.c_sigma = 1.0;
  if (!rep.c_R_range_empty) {
    for (Index x = 0; x < n; ++x) {
      rep.c_sigma = std::max(rep.c_sigma,
                             reverse_growth_constant(space, x, rep.sigma, rep.r_lo, rep.r_hi));
    }
  }
  if (basepoint) rep.basepoint = basepoint_growth(space, *basepoint, kappa);
  return rep;
}

}  // namespace hajlab
