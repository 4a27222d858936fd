/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hajlab {

using Index = std::size_t;

/// Sorted, duplicate-free list of point indices.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<Index> members);
  explicit PointSet(std::vector<Index> members);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Index i) const noexcept;
  const std::vector<Index>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Index operator[](std::size_t k) const { return members_[k]; }

  bool operator==(const PointSet&) const = default;

 private:
  std::vector<Index> members_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& a, const PointSet& b);

/// Finite metric measure space: symmetric distance matrix satisfying the
/// triangle inequality, strictly positive point weights. Immutable.
class MetricMeasureSpace {
 public:
  /// Validates and builds. `dist` is row-major n*n.
  static MetricMeasureSpace build(std::vector<double> dist, std::vector<double> weight,
                                  std::vector<std::string> labels = {},
                                  std::vector<std::vector<double>> coords = {});

  std::size_t size() const noexcept { return n_; }
  double distance(Index i, Index j) const noexcept { return dist_[i * n_ + j]; }
  double weight(Index i) const noexcept { return weight_[i]; }
  std::span<const double> weights() const noexcept { return weight_; }
  std::span<const double> distance_row(Index i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<double>>& coords() const noexcept { return coords_; }

  double diameter() const noexcept { return diameter_; }
  double min_positive_distance() const noexcept { return min_positive_; }
  double total_measure() const noexcept { return total_; }

  /// Points ordered by distance from `x` (x first).
  std::span<const Index> by_distance(Index x) const noexcept {
    return {order_.data() + x * n_, n_};
  }
  std::span<const double> sorted_distances(Index x) const noexcept {
    return {sorted_.data() + x * n_, n_};
  }

  /// Number of points and measure of the open ball B(x, r).
  std::size_t ball_count(Index x, double r) const noexcept;
  double ball_measure(Index x, double r) const noexcept;

  PointSet all() const;

  /// Restriction of the metric and measure to `subset` (reindexed 0..k-1).
  MetricMeasureSpace subspace(const PointSet& subset) const;
  MetricMeasureSpace with_scaled_weights(double t) const;
  MetricMeasureSpace with_scaled_distances(double t) const;
  /// Point i of the result is point perm[i] of this space.
  MetricMeasureSpace permuted(std::span<const Index> perm) const;

 private:
  MetricMeasureSpace() = default;
  void index();

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<double> weight_;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> coords_;
  double diameter_ = 0.0;
  double min_positive_ = 0.0;
  double total_ = 0.0;
  std::vector<Index> order_;
  std::vector<double> sorted_;
  std::vector<double> prefix_;  // per row: prefix_[x*(n+1)+k] = mass of first k
};

MetricMeasureSpace build_space(const std::vector<std::vector<double>>& dist,
                               const std::vector<double>& weight);

/// Open ball {y : d(y, x) < r}.
PointSet ball(const MetricMeasureSpace& space, Index center, double r);
double measure(const MetricMeasureSpace& space, const PointSet& e);
double diam(const MetricMeasureSpace& space, const PointSet& e);
/// sup{d(x, y) : x in e, y in f}
double separation_sup(const MetricMeasureSpace& space, const PointSet& e, const PointSet& f);

/// Points with inner <= d(x, O) < outer.
PointSet shell(const MetricMeasureSpace& space, Index basepoint, double inner, double outer);
/// A_{kappa^j}(O) inflated by lambda: kappa^j/lambda <= d(x,O) < lambda*kappa^(j+1).
PointSet annulus(const MetricMeasureSpace& space, Index basepoint, double kappa, double lambda,
                 int j);

struct AnnulusDecomposition {
  Index basepoint = 0;
  double kappa = 2.0;
  double lambda = 1.0;
  int j_min = 0;
  int j_max = 0;
  std::vector<PointSet> annuli;    // A_{kappa^j}(O), j = j_min..j_max
  std::vector<PointSet> inflated;  // lambda A_{kappa^j}(O)
  std::vector<bool> empty;         // annuli[k] is empty

  const PointSet& at(int j) const { return annuli.at(static_cast<std::size_t>(j - j_min)); }
  const PointSet& inflated_at(int j) const {
    return inflated.at(static_cast<std::size_t>(j - j_min));
  }
};

AnnulusDecomposition annuli(const MetricMeasureSpace& space, Index basepoint, double kappa,
                            double lambda, int j_min, int j_max);

/// Largest j with kappa^(j+1) <= max distance from O, i.e. the last annulus
/// that fits inside the space.
int last_full_annulus(const MetricMeasureSpace& space, Index basepoint, double kappa);

struct ScaleWitness {
  Index center = 0;
  double radius = 0.0;
};

/// Reverse-doubling data measured at a single basepoint.
struct BasepointGrowth {
  Index basepoint = 0;
  double c_R = 1.0;
  ScaleWitness c_R_witness;
  double sigma = 0.0;
  double c_sigma = 1.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct GeometryReport {
  double kappa = 2.0;
  double c_mu = 1.0;
  ScaleWitness c_mu_witness;
  double Q = 0.0;
  double c_R = 1.0;
  ScaleWitness c_R_witness;
  bool c_R_range_empty = false;
  double sigma = 0.0;
  double c_sigma = 1.0;
  Index sigma_witness = 0;
  double r_lo = 0.0;  // radius range used for c_R, sigma, c_sigma
  double r_hi = 0.0;
  std::optional<BasepointGrowth> basepoint;
};

/// c_mu = sup mu(B(x,2r)) / mu(B(x,r)) with its witness; 1 for n = 1.
std::pair<double, ScaleWitness> doubling_constant(const MetricMeasureSpace& space);

GeometryReport geometry_report(const MetricMeasureSpace& space, double kappa,
                               std::optional<Index> basepoint = std::nullopt);

BasepointGrowth basepoint_growth(const MetricMeasureSpace& space, Index basepoint, double kappa);

/// Smallest c_sigma with mu(B(x,r))/mu(B(x,r0)) <= c_sigma (r/r0)^sigma for all
/// r_lo <= r < r0 <= r_hi at the given centre.
double reverse_growth_constant(const MetricMeasureSpace& space, Index center, double sigma,
                               double r_lo, double r_hi);

}  // namespace hajlab
