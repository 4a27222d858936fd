/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/content.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "core/error.hpp"
#include "core/relcap.hpp"

namespace hajlab {

namespace {

using Mask = std::vector<bool>;

struct Candidate {
  Ball ball;
  double cost = 0.0;
  std::vector<std::size_t> hits;  // positions in E
};

std::vector<Candidate> candidates(const MetricMeasureSpace& space, const PointSet& e, double d,
                                  double rho) {
  const std::size_t n = space.size();
  std::vector<int> pos(n, -1);
  for (std::size_t k = 0; k < e.size(); ++k) pos[e[k]] = static_cast<int>(k);

  // Keep the cheapest ball per covered pattern.
  std::map<std::vector<std::size_t>, Candidate> best;
  for (Index x = 0; x < n; ++x) {
    const auto dist = space.sorted_distances(x);
    std::vector<double> radii;
    for (double r : dist) {
      if (r > 0.0 && r <= rho && (radii.empty() || radii.back() != r)) radii.push_back(r);
    }
    if (radii.empty() || radii.back() != rho) radii.push_back(rho);
    for (double r : radii) {
      Candidate c;
      c.ball = {x, r};
      c.cost = space.ball_measure(x, r) / std::pow(r, d);
      const std::size_t cnt = space.ball_count(x, r);
      const auto order = space.by_distance(x);
      for (std::size_t k = 0; k < cnt; ++k) {
        if (pos[order[k]] >= 0) c.hits.push_back(static_cast<std::size_t>(pos[order[k]]));
      }
      if (c.hits.empty()) continue;
      std::sort(c.hits.begin(), c.hits.end());
      auto it = best.find(c.hits);
      if (it == best.end() || c.cost < it->second.cost) best[c.hits] = c;
    }
  }
  std::vector<Candidate> out;
  for (auto& [key, c] : best) out.push_back(std::move(c));
  // Drop candidates dominated by a cheaper superset.
  std::vector<Candidate> kept;
  for (std::size_t a = 0; a < out.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < out.size() && !dominated; ++b) {
      if (a == b || out[b].cost > out[a].cost || out[b].hits.size() < out[a].hits.size()) continue;
      if (out[b].cost == out[a].cost && out[b].hits.size() == out[a].hits.size()) continue;
      dominated = std::includes(out[b].hits.begin(), out[b].hits.end(), out[a].hits.begin(),
                                out[a].hits.end());
    }
    if (!dominated) kept.push_back(out[a]);
  }
  return kept;
}

std::vector<std::size_t> greedy_cover(const std::vector<Candidate>& cand, std::size_t m) {
  Mask covered(m, false);
  std::size_t left = m;
  std::vector<std::size_t> pick;
  while (left > 0) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      std::size_t fresh = 0;
      for (std::size_t h : cand[c].hits) fresh += covered[h] ? 0 : 1;
      if (fresh == 0) continue;
      const double ratio = cand[c].cost / static_cast<double>(fresh);
      if (ratio < best) {
        best = ratio;
        arg = c;
      }
    }
    pick.push_back(arg);
    for (std::size_t h : cand[arg].hits) {
      if (!covered[h]) {
        covered[h] = true;
        --left;
      }
    }
  }
  return pick;
}

double pick_cost(const std::vector<Candidate>& cand, const std::vector<std::size_t>& pick) {
  double c = 0.0;
  for (std::size_t k : pick) c += cand[k].cost;
  return c;
}

class BranchAndBound {
 public:
  BranchAndBound(const std::vector<Candidate>& cand, std::size_t m, std::size_t limit)
      : cand_(cand), m_(m), limit_(limit), by_elem_(m) {
    for (std::size_t c = 0; c < cand.size(); ++c) {
      for (std::size_t h : cand[c].hits) by_elem_[h].push_back(c);
    }
    for (auto& list : by_elem_) {
      std::sort(list.begin(), list.end(),
                [&](std::size_t a, std::size_t b) { return cand_[a].cost < cand_[b].cost; });
    }
  }

  // Returns false if the node limit was hit.
  bool run(std::vector<std::size_t> incumbent) {
    best_pick_ = std::move(incumbent);
    best_ = pick_cost(cand_, best_pick_);
    std::vector<int> cover(m_, 0);
    std::vector<std::size_t> pick;
    search(cover, m_, 0.0, pick);
    return nodes_ <= limit_;
  }

  const std::vector<std::size_t>& best_pick() const { return best_pick_; }
  std::size_t nodes() const { return nodes_; }

 private:
  // Each uncovered element pays at least the cheapest per-element share of
  // any ball covering it.
  double lower_bound(const std::vector<int>& cover) const {
    double lb = 0.0;
    for (std::size_t e = 0; e < m_; ++e) {
      if (cover[e] > 0) continue;
      double share = std::numeric_limits<double>::infinity();
      for (std::size_t c : by_elem_[e]) {
        std::size_t fresh = 0;
        for (std::size_t h : cand_[c].hits) fresh += cover[h] > 0 ? 0 : 1;
        share = std::min(share, cand_[c].cost / static_cast<double>(fresh));
      }
      lb += share;
    }
    return lb;
  }

  void search(std::vector<int>& cover, std::size_t left, double cost,
              std::vector<std::size_t>& pick) {
    if (++nodes_ > limit_) return;
    if (left == 0) {
      if (cost < best_) {
        best_ = cost;
        best_pick_ = pick;
      }
      return;
    }
    if (cost + lower_bound(cover) >= best_ * (1.0 - 1e-15)) return;
    // Branch on the uncovered element with the fewest options.
    std::size_t elem = m_;
    for (std::size_t e = 0; e < m_; ++e) {
      if (cover[e] == 0 && (elem == m_ || by_elem_[e].size() < by_elem_[elem].size())) elem = e;
    }
    for (std::size_t c : by_elem_[elem]) {
      std::size_t fresh = 0;
      for (std::size_t h : cand_[c].hits) {
        if (cover[h]++ == 0) ++fresh;
      }
      pick.push_back(c);
      search(cover, left - fresh, cost + cand_[c].cost, pick);
      pick.pop_back();
      for (std::size_t h : cand_[c].hits) --cover[h];
      if (nodes_ > limit_) return;
    }
  }

  const std::vector<Candidate>& cand_;
  std::size_t m_;
  std::size_t limit_;
  std::vector<std::vector<std::size_t>> by_elem_;
  std::vector<std::size_t> best_pick_;
  double best_ = 0.0;
  std::size_t nodes_ = 0;
};

Covering make_covering(const MetricMeasureSpace& space, const std::vector<Candidate>& cand,
                       std::vector<std::size_t> pick) {
  std::sort(pick.begin(), pick.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(cand[a].ball.center, cand[a].ball.radius) <
           std::tie(cand[b].ball.center, cand[b].ball.radius);
  });
  Covering cov;
  PointSet covered;
  for (std::size_t k : pick) {
    cov.balls.push_back(cand[k].ball);
    cov.cost += cand[k].cost;
    covered = set_union(covered, ball(space, cand[k].ball.center, cand[k].ball.radius));
  }
  cov.covers = covered;
  return cov;
}

}  // namespace

ContentResult hausdorff_content(const MetricMeasureSpace& space, const PointSet& e, double d,
                                double rho, ContentMode mode, const ContentOptions& opts) {
  if (e.empty()) throw Error(ErrorCode::kEmptySet, "content of an empty set");
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kBadRho, "rho must be positive and finite");
  }
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw Error(ErrorCode::kBadExponent, "codimension must be >= 0");
  }
  for (Index i : e) {
    if (i >= space.size()) throw Error(ErrorCode::kInvalidInput, "point index out of range");
  }
  const auto cand = candidates(space, e, d, rho);
  ContentResult res;
  res.candidates = cand.size();
  auto pick = greedy_cover(cand, e.size());
  if (mode == ContentMode::kExact) {
    BranchAndBound bb(cand, e.size(), opts.node_limit);
    res.exact = bb.run(pick);
    res.nodes = bb.nodes();
    pick = bb.best_pick();
  }
  if (!res.exact) res.greedy_ratio_bound = 1.0 + std::log(static_cast<double>(e.size()));
  res.covering = make_covering(space, cand, pick);
  res.value = res.covering.cost;
  return res;
}

SubadditivityReport content_subadditivity_check(const MetricMeasureSpace& space,
                                                const PointSet& e, const PointSet& f, double d,
                                                double rho) {
  const auto hu = hausdorff_content(space, set_union(e, f), d, rho);
  const auto he = hausdorff_content(space, e, d, rho);
  const auto hf = hausdorff_content(space, f, d, rho);
  SubadditivityReport rep;
  rep.lhs = hu.value;
  rep.rhs = he.value + hf.value;
  rep.exact = hu.exact && he.exact && hf.exact;
  // Sums of the same ball costs in a different order: one rounding of slack.
  rep.passed = rep.exact && rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

namespace {

void check_alpha(double s, double p, double alpha) {
  validate_exponents(s, p);
  if (!(alpha > 0.0 && alpha < s * p)) {
    throw Error(ErrorCode::kBadAlpha, "alpha must lie in (0, sp)");
  }
}

}  // namespace

ComparisonReport capacity_content_comparison(const MetricMeasureSpace& space, const PointSet& e,
                                             Index basepoint, double kappa, double lambda, int j,
                                             double s, double p, double alpha,
                                             const SolverOptions& opts) {
  check_alpha(s, p, alpha);
  if (!(kappa > 1.0)) throw Error(ErrorCode::kBadKappa, "kappa must exceed 1");
  if (!(lambda > 1.0)) throw Error(ErrorCode::kBadProblem, "lambda must exceed 1");
  const PointSet a = annulus(space, basepoint, kappa, 1.0, j);
  if (e.empty() || !is_subset(e, a)) {
    throw Error(ErrorCode::kBadProblem, "E must be a nonempty subset of the annulus");
  }
  ComparisonReport rep;
  rep.rho = 5.0 * (1.0 - 1.0 / lambda) * std::pow(kappa, j);
  rep.dimension = s * p - alpha;
  const auto h = hausdorff_content(space, e, rep.dimension, rep.rho);
  rep.content = h.value;
  rep.content_exact = h.exact;
  rep.scaled_content = h.value / std::pow(kappa, j * alpha);
  const auto cap = relative_capacity(space, e, annulus(space, basepoint, kappa, lambda, j), s, p, opts);
  rep.capacity = cap.value;
  rep.capacity_status = cap.status;
  // The lower bound keeps the ratio an upper estimate of the true one.
  const double denom = cap.lower_bound ? *cap.lower_bound : cap.value;
  rep.ratio = rep.scaled_content / denom;
  return rep;
}

ComparisonReport capacity_content_fullnorm_check(const MetricMeasureSpace& space,
                                                 const PointSet& e, double s, double p,
                                                 double alpha, const SolverOptions& opts) {
  check_alpha(s, p, alpha);
  if (e.empty()) throw Error(ErrorCode::kEmptySet, "E is empty");
  ComparisonReport rep;
  rep.rho = 5.0 * std::min(1.0, space.diameter());
  rep.dimension = s * p - alpha;
  const auto h = hausdorff_content(space, e, rep.dimension, rep.rho);
  rep.content = h.value;
  rep.content_exact = h.exact;
  rep.scaled_content = h.value;
  const auto cap = msp_capacity(space, e, s, p, opts);
  rep.capacity = cap.value;
  rep.capacity_status = cap.status;
  const double denom = cap.lower_bound ? *cap.lower_bound : cap.value;
  rep.ratio = rep.scaled_content / denom;
  return rep;
}

}  // namespace hajlab
