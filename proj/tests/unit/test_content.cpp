/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/content.hpp"
#include "core/error.hpp"
#include "core/generators.hpp"
#include "oracles.hpp"

using namespace hajlab;

namespace {

MetricMeasureSpace t3() { return build_space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {1, 1, 1}); }

PointSet random_subset(std::mt19937_64& rng, std::size_t n) {
  std::vector<Index> m;
  while (m.empty()) {
    for (Index i = 0; i < n; ++i) {
      if (rng() % 2) m.push_back(i);
    }
  }
  return PointSet(m);
}

}  // namespace

TEST_CASE("content examples on three points") {
  const auto s = t3();
  CHECK(hausdorff_content(s, PointSet{0}, 1.0, 2.0).value == doctest::Approx(1.0));
  const auto pair2 = hausdorff_content(s, PointSet{0, 2}, 1.0, 2.0);
  CHECK(pair2.value == doctest::Approx(1.5));
  CHECK(pair2.exact);
  REQUIRE(pair2.covering.balls.size() == 1);
  CHECK(pair2.covering.balls[0].center == 1);
  CHECK(pair2.covering.balls[0].radius == 2.0);
  CHECK(hausdorff_content(s, PointSet{0, 2}, 1.0, 1.0).value == doctest::Approx(2.0));
  CHECK_THROWS_AS(hausdorff_content(s, PointSet{}, 1.0, 1.0), Error);
  CHECK_THROWS_AS(hausdorff_content(s, PointSet{0}, 1.0, 0.0), Error);
}

TEST_CASE("exact content matches subset enumeration; greedy stays within its factor") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 120; ++it) {
    const std::size_t n = 3 + rng() % 6;
    const auto s = oracle::random_space(static_cast<unsigned>(it + 500), n, it % 2 == 0);
    const auto e = random_subset(rng, n);
    const double d = 0.5 * static_cast<double>(rng() % 5);
    const double rho = 0.5 + 0.5 * static_cast<double>(rng() % 8);
    CAPTURE(it);
    const auto ex = hausdorff_content(s, e, d, rho);
    REQUIRE(ex.exact);
    CHECK(ex.value == doctest::Approx(oracle::hausdorff_content(s, e, d, rho)).epsilon(1e-12));
    for (Index x : e) CHECK(ex.covering.covers.contains(x));
    for (const auto& b : ex.covering.balls) CHECK(b.radius <= rho);
    const auto gr = hausdorff_content(s, e, d, rho, ContentMode::kGreedy);
    CHECK(!gr.exact);
    REQUIRE(gr.greedy_ratio_bound);
    CHECK(gr.value >= ex.value * (1.0 - 1e-12));
    CHECK(gr.value <= ex.value * *gr.greedy_ratio_bound * (1.0 + 1e-12));

    const auto f = random_subset(rng, n);
    CHECK(content_subadditivity_check(s, e, f, d, rho).passed);
    // Monotone in E and in rho.
    const auto ef = set_union(e, f);
    CHECK(ex.value <= hausdorff_content(s, ef, d, rho).value * (1.0 + 1e-12));
    CHECK(hausdorff_content(s, e, d, 2.0 * rho).value <= ex.value * (1.0 + 1e-12));
  }
}

TEST_CASE("codimension zero content is bounded by the smallest singleton balls") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 30; ++it) {
    const auto s = oracle::random_space(static_cast<unsigned>(it + 800), 6);
    const auto e = random_subset(rng, 6);
    const double rho = 2.0;
    double bound = 0.0;
    for (Index x : e) {
      double r = rho;
      for (double dist : s.sorted_distances(x)) {
        if (dist > 0.0) {
          r = std::min(r, dist);
          break;
        }
      }
      bound += s.ball_measure(x, r);
    }
    CHECK(hausdorff_content(s, e, 0.0, rho).value <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("node limit falls back to the greedy cover") {
  FamilySpec spec;
  spec.kind = FamilyKind::kLineGrid;
  spec.extent = 12;
  const auto gs = generate(spec);
  ContentOptions opts;
  opts.node_limit = 3;
  const auto r = hausdorff_content(gs.space, gs.space.all(), 0.5, 3.0, ContentMode::kExact, opts);
  CHECK(!r.exact);
  CHECK(r.greedy_ratio_bound);
}

TEST_CASE("capacity comparisons report finite ratios") {
  FamilySpec spec;
  spec.kind = FamilyKind::kLineGrid;
  spec.extent = 16;
  const auto gs = generate(spec);
  const auto& s = gs.space;
  const PointSet a = annulus(s, gs.origin, 2.0, 1.0, 1);
  const PointSet pair{a[0], a[a.size() - 1]};
  const auto rep = capacity_content_comparison(s, pair, gs.origin, 2.0, 2.0, 1, 1.0, 1.0, 0.5);
  CHECK(rep.rho == doctest::Approx(5.0));
  CHECK(rep.content_exact);
  CHECK(std::isfinite(rep.ratio));
  CHECK(rep.ratio > 0.0);
  CHECK_THROWS_AS(capacity_content_comparison(s, pair, gs.origin, 2.0, 2.0, 1, 1.0, 1.0, 1.0),
                  Error);
  CHECK_THROWS_AS(capacity_content_comparison(s, PointSet{gs.origin}, gs.origin, 2.0, 2.0, 1, 1.0,
                                              1.0, 0.5),
                  Error);

  const auto t = t3();
  const auto full = capacity_content_fullnorm_check(t, PointSet{0, 2}, 1.0, 1.0, 0.5);
  CHECK(full.rho == doctest::Approx(5.0));
  CHECK(std::isfinite(full.ratio));
  const auto single = capacity_content_fullnorm_check(t, PointSet{1}, 1.0, 1.0, 0.5);
  CHECK(single.ratio > 0.0);
}
