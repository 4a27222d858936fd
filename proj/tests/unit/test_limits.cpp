/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/generators.hpp"
#include "core/hajlasz.hpp"
#include "core/limits.hpp"
#include "core/median.hpp"

using namespace hajlab;

namespace {

GeneratedSpace line(double extent) {
  FamilySpec spec;
  spec.kind = FamilyKind::kLineGrid;
  spec.extent = extent;
  return generate(spec);
}

}  // namespace

TEST_CASE("median trace on the sign ramp is identically one") {
  for (double extent : {2.0, 8.0, 32.0}) {
    const auto ex = example_exe(extent);
    const int jmax = last_nonempty_annulus(ex.space, ex.origin, 2.0);
    const auto tr = median_trace(ex.space, ex.u, ex.origin, 2.0, 0, jmax);
    for (std::size_t k = 0; k < tr.medians.size(); ++k) {
      CHECK(!tr.empty[k]);
      CHECK(tr.medians[k] == 1.0);
    }
  }
  const auto fine = example_exe(8.0, 0.5);
  const auto tr = median_trace(fine.space, fine.u, fine.origin, 2.0, 0, 2);
  for (double m : tr.medians) CHECK(m == 1.0);
  CHECK_THROWS_AS(example_exe(1.0), Error);
}

TEST_CASE("median trace of constant and decaying functions") {
  const auto gs = line(32);
  const std::vector<double> c(gs.space.size(), 3.5);
  for (double m : median_trace(gs.space, c, gs.origin, 2.0, 0, 4).medians) CHECK(m == 3.5);
  const auto u = random_function(gs.space, Profile::kDecay, 0);
  const auto tr = median_trace(gs.space, u, gs.origin, 2.0, 0, 4);
  for (std::size_t k = 1; k < tr.medians.size(); ++k) CHECK(tr.medians[k] < tr.medians[k - 1]);
  const auto empty = median_trace(gs.space, u, gs.origin, 2.0, 0, 7);
  CHECK(empty.empty[6]);
  CHECK(std::isnan(empty.medians[6]));
}

TEST_CASE("median decay bound") {
  const auto gs = line(64);
  const std::vector<double> c(gs.space.size(), 1.0);
  const std::vector<double> zero(gs.space.size(), 0.0);
  const auto flat = median_decay_check(gs.space, c, zero, gs.origin, 2.0, 1.0, 2.0, 1.0);
  for (const auto& st : flat.steps) CHECK(st.diff == 0.0);
  CHECK(flat.passed);

  std::mt19937_64 rng(4);
  for (int it = 0; it < 5; ++it) {
    auto u = random_function(gs.space, Profile::kNoise, 100 + it);
    const auto g = minimal_gradient(gs.space, u, 1.0, 2.0);
    const auto rep = median_decay_check(gs.space, u, g.g_opt.g, gs.origin, 2.0, 1.0, 2.0, 1.0);
    CHECK(rep.passed);
    CHECK(rep.c_R < 1.0);
  }
}

TEST_CASE("b sequence examples and properties") {
  const auto zero = build_b_sequence(std::vector<double>(5, 0.0), 2.0, 0.01);
  for (double b : zero.b) CHECK(b == doctest::Approx(std::pow(0.01, 0.25)));
  CHECK(zero.sum_ratio == 0.0);

  std::vector<double> geo;
  for (int j = 1; j <= 30; ++j) geo.push_back(std::pow(2.0, -j));
  const auto g = build_b_sequence(geo, 1.0, 1e-12);
  CHECK(g.b[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g.b[3] == doctest::Approx(std::sqrt(std::pow(2.0, -3))).epsilon(1e-8));
  CHECK(g.sum_ratio <= 2.0);
  CHECK(g.bound_holds);

  std::vector<double> spike(8, 0.0);
  spike[5] = 4.0;
  const auto sp = build_b_sequence(spike, 2.0, 1e-6);
  for (int j = 0; j <= 5; ++j) CHECK(sp.b[static_cast<std::size_t>(j)] == doctest::Approx(std::sqrt(2.0)));
  CHECK(sp.sum_ratio == doctest::Approx(2.0));
  CHECK(sp.main_bound == doctest::Approx(4.0));

  CHECK_THROWS_AS(build_b_sequence(std::vector<double>{1.0, -1.0}, 1.0, 0.1), Error);
  CHECK_THROWS_AS(build_b_sequence(std::vector<double>{1.0}, 1.0, 0.0), Error);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> a(1 + rng() % 40);
    for (double& v : a) v = d(rng) < 0.3 ? 0.0 : std::pow(d(rng), 3.0) * std::pow(0.7, rng() % 20);
    const double p = 0.5 + 2.0 * d(rng);
    const auto bs = build_b_sequence(a, p, 1e-6);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(bs.b[k] > 0.0);
      if (k > 0) CHECK(bs.b[k] <= bs.b[k - 1]);
    }
    CHECK(bs.bound_holds);
  }
}

TEST_CASE("exceptional set construction") {
  const auto gs = line(64);
  const std::size_t n = gs.space.size();
  const std::vector<double> c(n, 2.0), zero(n, 0.0);
  const auto flat = exceptional_set(gs.space, c, zero, gs.origin, 2.0, 2.0, 1.0, 1.0, 1e-4, 0, 5);
  for (double a : flat.a_seq) CHECK(a == 0.0);
  for (double b : flat.b_seq) CHECK(b == doctest::Approx(std::pow(1e-4, 0.5)));
  CHECK(flat.set_union.empty());

  const auto u = random_function(gs.space, Profile::kNoise, 3);
  const auto g = minimal_gradient(gs.space, u, 1.0, 1.0);
  const auto ex = exceptional_set(gs.space, u, g.g_opt.g, gs.origin, 2.0, 2.0, 1.0, 1.0, 1e-4, 0, 5);
  CHECK(ex.overlap >= 1);
  CHECK(ex.overlap <= 4);
  for (int j = 0; j <= 5; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const PointSet a = annulus(gs.space, gs.origin, 2.0, 1.0, j);
    CHECK(is_subset(ex.e_j[k], a));
    for (Index x : set_difference(a, ex.e_j[k])) {
      CHECK(std::abs(u[x] - ex.medians[k]) <= ex.b_seq[k]);
    }
    if (k > 0) CHECK(ex.b_seq[k] <= ex.b_seq[k - 1]);
  }
  CHECK(ex.sum_ratio <= ex.main_bound + ex.floor_term + 1e-12);
  CHECK_THROWS_AS(exceptional_set(gs.space, u, zero, gs.origin, 2.0, 2.0, 1.0, 1.0, 1e-4, 0, 5),
                  Error);
}

TEST_CASE("thinness tails") {
  const auto gs = line(64);
  const std::vector<double> lambdas{2.0};
  const auto none = thinness_tail(gs.space, PointSet{}, gs.origin, 2.0, lambdas, 1.0, 1.0, 0, 4);
  CHECK(none.consistent);
  for (double c : none.per_lambda[0].per_j_cap) CHECK(c == 0.0);

  const auto all = thinness_tail(gs.space, gs.space.all(), gs.origin, 2.0, lambdas, 1.0, 1.0, 0, 4);
  CHECK(!all.consistent);
  const auto& tt = all.per_lambda[0];
  double acc = 0.0;
  for (std::size_t k = tt.per_j_cap.size(); k-- > 0;) {
    acc += tt.per_j_cap[k];
    CHECK(tt.tail_sums[k] == acc);
    if (k + 1 < tt.per_j_cap.size()) CHECK(tt.tail_sums[k] >= tt.tail_sums[k + 1]);
  }
}

TEST_CASE("limit along the complement") {
  const auto gs = line(32);
  const std::vector<double> c(gs.space.size(), -0.25);
  const std::vector<double> radii{4.0, 8.0, 16.0};
  const auto flat = limit_along_complement(gs.space, c, PointSet{}, gs.origin, radii);
  CHECK(flat.c == -0.25);
  CHECK(flat.epsilon == 0.0);

  const auto ex = example_exe(32);
  const auto both = limit_along_complement(ex.space, ex.u, PointSet{}, ex.origin, radii);
  for (const auto& lv : both.levels) CHECK(lv.sup - lv.inf == 2.0);
  std::vector<Index> left;
  for (Index i = 0; i < ex.space.size(); ++i) {
    if (ex.space.coords()[i][0] < 0) left.push_back(i);
  }
  const auto one = limit_along_complement(ex.space, ex.u, PointSet(left), ex.origin, radii);
  CHECK(one.c == 1.0);
  CHECK(one.epsilon == 0.0);
  CHECK(one.median_gap == 0.0);
  const std::vector<double> far{40.0};
  try {
    limit_along_complement(ex.space, ex.u, PointSet{}, ex.origin, far);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kComplementEmptyBeyondN);
  }
}
