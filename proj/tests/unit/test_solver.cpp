/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "core/solver/ipm.hpp"
#include "core/solver/lp.hpp"
#include "oracles.hpp"

using namespace hajlab;
using namespace hajlab::solver;

namespace {

// Random covering program: rows with a few positive and negative entries.
struct Instance {
  RowMatrix a;
  std::vector<double> cost;
  oracle::Polyhedron poly;
};

Instance random_instance(unsigned seed, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance in;
  in.a.cols = n;
  in.poly.dim = n;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(n, 0.0);
    row[k] = 1;
    in.poly.add(row, 0.0);
    in.cost.push_back(0.2 + unit(rng));
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(n, 0.0);
    const std::size_t p = rng() % n, q = (p + 1 + rng() % (n - 1)) % n;
    const std::size_t r = rng() % n;
    row[p] += 1.0;
    row[q] += 1.0;
    if (r != p && r != q) row[r] += unit(rng) < 0.5 ? -0.7 : 0.4;
    const double b = unit(rng) < 0.2 ? 0.0 : unit(rng) * 2.0;
    in.poly.add(row, b);
  }
  // Sparse copy of the non-bound rows.
  RowMatrix clean;
  clean.cols = n;
  for (std::size_t i = n; i < in.poly.g.size(); ++i) {
    const auto& row = in.poly.g[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (row[k] != 0.0) {
        clean.index.push_back(static_cast<int>(k));
        clean.value.push_back(row[k]);
      }
    }
    clean.start.push_back(clean.index.size());
    clean.rhs.push_back(in.poly.h[i]);
  }
  in.a = clean;
  return in;
}

}  // namespace

TEST_CASE("simplex matches vertex enumeration on random covering programs") {
  for (unsigned seed = 1; seed <= 60; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const std::size_t m = 3 + seed % 6;
    const auto in = random_instance(seed, n, m);
    const auto res = solve_lp(in.a, in.cost);
    const double ref = oracle::lp_vertex_min(in.poly, in.cost);
    CAPTURE(seed);
    CHECK(res.optimal);
    CHECK(res.primal_violation <= 1e-12);
    CHECK(max_violation(in.a, res.x) <= 1e-12);
    CHECK(res.value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(res.value - res.lower_bound <= 1e-9 * std::max(1.0, res.value));
  }
}

TEST_CASE("simplex on a small hand-solved program") {
  // min x0 + x1 + x2 with every pair summing to at least 1.
  RowMatrix a;
  a.cols = 3;
  a.add_row({{0, 1.0}, {1, 1.0}}, 1.0);
  a.add_row({{1, 1.0}, {2, 1.0}}, 1.0);
  a.add_row({{0, 1.0}, {2, 1.0}}, 1.0);
  const auto res = solve_lp(a, {1.0, 1.0, 1.0});
  CHECK(res.value == doctest::Approx(1.5));
  CHECK(res.lower_bound == doctest::Approx(1.5));
  CHECK(res.y[0] == doctest::Approx(0.5));
  CHECK(res.y[1] == doctest::Approx(0.5));
  CHECK(res.y[2] == doctest::Approx(0.5));
}

TEST_CASE("interior point matches active-set enumeration for quadratic costs") {
  for (unsigned seed = 100; seed <= 140; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const std::size_t m = 2 + seed % 5;
    const auto in = random_instance(seed, n, m);
    std::vector<double> lin(n, 0.0);
    const auto res = solve_separable(in.a, in.cost, lin, 2.0);
    const double ref = oracle::qp_active_set_min(in.poly, in.cost, lin);
    CAPTURE(seed);
    CHECK(res.converged);
    CHECK(res.primal_violation <= 1e-12);
    CHECK(res.value == doctest::Approx(ref).epsilon(1e-7));
    CHECK(res.lower_bound <= res.value);
    CHECK(res.lower_bound == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("interior point handles powers between one and two") {
  // min x^1.5 + y^1.5 s.t. x + y >= 2: optimum x = y = 1, value 2.
  RowMatrix a;
  a.cols = 2;
  a.add_row({{0, 1.0}, {1, 1.0}}, 2.0);
  const auto res = solve_separable(a, {1.0, 1.0}, {0.0, 0.0}, 1.5);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(res.lower_bound == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("infeasible covering program is a solver failure") {
  RowMatrix a;
  a.cols = 1;
  a.add_row({{0, -1.0}}, 1.0);
  CHECK_THROWS_AS(solve_lp(a, {1.0}), Error);
}
