/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Acceptance run: one line per criterion, nonzero exit if any fails.
// Reference values come from tests/oracles.hpp or are recomputed here from
// the definitions; the library is only the thing under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/content.hpp"
#include "core/fractional.hpp"
#include "core/generators.hpp"
#include "core/hajlasz.hpp"
#include "core/limits.hpp"
#include "core/median.hpp"
#include "core/pipeline.hpp"
#include "core/relcap.hpp"
#include "core/space.hpp"
#include "core/verify.hpp"
#include "oracles.hpp"

using namespace hajlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// First failure wins the detail slot; later ones only count.
struct Tally {
  bool pass = true;
  std::size_t failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) first = what;
    pass = false;
    ++failures;
  }
  Outcome done(const std::string& summary) const {
    if (pass) return {true, summary};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

MetricMeasureSpace line_points(const std::vector<double>& x) {
  std::vector<std::vector<double>> d(x.size(), std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) d[i][j] = std::abs(x[i] - x[j]);
  return build_space(d, std::vector<double>(x.size(), 1.0));
}

// Planar points, dyadic weights so measure sums are exact.
MetricMeasureSpace dyadic_space(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coord(0.0, 4.0);
  std::uniform_int_distribution<int> wq(1, 4);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = wq(rng) / 2.0;
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
  }
  return build_space(d, w);
}

// Quarter-integer values: ties are common.
std::vector<double> quarter_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> q(-12, 12);
  std::vector<double> u(n);
  for (double& v : u) v = q(rng) / 4.0;
  return u;
}

PointSet nonempty_subset(std::mt19937_64& rng, std::size_t n) {
  std::vector<Index> m;
  for (Index i = 0; i < n; ++i)
    if (rng() & 1) m.push_back(i);
  if (m.empty()) m.push_back(rng() % n);
  return PointSet(m);
}

double mass(const MetricMeasureSpace& s, const PointSet& e) {
  double m = 0.0;
  for (Index i : e) m += s.weight(i);
  return m;
}

double max_violation(const MetricMeasureSpace& s, const std::vector<double>& u,
                     const std::vector<double>& g, double sexp) {
  double worst = 0.0;
  for (Index i = 0; i < s.size(); ++i)
    for (Index j = i + 1; j < s.size(); ++j)
      worst = std::max(worst, std::abs(u[i] - u[j]) - std::pow(s.distance(i, j), sexp) * (g[i] + g[j]));
  return worst;
}

// ------------------------------------------------------------------ 1

Outcome c1() {
  Tally t;
  const auto ex = example_exe(32);
  const auto tr = median_trace(ex.space, ex.u, ex.origin, 2.0, 0, 4);
  for (int j = 0; j <= 4; ++j) {
    std::vector<Index> a;
    for (Index x = 0; x < ex.space.size(); ++x) {
      const double r = ex.space.distance(ex.origin, x);
      if (r >= std::pow(2.0, j) && r < std::pow(2.0, j + 1)) a.push_back(x);
    }
    const double lib = tr.medians[static_cast<std::size_t>(j)];
    t.expect(lib == 1.0, "j=" + std::to_string(j) + " median " + num(lib));
    t.expect(oracle::median(ex.space, ex.u, PointSet(a)) == 1.0, "oracle j=" + std::to_string(j));
  }
  return t.done("medians over A_{2^j}, j=0..4, all exactly 1");
}

// ------------------------------------------------------------------ 2

Outcome c2() {
  Tally t;
  const auto cat = catalog();
  for (const auto& e : cat) {
    const auto rep = geometry_report(e.space, 2.0, e.origin);
    t.expect(rep.Q == std::log2(rep.c_mu), e.name + " Q " + num(rep.Q));
    const double ref = oracle::doubling_scan(e.space);
    t.expect(std::abs(rep.c_mu - ref) <= 1e-12 * ref, e.name + " c_mu " + num(rep.c_mu) + " vs " + num(ref));
  }
  return t.done(std::to_string(cat.size()) + " catalog spaces, Q == log2(c_mu) bitwise");
}

// ------------------------------------------------------------------ 3

Outcome c3() {
  Tally t;
  std::mt19937_64 rng(301);
  std::uniform_int_distribution<int> cq(-12, 12);
  const double ps[] = {0.5, 1.0, 2.0};
  for (int it = 0; it < 500; ++it) {
    const std::size_t n = 1 + it % 16;
    const auto s = dyadic_space(rng, n);
    const auto u = quarter_values(rng, n);
    const auto e = nonempty_subset(rng, n), f = nonempty_subset(rng, n);
    const double p = ps[it % 3];
    const std::string tag = "instance " + std::to_string(it);

    const double m = median(s, u, e);
    t.expect(m == oracle::median(s, u, e), tag + " definition");
    std::vector<double> au(n), sh(n);
    const double c = cq(rng) / 4.0;
    double ip = 0.0;
    for (Index i = 0; i < n; ++i) {
      au[i] = std::abs(u[i]);
      sh[i] = u[i] + c;
    }
    for (Index i : e) ip += s.weight(i) * std::pow(au[i], p);
    const double mabs = median(s, au, e);
    t.expect(std::abs(m) <= mabs, tag + " (a)");
    t.expect(median(s, sh, e) == m + c, tag + " (b)");
    const double rhs = std::pow(2.0 * ip / mass(s, e), 1.0 / p);
    t.expect(mabs <= rhs * (1.0 + 1e-12), tag + " (c) " + num(mabs) + " > " + num(rhs));

    const double target = cq(rng) / 4.0;
    const auto w = shift_witness(s, u, e, target);
    t.expect(2.0 * mass(s, w) >= mass(s, e), tag + " shift_witness mass");
    for (Index x : w) t.expect(std::abs(m - target) <= std::abs(u[x] - target), tag + " shift_witness point");

    const auto [ew, fw] = pair_witness(s, u, e, f);
    const double mf = median(s, u, f);
    t.expect(2.0 * mass(s, ew) >= mass(s, e) && 2.0 * mass(s, fw) >= mass(s, f), tag + " pair_witness mass");
    for (Index x : ew)
      for (Index y : fw) t.expect(std::abs(m - mf) <= std::abs(u[x] - u[y]), tag + " pair_witness point");
  }
  return t.done("500 instances, n<=16, p in {0.5,1,2}: (a) (b) (c) and both witnesses exact");
}

// ------------------------------------------------------------------ 4

Outcome c4() {
  Tally t;
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> bump(0.0, 1.0);
  const double ps[] = {0.5, 1.0, 2.0, 3.0};
  std::ofstream log("acceptance_oscillation.csv");
  log << "instance,p,s,lhs,rhs\n";
  double worst = 0.0, wl = 0.0, wr = 0.0;
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + it % 11;
    const auto s = dyadic_space(rng, n);
    const auto u = quarter_values(rng, n);
    const double sexp = it % 2 ? 1.0 : 0.5;
    const double p = ps[it % 4];
    auto g = scaled_fractional_gradient(s, u, sexp);
    for (double& v : g) v *= 1.0 + bump(rng);
    const auto e = nonempty_subset(rng, n), f = nonempty_subset(rng, n);
    const std::string tag = "instance " + std::to_string(it);
    t.expect(max_violation(s, u, g, sexp) <= 1e-12, tag + " g not an s-gradient");

    // Both sides recomputed from the definitions.
    const double lhs = std::pow(std::abs(oracle::median(s, u, e) - oracle::median(s, u, f)), p);
    double dsup = 0.0, ge = 0.0, gf = 0.0;
    for (Index x : e)
      for (Index y : f) dsup = std::max(dsup, s.distance(x, y));
    for (Index x : e) ge += s.weight(x) * std::pow(g[x], p);
    for (Index y : f) gf += s.weight(y) * std::pow(g[y], p);
    const double cp = 4.0 * std::pow(2.0, std::max(p - 1.0, 0.0));
    const double rhs = cp * std::pow(dsup, sexp * p) * (ge / mass(s, e) + gf / mass(s, f));
    log << it << ',' << p << ',' << sexp << ',' << num(lhs) << ',' << num(rhs) << '\n';
    t.expect(lhs <= rhs * (1.0 + 1e-12), tag + " lhs " + num(lhs) + " > rhs " + num(rhs));
    t.expect(oscillation_constant(p) == cp, tag + " C(p)");

    const auto rep = oscillation_bound_check(s, u, g, e, f, sexp, p);
    t.expect(std::abs(rep.lhs - lhs) <= 1e-12 * std::max(1.0, lhs) &&
                 std::abs(rep.rhs - rhs) <= 1e-12 * std::max(1.0, rhs) && rep.passed,
             tag + " library report disagrees");
    if (rhs > 0 && lhs / rhs > worst) {
      worst = lhs / rhs;
      wl = lhs;
      wr = rhs;
    }
  }
  return t.done("200 instances, worst lhs " + num(wl) + " vs rhs " + num(wr) + " (ratio " + num(worst) +
                "), all pairs in acceptance_oscillation.csv");
}

// ------------------------------------------------------------------ 5

Outcome c5() {
  Tally t;
  std::size_t compared = 0;
  std::mt19937_64 rng(501);
  for (const auto& entry : catalog()) {
    const auto& s = entry.space;
    const std::size_t n = s.size();
    if (n > 4) continue;
    const std::string tag = entry.name;
    for (int k = 0; k < 4; ++k) {
      const auto u = quarter_values(rng, n);
      for (double sexp : {0.5, 1.0}) {
        const double lib = minimal_gradient(s, u, sexp, 1.0).value;
        const double ref = oracle::minimal_gradient(s, u, sexp, 1.0);
        t.expect(std::abs(lib - ref) <= 1e-6, tag + " minimal_gradient " + num(lib) + " vs " + num(ref));
        ++compared;
      }
    }
    for (std::size_t em = 1; em < (std::size_t{1} << n); ++em) {
      std::vector<Index> ev;
      for (Index i = 0; i < n; ++i)
        if (em >> i & 1) ev.push_back(i);
      const PointSet e(ev);
      {
        const double lib = msp_capacity(s, e, 1.0, 1.0).value;
        const double ref = oracle::msp_capacity_p1(s, e, 1.0);
        t.expect(std::abs(lib - ref) <= 1e-6, tag + " msp_capacity " + num(lib) + " vs " + num(ref));
        ++compared;
      }
      // Every F containing E with positive diameter.
      for (std::size_t fm = em; fm < (std::size_t{1} << n); ++fm) {
        if ((fm & em) != em || std::popcount(fm) < 2) continue;
        std::vector<Index> fv;
        for (Index i = 0; i < n; ++i)
          if (fm >> i & 1) fv.push_back(i);
        const PointSet f(fv);
        const double lib = relative_capacity(s, e, f, 1.0, 1.0).value;
        const double ref = oracle::relative_capacity(s, e, f, 1.0, 1.0);
        t.expect(std::abs(lib - ref) <= 1e-6, tag + " relative_capacity " + num(lib) + " vs " + num(ref));
        ++compared;
      }
    }
  }
  const auto t3 = line_points({0.0, 1.0, 2.0});
  const double rc = relative_capacity(t3, PointSet{2}, t3.all(), 1.0, 1.0).value;
  t.expect(std::abs(rc - 1.375) <= 1e-9, "T3 relative capacity " + num(rc));
  return t.done(std::to_string(compared) + " comparisons within 1e-6 on catalog spaces n<=4; T3 relative " + num(rc));
}

// ------------------------------------------------------------------ 6

Outcome c6() {
  Tally t;
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int done = 0, nonempty = 0;
  while (done < 100) {
    const std::size_t n = 6 + done % 7;
    const auto s = dyadic_space(rng, n);
    const auto u = quarter_values(rng, n);
    const double sexp = done % 2 ? 1.0 : 0.5;
    const double p = done % 3 == 0 ? 2.0 : 1.0;
    // Pick a nonempty annulus around point 0.
    std::vector<int> js;
    for (int j = -1; j <= 2; ++j)
      if (!annulus(s, 0, 2.0, 1.0, j).empty() && diam(s, annulus(s, 0, 2.0, 2.0, j)) > 0) js.push_back(j);
    if (js.empty()) continue;
    const int j = js[rng() % js.size()];
    auto g = scaled_fractional_gradient(s, u, sexp);
    for (double& v : g) v *= 1.0 + unit(rng);
    const PointSet a = annulus(s, 0, 2.0, 1.0, j);
    const double m = oracle::median(s, u, a);
    double spread = 0.0;
    for (Index x : a) spread = std::max(spread, std::abs(u[x] - m));
    const double tt = spread > 0 ? spread * (0.2 + 0.7 * unit(rng)) : 0.5;
    const std::string tag = "instance " + std::to_string(done);

    const auto rep = weak_type_check(s, u, g, 0, 2.0, 2.0, j, tt, sexp, p);
    // v = |u - m| / t, checked here directly.
    std::vector<double> v(n), gt(n);
    for (Index i = 0; i < n; ++i) {
      v[i] = std::abs(u[i] - m) / tt;
      gt[i] = g[i] / tt;
    }
    std::vector<Index> et;
    for (Index x : a)
      if (std::abs(u[x] - m) > tt) et.push_back(x);
    t.expect(PointSet(et) == rep.e_t, tag + " E_t differs");
    for (Index x : et) t.expect(v[x] >= 1.0, tag + " v < 1 on E_t");
    t.expect(max_violation(s, v, gt, sexp) <= 1e-9 * (1.0 + spread / tt), tag + " g/t infeasible for v");
    t.expect(rep.v_admissible && rep.gradient_ok, tag + " library admissibility");
    t.expect(rep.capacity_certified <= rep.functional * (1.0 + 1e-9) + 1e-12, tag + " cap > functional");
    t.expect(rep.functional <= rep.rhs * (1.0 + 1e-9) + 1e-12,
             tag + " functional " + num(rep.functional) + " > rhs " + num(rep.rhs));
    t.expect(rep.passed, tag + " report failed");
    if (!et.empty()) ++nonempty;
    ++done;
  }
  return t.done("100 instances (" + std::to_string(nonempty) + " with nonempty E_t): v admissible, g/t feasible, cap <= functional <= C t^-p int g^p");
}

// ------------------------------------------------------------------ 7

Outcome c7() {
  Tally t;
  std::mt19937_64 rng(701);
  for (const auto& s : {line_points({0, 1, 2}), line_points({0, 1, 2, 3})}) {
    const double v2 = hausdorff_content(s, PointSet{0, 2}, 1.0, 2.0).value;
    const double v1 = hausdorff_content(s, PointSet{0, 2}, 1.0, 1.0).value;
    t.expect(v2 == 1.5 && v1 == 2.0, "catalog values " + num(v2) + ", " + num(v1));
  }
  int instances = 0;
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 2 + it % 7;
    const auto s = dyadic_space(rng, n);
    const auto e = nonempty_subset(rng, n), f = nonempty_subset(rng, n);
    const double d = std::array<double, 4>{0.0, 0.5, 1.0, 2.0}[it % 4];
    const double rho = s.diameter() * (0.1 + rng() % 10 / 9.0);
    const std::string tag = "instance " + std::to_string(it);
    const auto ex = hausdorff_content(s, e, d, rho);
    const double ref = oracle::hausdorff_content(s, e, d, rho);
    t.expect(ex.exact && std::abs(ex.value - ref) <= 1e-12 * std::max(1.0, ref),
             tag + " exact " + num(ex.value) + " vs " + num(ref));
    const auto gr = hausdorff_content(s, e, d, rho, ContentMode::kGreedy);
    const double factor = 1.0 + std::log(static_cast<double>(e.size()));
    t.expect(gr.value >= ex.value * (1.0 - 1e-12), tag + " greedy below exact");
    t.expect(gr.value <= factor * ex.value * (1.0 + 1e-12), tag + " greedy beyond ln|E| factor");
    const double hu = hausdorff_content(s, set_union(e, f), d, rho).value;
    const double hf = hausdorff_content(s, f, d, rho).value;
    t.expect(hu <= ex.value + hf + 1e-12 * (ex.value + hf), tag + " subadditivity");
    ++instances;
  }
  return t.done("T3/T4 give 1.5 and 2.0; " + std::to_string(instances) +
                " instances n<=8 match enumeration, greedy within 1+ln|E|, subadditive");
}

// ------------------------------------------------------------------ 8

struct FamilyRun {
  double constant = 0.0;
  double worst = 0.0;
  int exceed = 0;
  int tiny = 0;
};

// Self-similar family: cantor_like, ratio 1/3, kappa = 3. The constant is
// the max over tiny sets at every scale (all subsets of annuli with at most
// 8 points, all sets of one or two points otherwise).
FamilyRun family_run() {
  FamilySpec spec;
  spec.kind = FamilyKind::kCantorLike;
  spec.level = 7;
  const auto gs = generate(spec);
  const double kappa = 3.0, lambda = 2.0, s = 1.0, p = 1.0, alpha = 0.3;
  const int jmax = last_full_annulus(gs.space, gs.origin, kappa);
  auto ratio = [&](const std::vector<Index>& e, int j) {
    return capacity_content_comparison(gs.space, PointSet(e), gs.origin, kappa, lambda, j, s, p, alpha).ratio;
  };
  FamilyRun out;
  for (int j = 1; j <= jmax; ++j) {
    const auto a = annulus(gs.space, gs.origin, kappa, 1.0, j);
    const std::size_t n = a.size();
    if (n <= 8) {
      for (std::size_t m = 1; m < (std::size_t{1} << n); ++m) {
        std::vector<Index> e;
        for (std::size_t i = 0; i < n; ++i)
          if (m >> i & 1) e.push_back(a[i]);
        out.constant = std::max(out.constant, ratio(e, j));
        ++out.tiny;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) {
          out.constant = std::max(out.constant, ratio(k == i ? std::vector<Index>{a[i]} : std::vector<Index>{a[i], a[k]}, j));
          ++out.tiny;
        }
    }
  }
  std::mt19937_64 rng(801);
  std::uniform_real_distribution<double> dens(0.05, 1.0);
  for (int it = 0; it < 50; ++it) {
    const int j = std::uniform_int_distribution<int>(1, jmax)(rng);
    const auto a = annulus(gs.space, gs.origin, kappa, 1.0, j);
    const double pk = dens(rng);
    std::vector<Index> e;
    for (Index x : a)
      if (std::bernoulli_distribution(pk)(rng)) e.push_back(x);
    if (e.empty()) e.push_back(a[rng() % a.size()]);
    const double r = ratio(e, j);
    out.worst = std::max(out.worst, r);
    if (!(r <= out.constant)) ++out.exceed;
  }
  return out;
}

Outcome c8() {
  Tally t;
  const auto a = family_run();
  const auto b = family_run();
  t.expect(a.exceed == 0, std::to_string(a.exceed) + " instances above constant " + num(a.constant) +
                              " (worst " + num(a.worst) + ")");
  t.expect(a.constant == b.constant && a.worst == b.worst, "rerun differs");
  t.expect(a.constant > 0 && std::isfinite(a.constant), "constant not finite");
  return t.done("cantor family constant " + num(a.constant) + " from " + std::to_string(a.tiny) +
                " tiny sets; 50 annulus instances max " + num(a.worst) + "; rerun identical");
}

// ------------------------------------------------------------------ 9

Outcome c9() {
  Tally t;
  std::string summary;
  for (double alpha : {0.0, 1.0}) {
    FamilySpec spec;
    spec.kind = FamilyKind::kRadialWeight;
    spec.extent = 256;
    spec.alpha = alpha;
    const auto gs = generate(spec);
    const double sigma = *gs.sigma_model, s = 1.0, p = 2.0;
    const double rate = s - sigma / p;
    // Power profile at the model rate; log for the rate-0 case.
    std::vector<double> u(gs.space.size());
    for (Index i = 0; i < gs.space.size(); ++i) {
      const double r = gs.space.distance(gs.origin, i);
      u[i] = rate == 0.0 ? std::log1p(r) : std::pow(r, rate);
    }
    const auto g = scaled_fractional_gradient(gs.space, u, s);
    const auto rep = median_decay_check(gs.space, u, g, gs.origin, 2.0, s, p, sigma);
    const std::string tag = "alpha=" + num(alpha);
    t.expect(max_violation(gs.space, u, g, s) <= 1e-9, tag + " gradient infeasible");
    for (const auto& st : rep.steps) {
      t.expect(st.diff <= st.bound, tag + " k=" + std::to_string(st.k) + " diff " + num(st.diff) + " > " + num(st.bound));
      const double mk = oracle::median(gs.space, u, annulus(gs.space, gs.origin, 2.0, 1.0, st.k));
      const double mk1 = oracle::median(gs.space, u, annulus(gs.space, gs.origin, 2.0, 1.0, st.k + 1));
      t.expect(std::abs(std::abs(mk1 - mk) - st.diff) <= 1e-12, tag + " step diff mismatch");
    }
    const double tol = 0.15 * std::max(std::abs(rate), 1.0);
    t.expect(std::abs(rep.fitted_rate - rate) <= tol,
             tag + " fitted " + num(rep.fitted_rate) + " vs " + num(rate));
    summary += tag + ": fitted " + num(rep.fitted_rate) + " vs " + num(rate) + "; ";
  }
  return t.done(summary + "every step within its bound");
}

// ------------------------------------------------------------------ 10

Outcome c10() {
  Tally t;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ps[] = {0.5, 1.0, 2.0, 3.0};
  for (int it = 0; it < 100; ++it) {
    const std::size_t len = 1 + it % 40;
    const double decay = 0.2 + 0.75 * unit(rng);
    std::vector<double> a(len);
    for (std::size_t j = 0; j < len; ++j) a[j] = unit(rng) < 0.2 ? 0.0 : unit(rng) * std::pow(decay, j);
    const std::size_t support = std::uniform_int_distribution<std::size_t>(0, len)(rng);
    for (std::size_t j = support; j < len; ++j) a[j] = 0.0;
    const double p = ps[it % 4];
    const double floor = std::pow(10.0, -2.0 - 8.0 * unit(rng));
    const auto bs = build_b_sequence(a, p, floor);
    const std::string tag = "instance " + std::to_string(it);

    double r = 0.0, total = 0.0, sum = 0.0, floor_term = 0.0;
    for (double v : a) total += v;
    std::vector<double> tail(len);
    for (std::size_t k = len; k-- > 0;) tail[k] = (r += a[k]);
    const double fl = std::pow(floor, 1.0 / (2.0 * p));
    for (std::size_t j = 0; j < len; ++j) {
      const double b = std::pow(std::max(tail[j], floor), 1.0 / (2.0 * p));
      t.expect(std::abs(bs.b[j] - b) <= 1e-14 * b, tag + " b differs");
      t.expect(bs.b[j] > 0.0, tag + " b not positive");
      t.expect(j == 0 || bs.b[j] <= bs.b[j - 1], tag + " b increases");
      if (j >= support) t.expect(bs.b[j] == fl, tag + " floor not attained past support");
      const double term = a[j] / std::pow(b, p);
      sum += term;
      if (tail[j] < floor) floor_term += term;
    }
    const double rhs = 2.0 * std::sqrt(total) + floor_term;
    t.expect(sum <= rhs * (1.0 + 1e-12), tag + " sum " + num(sum) + " > " + num(rhs));
    t.expect(bs.bound_holds, tag + " library bound flag");
  }
  return t.done("100 sequences: positive, nonincreasing, floor past support, sum a/b^p <= 2 sqrt(sum a) + floor term");
}

// ------------------------------------------------------------------ 11

Outcome c11() {
  Tally t;
  FamilySpec spec;
  spec.kind = FamilyKind::kRadialWeight;
  spec.extent = 256;
  spec.alpha = 1.0;
  const auto gs = generate(spec);
  const auto& s = gs.space;
  std::vector<double> u(s.size());
  Index second = gs.origin;
  for (Index i = 0; i < s.size(); ++i) {
    const double r = s.distance(gs.origin, i);
    u[i] = std::min(1.0, r / 16.0) + 0.3 * std::cos(r) * std::exp(-r / 8.0);
    if (r == 3.0 && second == gs.origin) second = i;
  }
  const double wn = w_norm(s, u, 1.0, 1.0, 1.0).norm;
  t.expect(std::isfinite(wn), "W norm not finite");
  const double eps = 0.05;
  std::vector<double> limits;
  std::string detail;
  for (Index o : {gs.origin, second}) {
    LimitsConfig cfg;
    cfg.basepoint = o;
    cfg.lambdas = {1.5, 2.0};
    const auto run = run_limits(s, u, cfg);
    const std::string tag = "basepoint " + std::to_string(o);
    t.expect(run.thinness.consistent, tag + " verdict inconsistent");
    t.expect(run.limit.has_value(), tag + " complement bounded");
    if (!run.limit) continue;
    const double mlim = run.trace.medians.back();
    t.expect(std::abs(run.limit->c - mlim) <= eps, tag + " limit " + num(run.limit->c) + " vs median " + num(mlim));
    limits.push_back(run.limit->c);
    detail += tag + " |E|=" + std::to_string(run.exceptional.set_union.size()) + " limit " + num(run.limit->c) +
              " median " + num(mlim) + "; ";
  }
  if (limits.size() == 2) t.expect(std::abs(limits[0] - limits[1]) <= 2 * eps, "limits differ across basepoints");
  return t.done(detail + "W norm " + num(wn));
}

// ------------------------------------------------------------------ 12

Outcome c12() {
  Tally t;
  FamilySpec spec;
  spec.extent = 256;
  const auto gs = generate(spec);
  const auto& s = gs.space;
  const Index o = gs.origin;
  const double kappa = 2.0, lambda = 2.0;
  const auto rep = geometry_report(s, kappa, o);
  const int jmax = last_full_annulus(s, o, kappa);
  const double ball1 = oracle::ball_mass(s, o, 1.0);

  // Negative regime, sp = 2 > Q.
  const double sp_neg = 2.0;
  t.expect(rep.Q < sp_neg, "Q " + num(rep.Q) + " not below sp");
  t.expect(std::pow(kappa, rep.Q - sp_neg) < 1.0, "chain ratio not below 1");
  std::vector<double> terms;
  for (int j = 0; j <= jmax; ++j) {
    const auto f = annulus(s, o, kappa, lambda, j);
    const double term = mass(s, f) / std::pow(diam(s, f), sp_neg);
    const double big = lambda * std::pow(kappa, j + 1);
    const double chain = rep.c_mu * std::pow(big, rep.Q) * ball1 / std::pow(diam(s, f), sp_neg);
    t.expect(term <= chain * (1.0 + 1e-12), "sp>Q chain j=" + std::to_string(j));
    if (j <= 2) {
      // The constant test function bounds the actual capacity of E = X.
      const double cap = relative_capacity(s, f, f, 1.0, 2.0).value;
      t.expect(cap <= term * (1.0 + 1e-6), "sp>Q capacity above term j=" + std::to_string(j));
    }
    terms.push_back(term);
  }
  double tail = 0.0;
  for (std::size_t k = terms.size(); k-- > 0;) tail += terms[k];
  t.expect(terms.back() <= 0.05, "sp>Q last term " + num(terms.back()));
  for (std::size_t k = 1; k < terms.size(); ++k) t.expect(terms[k] < terms[k - 1], "sp>Q terms not decreasing");

  // Positive regime, sp <= sigma with E = X.
  const auto& bg = *rep.basepoint;
  const double sp_pos = std::min(0.9, bg.sigma);
  const double floor_const = (1.0 - bg.c_R) * ball1 / (bg.c_sigma * std::pow(2.0, sp_pos)) *
                             std::pow(lambda * kappa, bg.sigma - sp_pos);
  t.expect(bg.c_R < 1.0 && floor_const > 0.0, "sp<=sigma constant not positive");
  double partial = 0.0;
  int used = 0;
  for (int j = 0; j <= jmax; ++j) {
    const double big = lambda * std::pow(kappa, j + 1);
    if (big > bg.r_hi) break;
    const auto f = annulus(s, o, kappa, lambda, j);
    const double term = mass(s, f) / std::pow(diam(s, f), sp_pos);
    const double chain = (1.0 - bg.c_R) * oracle::ball_mass(s, o, big) / std::pow(2.0 * big, sp_pos);
    t.expect(chain <= term * (1.0 + 1e-12), "sp<=sigma chain j=" + std::to_string(j));
    t.expect(floor_const <= chain * (1.0 + 1e-12), "sp<=sigma floor j=" + std::to_string(j));
    if (j <= 2) {
      const double cap = relative_capacity(s, f, f, sp_pos, 1.0).value;
      t.expect(std::abs(cap - term) <= 1e-9 * term, "sp<=sigma capacity j=" + std::to_string(j) + " " + num(cap));
    }
    partial += term;
    ++used;
  }
  t.expect(used > 0 && used * floor_const <= partial, "sp<=sigma partial sum");
  return t.done("sp>Q: Q " + num(rep.Q) + " < sp 2, tail " + num(tail) + ", last term " + num(terms.back()) +
                "; sp<=sigma: sp " + num(sp_pos) + ", floor " + num(floor_const) + " over " + std::to_string(used) +
                " terms, partial sum " + num(partial));
}

// ------------------------------------------------------------------ 13

Outcome c13() {
  Tally t;
  const auto t3 = line_points({0, 1, 2});
  const std::vector<double> u3{0, 1, 2};
  const auto wn = w_norm(t3, u3, 1.0, 1.0, 1.0);
  t.expect(wn.norm == 5.0, "T3 w_norm " + num(wn.norm));
  t.expect(max_violation(t3, u3, wn.g_frac, 1.0) <= 0.0, "g_frac not feasible with C = 1");
  t.expect(minimal_gradient_scale(t3, u3, wn.g_frac, 1.0) <= 1.0, "library scale above 1");

  std::mt19937_64 rng(1301);
  double worst_emb = 0.0;
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + it % 6;
    const auto s = dyadic_space(rng, n);
    const auto u = quarter_values(rng, n);
    const double sexp = it % 2 ? 1.0 : 0.6;
    const double q = it % 3 == 0 ? 2.0 : 1.0;
    const auto rep = embedding_check(s, u, sexp, 1.0, q);
    const std::string tag = "instance " + std::to_string(it);
    const double m = minimal_gradient(s, u, sexp, 1.0).value;
    t.expect(m <= rep.c_bound * rep.w_norm * (1.0 + 1e-9) + 1e-12,
             tag + " minimal gradient " + num(m) + " > " + num(rep.c_bound * rep.w_norm));
    t.expect(rep.c_min <= rep.c_bound, tag + " scale above C_bound");
    if (rep.w_norm > 0) worst_emb = std::max(worst_emb, m / (rep.c_bound * rep.w_norm));
  }
  int cmp = 0;
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 3 + it % 3;
    const auto s = dyadic_space(rng, n);
    const auto e = nonempty_subset(rng, n);
    const double sexp = it % 2 ? 1.0 : 0.5;
    const double cmu = oracle::doubling_scan(s);
    const double ccmp = capacity_comparison_constant(sexp, 1.0, 1.0, cmu);
    const double cm = msp_capacity(s, e, sexp, 1.0).value;
    const double cw = wspq_capacity(s, e, sexp, 1.0, 1.0).value;
    t.expect(cm <= ccmp * cw * (1.0 + 1e-9), "cap comparison " + num(cm) + " > " + num(ccmp) + " * " + num(cw));
    ++cmp;
  }
  return t.done("T3 w_norm 5, C=1 feasible; 100 embedding instances (worst fraction of bound " + num(worst_emb) +
                "); " + std::to_string(cmp) + " capacity comparisons hold");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, 1, c1},    {2, 0, c2},   {3, 10, c3},  {4, 10, c4},  {5, 60, c5},  {6, 60, c6},  {7, 30, c7},
      {8, 120, c8}, {9, 60, c9},  {10, 5, c10}, {11, 300, c11}, {12, 30, c12}, {13, 60, c13},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      out.pass = false;
      out.detail += "; runtime over " + num(c.limit) + " s";
    }
    if (!out.pass) ++failed;
    std::ostringstream time;
    time << num(secs) << " s";
    if (c.limit > 0) time << ", limit " << num(c.limit) << " s";
    std::printf("[PRIMARY] criterion %d: %s  %s (%s)\n", c.id, out.pass ? "PASS" : "FAIL", out.detail.c_str(),
                time.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
