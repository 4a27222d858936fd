/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "core/content.hpp"
#include "core/error.hpp"
#include "core/fractional.hpp"
#include "core/hajlasz.hpp"
#include "core/limits.hpp"
#include "core/median.hpp"
#include "core/relcap.hpp"

namespace hajlab {

namespace {

using Rng = std::mt19937_64;

// Aggregates one property over many instances, keeping the worst one.
class Check {
 public:
  Check(std::string suite, std::string name) {
    res_.suite = std::move(suite);
    res_.name = std::move(name);
  }

  // lhs <= rhs + tol
  void leq(double lhs, double rhs, double tol, const std::string& detail = {}) {
    record(lhs <= rhs + tol, lhs - rhs, lhs, rhs, detail);
  }
  void eq(double lhs, double rhs, double tol, const std::string& detail = {}) {
    record(std::abs(lhs - rhs) <= tol, std::abs(lhs - rhs), lhs, rhs, detail);
  }
  void truth(bool ok, const std::string& detail = {}) {
    record(ok, ok ? 0.0 : 1.0, ok ? 0.0 : 1.0, 0.0, detail);
  }

  const CheckResult& result() const { return res_; }

 private:
  void record(bool ok, double margin, double lhs, double rhs, const std::string& detail) {
    ++res_.instances;
    if (std::isnan(margin)) ok = false;
    // A failing instance always beats a passing one as the reported witness.
    const bool take = res_.instances == 1 || (!ok && res_.passed) ||
                      (ok == res_.passed && margin > worst_);
    if (!ok) res_.passed = false;
    if (take) {
      worst_ = margin;
      res_.lhs = lhs;
      res_.rhs = rhs;
      res_.detail = detail;
    }
  }

  CheckResult res_;
  double worst_ = 0.0;
};

struct Ctx {
  std::uint64_t seed = 1;
  double scale = 1.0;
  MedianRule rule = MedianRule::kStrict;
  std::string filter;
  std::vector<CheckResult>* out = nullptr;

  std::size_t count(std::size_t base) const {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(base * scale)));
  }
  Rng rng(std::uint64_t salt) const { return Rng(seed * 0x9E3779B97F4A7C15ULL + salt); }
  void add(const Check& c) const {
    const auto& r = c.result();
    const std::string full = r.suite + "." + r.name;
    if (filter.find('.') == std::string::npos || full.rfind(filter, 0) == 0) out->push_back(r);
  }
};

std::string fmt(const char* key, double v) {
  std::ostringstream os;
  os << key << "=" << v;
  return os.str();
}

double rel_tol(double scale, double rel) { return rel * std::max(1.0, std::abs(scale)); }

// Planar points; dyadic weights keep median tie comparisons exact.
MetricMeasureSpace random_space(Rng& rng, std::size_t n, bool dyadic = false) {
  std::uniform_real_distribution<double> coord(0.0, 4.0), wt(0.5, 2.0);
  std::uniform_int_distribution<int> dw(1, 4);
  std::vector<double> x(n), y(n), w(n), d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = coord(rng);
    y[i] = coord(rng);
    w[i] = dyadic ? 0.5 * dw(rng) : wt(rng);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
  }
  return MetricMeasureSpace::build(std::move(d), std::move(w));
}

PointSet random_subset(Rng& rng, std::size_t n, bool nonempty = true) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Index> m;
  for (Index i = 0; i < n; ++i) {
    if (coin(rng)) m.push_back(i);
  }
  if (m.empty() && nonempty) m.push_back(std::uniform_int_distribution<Index>(0, n - 1)(rng));
  return PointSet(std::move(m));
}

// Small integers give ties; uniform values do not.
std::vector<double> random_values(Rng& rng, std::size_t n) {
  std::vector<double> u(n);
  if (std::bernoulli_distribution(0.5)(rng)) {
    std::uniform_int_distribution<int> d(-3, 3);
    for (double& v : u) v = d(rng);
  } else {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (double& v : u) v = d(rng);
  }
  return u;
}

double median_by_definition(const MetricMeasureSpace& s, std::span<const double> u,
                            const PointSet& e) {
  std::vector<double> vals;
  for (Index i : e) vals.push_back(u[i]);
  std::sort(vals.begin(), vals.end());
  const double half = measure(s, e) / 2.0;
  for (double a : vals) {
    double above = 0.0;
    for (Index i : e) {
      if (u[i] > a) above += s.weight(i);
    }
    if (above < half) return a;
  }
  return vals.back();
}

MetricMeasureSpace line_points(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(xs[i] - xs[j]);
  }
  return MetricMeasureSpace::build(std::move(d), std::vector<double>(n, 1.0));
}

// ---------------------------------------------------------------- space

void suite_space(const Ctx& c) {
  Check nested("space", "ball_nested"), additive("space", "measure_additive");
  auto rng = c.rng(1);
  for (std::size_t it = 0; it < c.count(20); ++it) {
    const std::size_t n = 3 + it % 8;
    const auto s = random_space(rng, n);
    for (Index x = 0; x < n; ++x) {
      const auto radii = s.sorted_distances(x);
      for (std::size_t k = 1; k < n; ++k) {
        const auto small = ball(s, x, radii[k - 1] + 1e-3), big = ball(s, x, radii[k] + 1e-3);
        nested.truth(small.contains(x) && is_subset(small, big));
      }
    }
    const auto a = random_subset(rng, n, false), b = set_difference(s.all(), a);
    const double whole = measure(s, s.all());
    additive.eq(measure(s, a) + measure(s, b), whole, 1e-12 * whole);
  }
  c.add(nested);
  c.add(additive);

  Check upper("space", "annulus_upper"), lower("space", "annulus_lower");
  Check qf("space", "q_formula"), inv("space", "geometry_invariance");
  for (const auto& entry : catalog()) {
    const auto& s = entry.space;
    const auto rep = geometry_report(s, 2.0, entry.origin);
    qf.eq(rep.Q, std::log2(rep.c_mu), 0.0, entry.name);
    for (int j = 0; j <= std::max(0, last_full_annulus(s, entry.origin, 2.0)); ++j) {
      for (double lambda : {1.0, 1.5, 2.0}) {
        const double r = std::pow(2.0, j);
        const double inflated = measure(s, annulus(s, entry.origin, 2.0, lambda, j));
        const double big = s.ball_measure(entry.origin, lambda * 2.0 * r);
        upper.leq(inflated, big, 0.0, entry.name + " " + fmt("j", j));
        if (lambda * 2.0 * r <= rep.basepoint->r_hi && r / lambda >= rep.basepoint->r_lo) {
          lower.leq((1.0 - rep.basepoint->c_R) * big, inflated, 1e-12 * big,
                    entry.name + " " + fmt("j", j));
        }
      }
    }
    // Reverse the labels and double the weights.
    std::vector<Index> perm(s.size());
    for (Index i = 0; i < s.size(); ++i) perm[i] = s.size() - 1 - i;
    const auto moved = geometry_report(s.permuted(perm).with_scaled_weights(2.0), 2.0);
    const auto base = geometry_report(s, 2.0);
    double diff = 0.0;
    for (auto [a, b] : {std::pair{base.c_mu, moved.c_mu}, {base.c_R, moved.c_R},
                        {base.Q, moved.Q}, {base.sigma, moved.sigma}}) {
      diff = std::max(diff, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    inv.leq(diff, 0.0, 1e-9, entry.name);
  }
  c.add(upper);
  c.add(lower);
  c.add(qf);
  c.add(inv);
}

// ---------------------------------------------------------------- median

void suite_median(const Ctx& c) {
  Check def("median", "definition"), absb("median", "abs_bound"), shift("median", "shift");
  Check lp("median", "lp_bound"), wscale("median", "weight_scale_invariant");
  Check relabel("median", "relabel_invariant"), levels("median", "level_sets");
  Check sw("median", "shift_witness"), pw("median", "pair_witness");

  // The two-point tie separates the strict rule from the non-strict one.
  {
    const auto s = line_points({0.0, 1.0});
    const std::vector<double> u{0.0, 1.0};
    def.eq(median(s, u, s.all(), c.rule), median_by_definition(s, u, s.all()), 0.0, "tie");
  }
  auto rng = c.rng(2);
  std::uniform_int_distribution<int> cq(-12, 12);
  for (std::size_t it = 0; it < c.count(200); ++it) {
    const std::size_t n = 1 + it % 16;
    const auto s = random_space(rng, n, true);
    const auto u = random_values(rng, n);
    const auto e = random_subset(rng, n), f = random_subset(rng, n);
    const std::string tag = fmt("instance", static_cast<double>(it));
    const double m = median(s, u, e, c.rule);
    def.eq(m, median_by_definition(s, u, e), 0.0, tag);

    std::vector<double> au(n), sh(n);
    const double cst = cq(rng) / 4.0;
    for (Index i = 0; i < n; ++i) {
      au[i] = std::abs(u[i]);
      sh[i] = u[i] + cst;
    }
    const double mabs = median(s, au, e, c.rule);
    absb.leq(std::abs(m), mabs, 0.0, tag);
    shift.eq(median(s, sh, e, c.rule), m + cst, 0.0, tag);
    for (double p : {0.5, 1.0, 2.0}) {
      const double rhs = 2.0 * power_integral(s, au, p, e) / measure(s, e);
      lp.leq(std::pow(mabs, p), rhs, 1e-12 * rhs, tag + " " + fmt("p", p));
    }
    wscale.eq(median(s.with_scaled_weights(0.25), u, e, c.rule), m, 0.0, tag);

    std::vector<Index> perm(n);
    for (Index i = 0; i < n; ++i) perm[i] = std::gcd(n, std::size_t{5}) == 1 ? (i * 5 + 3) % n : n - 1 - i;
    // Point i of the permuted space is point perm[i] of s.
    std::vector<Index> inv(n);
    for (Index i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<double> pu(n);
    std::vector<Index> pe;
    for (Index i = 0; i < n; ++i) pu[i] = u[perm[i]];
    for (Index i : e) pe.push_back(inv[i]);
    relabel.eq(median(s.permuted(perm), pu, PointSet(pe), c.rule), m, 0.0, tag);

    const double half_e = measure(s, e) / 2.0, half_f = measure(s, f) / 2.0;
    const auto lv = level_sets(s, u, e);
    levels.leq(half_e, std::min(measure(s, lv.sub), measure(s, lv.sup)), 0.0, tag);

    const double target = cq(rng) / 4.0;
    const auto w = shift_witness(s, u, e, target);
    double worst = -std::numeric_limits<double>::infinity();
    for (Index i : w) worst = std::max(worst, std::abs(m - target) - std::abs(u[i] - target));
    sw.leq(half_e, measure(s, w), 0.0, tag);
    sw.leq(worst, 0.0, 0.0, tag + " pointwise");

    const auto [ew, fw] = pair_witness(s, u, e, f);
    const double mf = median(s, u, f, c.rule);
    worst = -std::numeric_limits<double>::infinity();
    for (Index i : ew) {
      for (Index j : fw) worst = std::max(worst, std::abs(m - mf) - std::abs(u[i] - u[j]));
    }
    pw.leq(half_e, measure(s, ew), 0.0, tag + " E side");
    pw.leq(half_f, measure(s, fw), 0.0, tag + " F side");
    pw.leq(worst, 0.0, 0.0, tag + " pointwise");
  }
  for (const Check* k : {&def, &absb, &shift, &lp, &wscale, &relabel, &levels, &sw, &pw}) c.add(*k);

  Check osc("median", "oscillation");
  auto rng2 = c.rng(3);
  std::uniform_real_distribution<double> bump(0.0, 1.0);
  for (std::size_t it = 0; it < c.count(100); ++it) {
    const std::size_t n = 2 + it % 11;
    const auto s = random_space(rng2, n);
    const auto u = random_values(rng2, n);
    const double sexp = it % 2 ? 1.0 : 0.5;
    auto g = scaled_fractional_gradient(s, u, sexp);
    for (double& v : g) v *= 1.0 + bump(rng2);
    const auto e = random_subset(rng2, n), f = random_subset(rng2, n);
    for (double p : {0.5, 1.0, 2.0}) {
      const auto rep = oscillation_bound_check(s, u, g, e, f, sexp, p);
      osc.leq(rep.lhs, rep.rhs, 0.0, fmt("instance", static_cast<double>(it)) + " " + fmt("p", p));
    }
  }
  c.add(osc);
}

// ---------------------------------------------------------------- hajlasz

void suite_hajlasz(const Ctx& c) {
  Check inv("hajlasz", "shift_negate_invariant"), hom("hajlasz", "homogeneity");
  Check mono("hajlasz", "capacity_monotone"), sub("hajlasz", "subadditivity");
  Check gap("hajlasz", "dual_gap");
  auto rng = c.rng(4);
  for (std::size_t it = 0; it < c.count(8); ++it) {
    const std::size_t n = 4 + it % 3;
    const auto s = random_space(rng, n);
    const auto u = random_values(rng, n);
    const std::string tag = fmt("instance", static_cast<double>(it));
    for (double p : {1.0, 2.0}) {
      const double tol = p == 1.0 ? 1e-9 : 1e-6;
      const auto base = minimal_gradient(s, u, 0.7, p);
      std::vector<double> sh(u), neg(u), scaled(u);
      for (Index i = 0; i < n; ++i) {
        sh[i] += 1.5;
        neg[i] = -u[i];
        scaled[i] = -2.0 * u[i];
      }
      inv.eq(minimal_gradient(s, sh, 0.7, p).value, base.value, rel_tol(base.value, tol), tag);
      inv.eq(minimal_gradient(s, neg, 0.7, p).value, base.value, rel_tol(base.value, tol), tag);
      const double expect = std::pow(2.0, p) * base.value;
      hom.eq(minimal_gradient(s, scaled, 0.7, p).value, expect, rel_tol(expect, tol), tag);
      if (p == 1.0) gap.leq(base.value - *base.lower_bound, 0.0, rel_tol(base.value, 1e-9), tag);

      const auto e = random_subset(rng, n), f = set_union(e, random_subset(rng, n));
      const auto ce = msp_capacity(s, e, 0.7, p), cf = msp_capacity(s, f, 0.7, p);
      mono.leq(ce.value, cf.value, rel_tol(cf.value, tol), tag + " " + fmt("p", p));
      if (p == 1.0) gap.leq(ce.value - *ce.lower_bound, 0.0, rel_tol(ce.value, 1e-9), tag);
      const auto a = random_subset(rng, n), b = random_subset(rng, n);
      const double ca = msp_capacity(s, a, 0.7, p).value, cb = msp_capacity(s, b, 0.7, p).value;
      const double cab = msp_capacity(s, set_union(a, b), 0.7, p).value;
      const double rhs = msp_subadditivity_constant(p) * (ca + cb);
      sub.leq(cab, rhs, rel_tol(rhs, tol), tag + " " + fmt("p", p));
    }
  }
  for (const Check* k : {&inv, &hom, &mono, &sub, &gap}) c.add(*k);
}

// ---------------------------------------------------------------- relcap

void suite_relcap(const Ctx& c) {
  Check t3("relcap", "t3_value"), mono("relcap", "monotone"), br("relcap", "bracket");
  Check sc("relcap", "scaling"), gap("relcap", "dual_gap");
  {
    const auto s = line_points({0.0, 1.0, 2.0});
    t3.eq(relative_capacity(s, PointSet{2}, s.all(), 1.0, 1.0).value, 1.375, 1e-9);
  }
  auto rng = c.rng(5);
  for (std::size_t it = 0; it < c.count(8); ++it) {
    const std::size_t n = 4 + it % 4;
    const auto s = random_space(rng, n);
    const std::string tag = fmt("instance", static_cast<double>(it));
    auto f = random_subset(rng, n);
    if (f.size() < 2) f = s.all();
    std::vector<Index> e2m, e1m;
    for (Index i : f) {
      if (std::bernoulli_distribution(0.6)(rng)) e2m.push_back(i);
    }
    if (e2m.empty()) e2m.push_back(f[0]);
    for (Index i : e2m) {
      if (e1m.empty() || std::bernoulli_distribution(0.5)(rng)) e1m.push_back(i);
    }
    const PointSet e1(e1m), e2(e2m);
    const double df = diam(s, f);
    for (double p : {0.5, 1.0, 2.0}) {
      const double sexp = 0.8, tol = p == 1.0 ? 1e-9 : 1e-6;
      const auto r2 = relative_capacity(s, e2, f, sexp, p);
      const double lo = measure(s, e2) / std::pow(df, sexp * p);
      const double hi = measure(s, f) / std::pow(df, sexp * p);
      br.leq(lo, r2.value, rel_tol(lo, tol), tag + " lower " + fmt("p", p));
      br.leq(r2.value, hi, rel_tol(hi, tol), tag + " upper " + fmt("p", p));
      if (p == 0.5) continue;  // the remaining checks need certified optima
      const auto r1 = relative_capacity(s, e1, f, sexp, p);
      mono.leq(r1.value, r2.value, rel_tol(r2.value, tol), tag + " " + fmt("p", p));
      const double lam = 2.0;
      const auto rs = relative_capacity(s.with_scaled_distances(lam), e2, f, sexp, p);
      const double expect = r2.value * std::pow(lam, -sexp * p);
      sc.eq(rs.value, expect, rel_tol(expect, tol), tag + " " + fmt("p", p));
      if (p == 1.0) {
        gap.leq(r1.value - *r1.lower_bound, 0.0, rel_tol(r1.value, 1e-9), tag);
        gap.leq(r2.value - *r2.lower_bound, 0.0, rel_tol(r2.value, 1e-9), tag);
      }
    }
  }
  for (const Check* k : {&t3, &mono, &br, &sc, &gap}) c.add(*k);
}

// ---------------------------------------------------------------- content

void suite_content(const Ctx& c) {
  Check t3("content", "t3_values"), mono("content", "monotone"), rho("content", "rho_monotone");
  Check greedy("content", "greedy_bounds"), d0("content", "d0_upper");
  Check sub("content", "subadditivity");
  {
    const auto s = line_points({0.0, 1.0, 2.0});
    t3.eq(hausdorff_content(s, PointSet{0, 2}, 1.0, 2.0).value, 1.5, 0.0, "rho=2");
    t3.eq(hausdorff_content(s, PointSet{0, 2}, 1.0, 1.0).value, 2.0, 0.0, "rho=1");
    const auto t4 = line_points({0.0, 1.0, 2.0, 3.0});
    for (auto [e, f] : {std::pair{PointSet{0}, PointSet{3}}, {PointSet{0, 1}, PointSet{2, 3}},
                        {PointSet{0, 2}, PointSet{1, 3}}}) {
      const auto rep = content_subadditivity_check(t4, e, f, 1.0, 2.0);
      sub.leq(rep.lhs, rep.rhs, 0.0, "T4");
    }
  }
  auto rng = c.rng(6);
  std::uniform_real_distribution<double> dd(0.0, 2.0), rr(0.5, 5.0);
  for (std::size_t it = 0; it < c.count(12); ++it) {
    const std::size_t n = 4 + it % 5;
    const auto s = random_space(rng, n);
    const std::string tag = fmt("instance", static_cast<double>(it));
    const double d = dd(rng), r1 = rr(rng), r2 = r1 + rr(rng);
    const auto e = random_subset(rng, n), f = set_union(e, random_subset(rng, n));
    const auto he = hausdorff_content(s, e, d, r1), hf = hausdorff_content(s, f, d, r1);
    mono.leq(he.value, hf.value, 1e-12 * hf.value, tag);
    rho.leq(hausdorff_content(s, f, d, r2).value, hf.value, 1e-12 * hf.value, tag);
    const auto gr = hausdorff_content(s, f, d, r1, ContentMode::kGreedy);
    greedy.leq(hf.value, gr.value, 1e-12 * hf.value, tag + " lower");
    const double cap = hf.value * (1.0 + std::log(static_cast<double>(f.size())));
    greedy.leq(gr.value, cap, 1e-12 * cap, tag + " upper");

    double singles = 0.0;
    for (Index x : e) {
      double rx = r1;
      for (double v : s.sorted_distances(x)) {
        if (v > 0.0) {
          rx = std::min(rx, v);
          break;
        }
      }
      singles += s.ball_measure(x, rx);
    }
    d0.leq(hausdorff_content(s, e, 0.0, r1).value, singles, 1e-12 * singles, tag);
    const auto rep = content_subadditivity_check(s, e, random_subset(rng, n), d, r1);
    sub.leq(rep.lhs, rep.rhs, 1e-12 * rep.rhs, tag);
  }
  for (const Check* k : {&t3, &mono, &rho, &greedy, &d0, &sub}) c.add(*k);
}

// ---------------------------------------------------------------- limits

void suite_limits(const Ctx& c) {
  Check exe("limits", "example_exe_medians");
  {
    const auto ex = example_exe(32);
    const auto tr = median_trace(ex.space, ex.u, ex.origin, 2.0, 0, 4);
    for (std::size_t k = 0; k < tr.medians.size(); ++k) {
      exe.eq(tr.medians[k], 1.0, 0.0, fmt("j", static_cast<double>(k)));
    }
  }
  c.add(exe);

  Check bpos("limits", "b_sequence_shape"), bsum("limits", "b_sequence_bound");
  auto rng = c.rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t it = 0; it < c.count(100); ++it) {
    const std::size_t len = 1 + it % 24;
    const double decay = 0.2 + 0.7 * unit(rng);
    std::vector<double> a(len);
    for (std::size_t j = 0; j < len; ++j) a[j] = unit(rng) * std::pow(decay, j);
    const std::size_t support = std::uniform_int_distribution<std::size_t>(0, len)(rng);
    for (std::size_t j = support; j < len; ++j) a[j] = 0.0;
    const double p = it % 3 == 0 ? 0.5 : (it % 3 == 1 ? 1.0 : 2.0);
    const double floor = std::pow(10.0, -2.0 - 6.0 * unit(rng));
    const auto bs = build_b_sequence(a, p, floor);
    const double fl = std::pow(floor, 1.0 / (2.0 * p));
    bool ok = true;
    for (std::size_t j = 0; j < len; ++j) {
      ok = ok && bs.b[j] > 0.0 && (j == 0 || bs.b[j] <= bs.b[j - 1]);
      if (j >= support) ok = ok && bs.b[j] == fl;
    }
    bpos.truth(ok, fmt("instance", static_cast<double>(it)));
    const double rhs = bs.main_bound + bs.floor_term;
    bsum.leq(bs.sum_ratio, rhs, 1e-12 * rhs, fmt("instance", static_cast<double>(it)));
  }
  c.add(bpos);
  c.add(bsum);

  Check exc("limits", "exceptional_set_property"), tails("limits", "tail_sums");
  {
    FamilySpec spec;
    spec.extent = 64;
    const auto gs = generate(spec);
    auto rng2 = c.rng(8);
    for (Profile prof : {Profile::kRamp, Profile::kNoise, Profile::kBump}) {
      const auto u = random_function(gs.space, prof, rng2());
      const auto g = scaled_fractional_gradient(gs.space, u, 1.0);
      const int jmax = last_full_annulus(gs.space, gs.origin, 2.0);
      const auto ex = exceptional_set(gs.space, u, g, gs.origin, 2.0, 2.0, 1.0, 1.0, 1e-6, 0, jmax);
      double worst = -1.0;
      for (int j = 0; j <= jmax; ++j) {
        const auto k = static_cast<std::size_t>(j - ex.j_min);
        for (Index x : annulus(gs.space, gs.origin, 2.0, 1.0, j)) {
          if (ex.e_j[k].contains(x)) continue;
          worst = std::max(worst, std::abs(u[x] - ex.medians[k]) - ex.b_seq[k]);
        }
      }
      exc.leq(worst, 0.0, 0.0, std::string(profile_name(prof)));
    }
    spec.extent = 16;
    const auto small = generate(spec);
    const std::vector<double> lambdas{1.5, 2.0};
    for (std::size_t it = 0; it < c.count(3); ++it) {
      const auto e = random_subset(rng2, small.space.size());
      const auto rep = thinness_tail(small.space, e, small.origin, 2.0, lambdas, 1.0, 1.0, 0, 2);
      for (const auto& t : rep.per_lambda) {
        double acc = 0.0, worst = 0.0;
        for (std::size_t k = t.per_j_cap.size(); k-- > 0;) {
          acc += t.per_j_cap[k];
          worst = std::max(worst, std::abs(t.tail_sums[k] - acc));
        }
        tails.eq(worst, 0.0, 0.0, fmt("lambda", t.lambda));
      }
    }
  }
  c.add(exc);
  c.add(tails);

  // The two regimes, through the constant-function bound on
  // relative capacity: cap(E n LA_j, LA_j) <= mu(LA_j) / diam(LA_j)^{sp},
  // and the bracket lower bound mu(LA_j) / diam(LA_j)^{sp} when E = X.
  Check neg("limits", "sp_above_q"), pos("limits", "sp_below_sigma");
  {
    FamilySpec spec;
    spec.extent = 256;
    const auto gs = generate(spec);
    const auto& s = gs.space;
    const double kappa = 2.0, lambda = 2.0;
    const auto rep = geometry_report(s, kappa, gs.origin);
    const int jmax = last_full_annulus(s, gs.origin, kappa);
    const double ball1 = s.ball_measure(gs.origin, 1.0);

    // sp > Q: terms obey a geometric chain with ratio kappa^{Q - sp} < 1.
    const double sp_neg = 2.0;
    neg.leq(std::pow(kappa, rep.Q - sp_neg), 1.0, -1e-12, "chain ratio");
    std::vector<double> terms;
    for (int j = 0; j <= jmax; ++j) {
      const auto a = annulus(s, gs.origin, kappa, lambda, j);
      const double t = measure(s, a) / std::pow(diam(s, a), sp_neg);
      const double big = lambda * std::pow(kappa, j + 1);
      const double chain = rep.c_mu * std::pow(big, rep.Q) * ball1 / std::pow(diam(s, a), sp_neg);
      neg.leq(t, chain, 1e-12 * chain, fmt("j", j));
      terms.push_back(t);
    }
    // Tail sum from the truncation index onward.
    neg.leq(terms.back(), 0.05, 0.0, "tail at truncation");

    // sp <= sigma: every term stays above a j-independent positive constant.
    const auto& bg = *rep.basepoint;
    const double sp_pos = std::min(0.9, bg.sigma);
    const double floor_const = (1.0 - bg.c_R) * ball1 / (bg.c_sigma * std::pow(2.0, sp_pos)) *
                               std::pow(lambda * kappa, bg.sigma - sp_pos);
    pos.truth(floor_const > 0.0 && bg.c_R < 1.0, "positive constant");
    double partial = 0.0;
    int used = 0;
    for (int j = 0; j <= jmax; ++j) {
      const double big = lambda * std::pow(kappa, j + 1);
      if (big > bg.r_hi) break;
      const auto a = annulus(s, gs.origin, kappa, lambda, j);
      const double t = measure(s, a) / std::pow(diam(s, a), sp_pos);
      const double chain = (1.0 - bg.c_R) * s.ball_measure(gs.origin, big) /
                           std::pow(2.0 * big, sp_pos);
      pos.leq(chain, t, 1e-12 * t, fmt("j", j));
      pos.leq(floor_const, chain, 1e-12 * chain, fmt("j", j));
      partial += t;
      ++used;
    }
    pos.leq(used * floor_const, partial, 1e-12 * partial, "partial sum");
  }
  c.add(neg);
  c.add(pos);
}

// ---------------------------------------------------------------- fractional

void suite_fractional(const Ctx& c) {
  Check t3("fractional", "t3_w_norm"), emb("fractional", "embedding");
  Check cmp("fractional", "cap_comparison"), dil("fractional", "w_norm_dilation");
  Check far("fractional", "far_points_scale");
  {
    const auto s = line_points({0.0, 1.0, 2.0});
    const std::vector<double> u{0.0, 1.0, 2.0};
    const auto wn = w_norm(s, u, 1.0, 1.0, 1.0);
    t3.eq(wn.norm, 5.0, 0.0, "norm");
    t3.leq(minimal_gradient_scale(s, u, wn.g_frac, 1.0), 1.0, 0.0, "scale");
  }
  auto rng = c.rng(9);
  for (std::size_t it = 0; it < c.count(20); ++it) {
    const std::size_t n = 4 + it % 5;
    const auto s = random_space(rng, n);
    const auto u = random_values(rng, n);
    const std::string tag = fmt("instance", static_cast<double>(it));
    const double sexp = it % 2 ? 1.0 : 0.6;
    for (double q : {1.0, 2.0}) {
      const auto rep = embedding_check(s, u, sexp, 1.0, q);
      emb.leq(rep.c_min, rep.c_bound, 0.0, tag + " scale");
      emb.leq(rep.m_norm, rep.rhs, 1e-9 * rep.rhs, tag + " norm");
    }
    for (double lam : {2.0, 0.5}) {
      const double base = w_norm(s, u, sexp, 2.0, 1.0).norm;
      const double expect = base * std::pow(lam, -sexp);
      dil.eq(w_norm(s.with_scaled_distances(lam), u, sexp, 2.0, 1.0).norm, expect,
             1e-12 * expect, tag);
    }
  }
  for (std::size_t it = 0; it < c.count(6); ++it) {
    const std::size_t n = 4 + it % 2;
    const auto s = random_space(rng, n);
    const auto e = random_subset(rng, n);
    const double c_mu = doubling_constant(s).first;
    const std::string tag = fmt("instance", static_cast<double>(it));
    for (auto [p, q] : {std::pair{1.0, 1.0}, {2.0, 1.0}}) {
      const double m = msp_capacity(s, e, 0.8, p).value;
      const double w = wspq_capacity(s, e, 0.8, p, q).value;
      const double rhs = capacity_comparison_constant(0.8, p, q, c_mu) * w;
      cmp.leq(m, rhs, 1e-9 * rhs, tag + " " + fmt("p", p));
    }
  }
  // Distant points enlarge g_frac on the old points and leave their balls
  // alone, so the scale needed on old pairs can only drop.
  for (std::size_t it = 0; it < c.count(10); ++it) {
    const std::size_t n = 4 + it % 4;
    std::uniform_real_distribution<double> coord(0.0, 4.0);
    std::vector<double> x(n + 2), y(n + 2), d((n + 2) * (n + 2));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = coord(rng);
      y[i] = coord(rng);
    }
    x[n] = 100.0;
    x[n + 1] = -100.0;
    y[n] = y[n + 1] = 0.0;
    for (std::size_t i = 0; i < n + 2; ++i) {
      for (std::size_t j = 0; j < n + 2; ++j) {
        d[i * (n + 2) + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
      }
    }
    const auto big = MetricMeasureSpace::build(std::move(d), std::vector<double>(n + 2, 1.0));
    std::vector<Index> old(n);
    for (Index i = 0; i < n; ++i) old[i] = i;
    const auto small = big.subspace(PointSet(old));
    auto u = random_values(rng, n + 2);
    const std::vector<double> us(u.begin(), u.begin() + static_cast<long>(n));
    const auto g_small = w_norm(small, us, 1.0, 1.0, 1.0).g_frac;
    const auto g_big = w_norm(big, u, 1.0, 1.0, 1.0).g_frac;
    const std::vector<double> g_old(g_big.begin(), g_big.begin() + static_cast<long>(n));
    far.leq(minimal_gradient_scale(small, us, g_old, 1.0), minimal_gradient_scale(small, us, g_small, 1.0),
            1e-12, fmt("instance", static_cast<double>(it)));
  }
  for (const Check* k : {&t3, &emb, &cmp, &dil, &far}) c.add(*k);
}

// ---------------------------------------------------------------- generators

void suite_generators(const Ctx& c) {
  Check valid("generators", "valid"), sig("generators", "sigma_model");
  Check cantor("generators", "cantor_reverse_doubling");
  for (const auto& entry : catalog()) valid.truth(entry.space.size() > 0, entry.name);
  for (double alpha : {0.0, 1.0}) {
    FamilySpec spec;
    spec.kind = FamilyKind::kRadialWeight;
    spec.extent = 64;
    spec.alpha = alpha;
    const auto gs = generate(spec);
    const auto rep = geometry_report(gs.space, 2.0, gs.origin);
    sig.leq(std::abs(rep.basepoint->sigma - *gs.sigma_model), 0.2 * *gs.sigma_model, 0.0,
            fmt("alpha", alpha));
  }
  for (auto [ratio, level] : {std::pair{1.0 / 3.0, 3}, {1.0 / 3.0, 4}, {0.25, 3}}) {
    FamilySpec spec;
    spec.kind = FamilyKind::kCantorLike;
    spec.ratio = ratio;
    spec.level = level;
    const auto gs = generate(spec);
    const auto rep = geometry_report(gs.space, 1.0 / ratio);
    cantor.truth(!rep.c_R_range_empty, fmt("ratio", ratio) + " range");
    cantor.leq(rep.c_R, 1.0, -1e-12, fmt("ratio", ratio) + " " + fmt("level", level));
  }
  c.add(valid);
  c.add(sig);
  c.add(cantor);
}

using Suite = void (*)(const Ctx&);

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all{
      {"space", suite_space},           {"median", suite_median},
      {"hajlasz", suite_hajlasz},       {"relcap", suite_relcap},
      {"content", suite_content},       {"limits", suite_limits},
      {"fractional", suite_fractional}, {"generators", suite_generators}};
  return all;
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"T3", line_points({0.0, 1.0, 2.0}), 0});
  out.push_back({"T4", line_points({0.0, 1.0, 2.0, 3.0}), 0});
  auto add = [&](const std::string& name, FamilySpec spec) {
    auto gs = generate(spec);
    out.push_back({name, std::move(gs.space), gs.origin});
  };
  FamilySpec s;
  s.extent = 1;
  add("line_grid:extent=1", s);
  s.extent = 8;
  add("line_grid:extent=8", s);
  s.kind = FamilyKind::kLatticeBox;
  s.extent = 2;
  s.dim = 2;
  add("lattice_box:extent=2,dim=2", s);
  s.kind = FamilyKind::kRadialWeight;
  s.extent = 16;
  s.dim = 1;
  s.alpha = 1;
  add("radial_weight:extent=16,alpha=1", s);
  s.kind = FamilyKind::kCantorLike;
  s.level = 2;
  add("cantor_like:level=2", s);
  s.level = 3;
  add("cantor_like:level=3", s);
  s.kind = FamilyKind::kTwoPointScale;
  s.level = 1;
  add("two_point_scale:level=1", s);
  s.level = 3;
  add("two_point_scale:level=3", s);
  return out;
}

std::vector<std::string> verify_suites() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  return names;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  Ctx ctx;
  ctx.seed = opts.seed;
  ctx.scale = opts.scale;
  ctx.filter = opts.filter;
  if (!(opts.scale > 0.0) || !std::isfinite(opts.scale)) {
    throw Error(ErrorCode::kBadSpec, "scale must be positive");
  }
  if (opts.sabotage == "median_tie") {
    ctx.rule = MedianRule::kNonStrict;
  } else if (!opts.sabotage.empty()) {
    throw Error(ErrorCode::kBadSpec, "unknown sabotage '" + opts.sabotage + "'");
  }
  VerifyReport rep;
  ctx.out = &rep.checks;
  const std::string head = opts.filter.substr(0, opts.filter.find('.'));
  bool matched = false;
  for (const auto& [name, fn] : suites()) {
    if (!opts.filter.empty() && head != name) continue;
    matched = true;
    fn(ctx);
  }
  if (!matched) throw Error(ErrorCode::kBadSpec, "no suite matches '" + opts.filter + "'");
  if (rep.checks.empty()) throw Error(ErrorCode::kBadSpec, "no check matches '" + opts.filter + "'");
  for (const auto& chk : rep.checks) rep.failed += chk.passed ? 0 : 1;
  return rep;
}

}  // namespace hajlab
