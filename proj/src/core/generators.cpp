/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "core/error.hpp"

namespace hajlab {

namespace {

constexpr std::size_t kMaxPoints = 4096;

Error bad(const std::string& msg) { return Error(ErrorCode::kBadSpec, msg); }

// Points on a line with unit weights unless given.
MetricMeasureSpace line_space(const std::vector<double>& xs, const std::vector<double>& w) {
  const std::size_t n = xs.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(xs[i] - xs[j]);
  }
  std::vector<std::vector<double>> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = {xs[i]};
  return MetricMeasureSpace::build(std::move(d), w, {}, std::move(coords));
}

std::vector<double> grid_points(double extent, double step) {
  if (!(extent > 0.0) || !std::isfinite(extent)) throw bad("extent must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw bad("step must be positive");
  const auto half = static_cast<long>(std::floor(extent / step + 1e-9));
  if (static_cast<std::size_t>(2 * half + 1) > kMaxPoints) throw bad("grid too large");
  std::vector<double> xs;
  for (long k = -half; k <= half; ++k) xs.push_back(static_cast<double>(k) * step);
  return xs;
}

MetricMeasureSpace lattice(double extent, int dim, double alpha) {
  if (dim < 1 || dim > 3) throw bad("dim must be 1, 2 or 3");
  if (!(extent >= 1.0) || !std::isfinite(extent)) throw bad("extent must be >= 1");
  const auto half = static_cast<long>(std::floor(extent + 1e-9));
  const long side = 2 * half + 1;
  const double count = std::pow(static_cast<double>(side), dim);
  if (count > static_cast<double>(kMaxPoints)) throw bad("lattice too large");
  std::vector<std::vector<double>> pts;
  std::vector<long> idx(static_cast<std::size_t>(dim), -half);
  for (;;) {
    pts.emplace_back(idx.begin(), idx.end());
    int a = dim - 1;
    while (a >= 0 && idx[static_cast<std::size_t>(a)] == half) idx[static_cast<std::size_t>(a--)] = -half;
    if (a < 0) break;
    ++idx[static_cast<std::size_t>(a)];
  }
  const std::size_t n = pts.size();
  std::vector<double> d(n * n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (double c : pts[i]) norm += c * c;
    w[i] = std::pow(1.0 + std::sqrt(norm), alpha);
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double diff = pts[i][static_cast<std::size_t>(k)] - pts[j][static_cast<std::size_t>(k)];
        acc += diff * diff;
      }
      d[i * n + j] = std::sqrt(acc);
    }
  }
  return MetricMeasureSpace::build(std::move(d), std::move(w), {}, std::move(pts));
}

Index nearest_origin(const MetricMeasureSpace& s) {
  Index best = 0;
  double bn = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < s.size(); ++i) {
    double norm = 0.0;
    for (double c : s.coords()[i]) norm += c * c;
    if (norm < bn) {
      bn = norm;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::string_view family_name(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::kLineGrid: return "line_grid";
    case FamilyKind::kLatticeBox: return "lattice_box";
    case FamilyKind::kRadialWeight: return "radial_weight";
    case FamilyKind::kCantorLike: return "cantor_like";
    case FamilyKind::kTwoPointScale: return "two_point_scale";
  }
  return "unknown";
}

FamilyKind parse_family(std::string_view name) {
  for (auto k : {FamilyKind::kLineGrid, FamilyKind::kLatticeBox, FamilyKind::kRadialWeight,
                 FamilyKind::kCantorLike, FamilyKind::kTwoPointScale}) {
    if (family_name(k) == name) return k;
  }
  throw bad("unknown family '" + std::string(name) + "'");
}

GeneratedSpace generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kLineGrid: {
      const auto xs = grid_points(spec.extent, spec.step);
      auto s = line_space(xs, std::vector<double>(xs.size(), 1.0));
      const Index o = nearest_origin(s);
      return {std::move(s), o, std::nullopt};
    }
    case FamilyKind::kLatticeBox: {
      auto s = lattice(spec.extent, spec.dim, 0.0);
      const Index o = nearest_origin(s);
      return {std::move(s), o, std::nullopt};
    }
    case FamilyKind::kRadialWeight: {
      if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) throw bad("alpha must be >= 0");
      auto s = lattice(spec.extent, spec.dim, spec.alpha);
      const Index o = nearest_origin(s);
      return {std::move(s), o, spec.dim + spec.alpha};
    }
    case FamilyKind::kCantorLike: {
      if (!(spec.ratio > 0.0 && spec.ratio < 0.5)) throw bad("ratio must lie in (0, 1/2)");
      if (spec.level < 1 || spec.level > 12) throw bad("level must lie in 1..12");
      // Left endpoints of the 2^level intervals kept at the given level, in
      // units of the finest interval. With 1/ratio an integer every
      // coordinate is an exact integer, so scale comparisons such as
      // kappa * r against a distance have no rounding ties.
      const double m = std::round(1.0 / spec.ratio);
      const bool integral = std::abs(m * spec.ratio - 1.0) < 1e-12;
      std::vector<double> xs{0.0};
      double len = integral ? std::pow(m, spec.level) : std::pow(spec.ratio, -spec.level);
      for (int l = 0; l < spec.level; ++l) {
        const double next = integral ? len / m : len * spec.ratio;
        std::vector<double> ys;
        for (double x : xs) {
          ys.push_back(x);
          ys.push_back(x + len - next);
        }
        xs = std::move(ys);
        len = next;
      }
      auto s = line_space(xs, std::vector<double>(xs.size(), 1.0));
      return {std::move(s), 0, std::nullopt};
    }
    case FamilyKind::kTwoPointScale: {
      if (spec.level < 1 || spec.level > 40) throw bad("level must lie in 1..40");
      if (!(spec.scale > 1.0)) throw bad("scale must exceed 1");
      if (!(spec.gap > 0.0)) throw bad("gap must be positive");
      // Cluster k: {scale^k, scale^k + gap}, plus the origin.
      std::vector<double> xs{0.0};
      for (int k = 0; k < spec.level; ++k) {
        const double c = std::pow(spec.scale, k);
        xs.push_back(c);
        xs.push_back(c + spec.gap);
      }
      std::sort(xs.begin(), xs.end());
      if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) throw bad("clusters overlap");
      auto s = line_space(xs, std::vector<double>(xs.size(), 1.0));
      return {std::move(s), 0, std::nullopt};
    }
  }
  throw bad("unknown family");
}

ExampleExe example_exe(double extent, double step) {
  if (!(extent >= 2.0)) throw bad("extent must be >= 2");
  const auto xs = grid_points(extent, step);
  ExampleExe ex{line_space(xs, std::vector<double>(xs.size(), 1.0)), {}, 0, 2.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ex.u.push_back(std::clamp(xs[i], -1.0, 1.0));
    if (xs[i] == 0.0) ex.origin = i;
  }
  return ex;
}

std::string_view profile_name(Profile p) noexcept {
  switch (p) {
    case Profile::kRamp: return "ramp";
    case Profile::kBump: return "bump";
    case Profile::kNoise: return "noise";
    case Profile::kDecay: return "decay";
  }
  return "unknown";
}

Profile parse_profile(std::string_view name) {
  for (auto p : {Profile::kRamp, Profile::kBump, Profile::kNoise, Profile::kDecay}) {
    if (profile_name(p) == name) return p;
  }
  throw bad("unknown profile '" + std::string(name) + "'");
}

std::vector<double> random_function(const MetricMeasureSpace& space, Profile profile,
                                    std::uint64_t seed) {
  const std::size_t n = space.size();
  std::vector<double> t(n), r(n);
  const bool has_coords = !space.coords().empty();
  for (Index i = 0; i < n; ++i) {
    if (has_coords) {
      const auto& c = space.coords()[i];
      double norm = 0.0;
      for (double v : c) norm += v * v;
      r[i] = std::sqrt(norm);
      t[i] = c.empty() ? 0.0 : c.front();
    } else {
      r[i] = t[i] = space.distance(0, i);
    }
  }
  std::vector<double> u(n);
  switch (profile) {
    case Profile::kRamp: {
      double m = 0.0;
      for (double v : t) m = std::max(m, std::abs(v));
      for (Index i = 0; i < n; ++i) u[i] = m > 0.0 ? t[i] / m : 0.0;
      break;
    }
    case Profile::kBump: {
      double m = 0.0;
      for (double v : r) m = std::max(m, v);
      const double rad = m > 0.0 ? m / 4.0 : 1.0;
      for (Index i = 0; i < n; ++i) u[i] = std::exp(-(r[i] / rad) * (r[i] / rad));
      break;
    }
    case Profile::kNoise: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> d(-1.0, 1.0);
      for (double& v : u) v = d(rng);
      break;
    }
    case Profile::kDecay:
      for (Index i = 0; i < n; ++i) u[i] = 1.0 / (1.0 + r[i]);
      break;
  }
  return u;
}

}  // namespace hajlab
