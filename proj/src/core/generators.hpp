/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/space.hpp"

namespace hajlab {

enum class FamilyKind { kLineGrid, kLatticeBox, kRadialWeight, kCantorLike, kTwoPointScale };

std::string_view family_name(FamilyKind kind) noexcept;
FamilyKind parse_family(std::string_view name);  // throws BadSpec

/// Parameters per kind (unused fields ignored):
///   line_grid      extent L, step
///   lattice_box    extent L, dim
///   radial_weight  extent L, dim, alpha
///   cantor_like    ratio (kept fraction of each side), level; coordinates
///                  in units of the finest interval
///   two_point_scale  level (cluster count), scale, gap
struct FamilySpec {
  FamilyKind kind = FamilyKind::kLineGrid;
  double extent = 8.0;
  double step = 1.0;
  int dim = 1;
  double alpha = 0.0;
  double ratio = 1.0 / 3.0;
  int level = 3;
  double scale = 4.0;
  double gap = 1.0;
};

struct GeneratedSpace {
  MetricMeasureSpace space;
  Index origin = 0;                   // point at (or nearest) the origin
  std::optional<double> sigma_model;  // continuum growth exponent, radial_weight only
};

GeneratedSpace generate(const FamilySpec& spec);

struct ExampleExe {
  MetricMeasureSpace space;
  std::vector<double> u;  // -1 for x <= -1, +1 for x >= 1, linear between
  Index origin = 0;
  double kappa = 2.0;
};

ExampleExe example_exe(double extent, double step = 1.0);

enum class Profile { kRamp, kBump, kNoise, kDecay };

std::string_view profile_name(Profile p) noexcept;
Profile parse_profile(std::string_view name);  // throws BadSpec

/// Functions of the signed first coordinate t and the norm |x| (distance to
/// point 0 when the space has no coordinates):
///   ramp  t / max|t|;  bump  exp(-(|x|/R)^2) with R = max|x|/4;
///   noise uniform(-1, 1) from the seed;  decay 1 / (1 + |x|).
std::vector<double> random_function(const MetricMeasureSpace& space, Profile profile,
                                    std::uint64_t seed);

}  // namespace hajlab
