/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "core/content.hpp"
#include "core/fractional.hpp"
#include "core/generators.hpp"
#include "core/hajlasz.hpp"
#include "core/limits.hpp"
#include "core/space.hpp"

namespace hajlab::io {

using Json = nlohmann::json;

/// Space JSON: {"labels": [...]?, "weights": [...],
///   "metric": {"kind": "explicit", "matrix": [[...]]}
///           | {"kind": "euclidean", "coords": [[...]], "p_exponent": 2}}
MetricMeasureSpace space_from_json(const Json& j);
MetricMeasureSpace space_from_string(const std::string& text);
Json space_to_json(const MetricMeasureSpace& space);

/// A generated space with its default function, if the family has one.
struct LoadedSpace {
  MetricMeasureSpace space;
  std::optional<Index> origin;
  std::optional<double> sigma_model;
  std::optional<std::vector<double>> function;
};

/// Generator spec, either JSON ({"kind": "line_grid", "extent": 8, ...}) or
/// compact text ("line_grid:extent=8,step=1"). Kind "example_exe" yields
/// the sign-ramp line with its function.
LoadedSpace generate_from_spec(const std::string& spec);
LoadedSpace generate_from_json(const Json& j);

Json point_set_json(const PointSet& e);
PointSet point_set_from_json(const Json& j, std::size_t n);

Json geometry_json(const GeometryReport& rep);
Json capacity_json(const CapacityResult& res);
Json content_json(const ContentResult& res);
Json median_trace_json(const MedianTrace& tr);
Json exceptional_set_json(const ExceptionalSet& ex);
Json thinness_json(const ThinnessReport& rep);
Json limit_json(const LimitReport& rep);

/// Stable rendering: two-space indent, shortest round-trip doubles, NaN and
/// infinities as null.
std::string dump(const Json& j);

/// Shortest round-trip text for a double ("nan"/"inf" spelled out).
std::string format_double(double v);

}  // namespace hajlab::io
