/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/generators.hpp"
#include "core/space.hpp"

namespace hajlab {

struct CatalogEntry {
  std::string name;
  MetricMeasureSpace space;
  Index origin = 0;
};

/// Named spaces the suites run over: the three- and four-point lines plus
/// one small member of every generator family.
std::vector<CatalogEntry> catalog();

/// One named property, aggregated over its instances. lhs/rhs are the two
/// sides at the worst instance (largest lhs - rhs for inequalities lhs <= rhs,
/// largest |lhs - rhs| for equalities).
struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::string filter;    // suite name or check-name prefix; empty runs all
  std::string sabotage;  // "median_tie" swaps in the non-strict median rule
  double scale = 1.0;    // multiplies the random instance counts
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::size_t failed = 0;
  bool passed() const { return failed == 0; }
};

std::vector<std::string> verify_suites();

/// Runs every selected suite. Throws BadSpec for an unknown filter or
/// sabotage name.
VerifyReport run_verify(const VerifyOptions& opts = {});

}  // namespace hajlab
