/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/fractional.hpp"
#include "core/io.hpp"

namespace hajlab {

LimitsRun run_limits(const MetricMeasureSpace& space, std::span<const double> u,
                     const LimitsConfig& cfg) {
  if (u.size() != space.size()) throw Error(ErrorCode::kInvalidInput, "function length mismatch");
  if (cfg.basepoint >= space.size()) throw Error(ErrorCode::kInvalidInput, "basepoint out of range");
  const int last = last_full_annulus(space, cfg.basepoint, cfg.kappa);
  const int jmax = cfg.j_max ? std::min(*cfg.j_max, last) : last;
  if (jmax < 0) throw Error(ErrorCode::kBadProblem, "jmax must be >= 0");

  LimitsRun run;
  run.g = scaled_fractional_gradient(space, u, cfg.s);
  run.trace = median_trace(space, u, cfg.basepoint, cfg.kappa, 0, jmax);
  run.exceptional = exceptional_set(space, u, run.g, cfg.basepoint, cfg.kappa, cfg.lambdas.front(),
                                    cfg.s, cfg.p, cfg.floor, 0, jmax);
  run.thinness = thinness_tail(space, run.exceptional.set_union, cfg.basepoint, cfg.kappa,
                               cfg.lambdas, cfg.s, cfg.p, 0, jmax, cfg.threshold, cfg.solver);
  for (int j = 1; j <= std::max(jmax, 1); ++j) run.radii.push_back(std::pow(cfg.kappa, j));
  try {
    run.limit = limit_along_complement(space, u, run.exceptional.set_union, cfg.basepoint,
                                       run.radii, cfg.kappa);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kComplementEmptyBeyondN) throw;
  }
  return run;
}

std::string limits_csv(const LimitsRun& run) {
  std::ostringstream os;
  os << "j,median,a_j,b_j,|E_j|,cap_j,tail_m\n";
  const auto& ex = run.exceptional;
  const auto& t = run.thinness.per_lambda.front();
  for (std::size_t k = 0; k < ex.a_seq.size(); ++k) {
    os << ex.j_min + static_cast<int>(k) << ',' << io::format_double(ex.medians[k]) << ','
       << io::format_double(ex.a_seq[k]) << ',' << io::format_double(ex.b_seq[k]) << ','
       << ex.e_j[k].size() << ',' << io::format_double(t.per_j_cap[k]) << ','
       << io::format_double(t.tail_sums[k]) << '\n';
  }
  return os.str();
}

}  // namespace hajlab
