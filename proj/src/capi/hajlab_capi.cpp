/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "hajlab.h"

#include <cmath>
#include <cstring>
#include <new>
#include <optional>
#include <set>
#include <string>

#include "core/content.hpp"
#include "core/error.hpp"
#include "core/fractional.hpp"
#include "core/generators.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"
#include "core/relcap.hpp"
#include "core/verify.hpp"

struct hajlab_space {
  hajlab::MetricMeasureSpace space;
  hajlab::Index origin = 0;
  std::optional<std::vector<double>> function;  // default function of the generator
};

namespace {

using hajlab::Error;
using hajlab::ErrorCode;
using Json = hajlab::io::Json;

thread_local std::string last_error;

hajlab_status fail(hajlab_status st, const std::string& msg) {
  last_error = msg;
  return st;
}

// Runs body, translating every exception into a status code.
template <class F>
hajlab_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HAJLAB_OK;
  } catch (const Error& e) {
    return fail(static_cast<hajlab_status>(static_cast<int>(e.code())), e.what());
  } catch (const Json::exception& e) {
    return fail(HAJLAB_INVALID_INPUT, std::string("InvalidInput: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(HAJLAB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HAJLAB_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Json parse_config(const char* text, std::initializer_list<const char*> allowed) {
  Json cfg = Json::object();
  if (text && *text) {
    try {
      cfg = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kInvalidInput, std::string("malformed config: ") + e.what());
    }
  }
  if (!cfg.is_object()) throw Error(ErrorCode::kInvalidInput, "config must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : cfg.items()) {
    if (!ok.count(key)) throw Error(ErrorCode::kInvalidInput, "unknown config key '" + key + "'");
  }
  return cfg;
}

double number(const Json& cfg, const char* key, double def) {
  if (!cfg.contains(key)) return def;
  if (!cfg.at(key).is_number()) throw Error(ErrorCode::kInvalidInput, std::string(key) + " must be a number");
  return cfg.at(key).get<double>();
}

hajlab::Index index_of(const hajlab_space* sp, const Json& cfg, const char* key) {
  if (!cfg.contains(key)) return sp->origin;
  const auto& v = cfg.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0 ||
      static_cast<std::size_t>(v.get<long long>()) >= sp->space.size()) {
    throw Error(ErrorCode::kInvalidInput, std::string(key) + " out of range");
  }
  return static_cast<hajlab::Index>(v.get<long long>());
}

hajlab::SolverOptions solver_options(const Json& cfg) {
  hajlab::SolverOptions o;
  o.tolerance = number(cfg, "tol", o.tolerance);
  o.seed = static_cast<std::uint64_t>(number(cfg, "seed", static_cast<double>(o.seed)));
  if (!(o.tolerance > 0.0)) throw Error(ErrorCode::kInvalidInput, "tol must be positive");
  return o;
}

void require_space(const hajlab_space* sp) {
  if (!sp) throw Error(ErrorCode::kInvalidInput, "null space");
}

template <class T>
void require_out(T* out) {
  if (!out) throw Error(ErrorCode::kInvalidInput, "null output pointer");
}

}  // namespace

extern "C" {

const char* hajlab_version(void) { return "1.0.0"; }

const char* hajlab_status_name(hajlab_status status) {
  if (status == HAJLAB_OK) return "OK";
  if (status == HAJLAB_INTERNAL) return "Internal";
  if (status >= HAJLAB_INVALID_INPUT && status <= HAJLAB_SOLVER_FAILURE) {
    return hajlab::error_code_name(static_cast<ErrorCode>(status)).data();
  }
  return "Unknown";
}

int hajlab_status_is_solver(hajlab_status status) {
  return status == HAJLAB_SOLVER_FAILURE || status == HAJLAB_INTERNAL;
}

const char* hajlab_last_error(void) { return last_error.c_str(); }

void hajlab_string_free(char* str) { std::free(str); }

hajlab_status hajlab_space_from_json(const char* json, hajlab_space** out) {
  return guarded([&] {
    require_out(out);
    *out = nullptr;
    if (!json) throw Error(ErrorCode::kInvalidInput, "null JSON text");
    *out = new hajlab_space{hajlab::io::space_from_string(json), 0, std::nullopt};
  });
}

hajlab_status hajlab_space_generate(const char* spec, hajlab_space** out) {
  return guarded([&] {
    require_out(out);
    *out = nullptr;
    if (!spec) throw Error(ErrorCode::kBadSpec, "null generator spec");
    auto ls = hajlab::io::generate_from_spec(spec);
    *out = new hajlab_space{std::move(ls.space), ls.origin.value_or(0), std::move(ls.function)};
  });
}

void hajlab_space_free(hajlab_space* space) { delete space; }

size_t hajlab_space_size(const hajlab_space* space) { return space ? space->space.size() : 0; }

size_t hajlab_space_origin(const hajlab_space* space) { return space ? space->origin : 0; }

hajlab_status hajlab_space_to_json(const hajlab_space* space, char** out_json) {
  return guarded([&] {
    require_space(space);
    require_out(out_json);
    *out_json = dup(hajlab::io::dump(hajlab::io::space_to_json(space->space)));
  });
}

hajlab_status hajlab_geometry(const hajlab_space* space, const char* config, char** out_json) {
  return guarded([&] {
    require_space(space);
    require_out(out_json);
    const auto cfg = parse_config(config, {"kappa", "basepoint"});
    std::optional<hajlab::Index> base;
    if (cfg.contains("basepoint")) base = index_of(space, cfg, "basepoint");
    const auto rep = hajlab::geometry_report(space->space, number(cfg, "kappa", 2.0), base);
    *out_json = dup(hajlab::io::dump(hajlab::io::geometry_json(rep)));
  });
}

hajlab_status hajlab_capacity(const hajlab_space* space, const char* config, char** out_json) {
  return guarded([&] {
    require_space(space);
    require_out(out_json);
    const auto cfg = parse_config(config, {"target", "E", "F", "s", "p", "q", "tol", "seed"});
    const auto& s = space->space;
    if (!cfg.contains("target") || !cfg.at("target").is_string()) {
      throw Error(ErrorCode::kInvalidInput, "target must be msp, relative or wspq");
    }
    const std::string target = cfg.at("target").get<std::string>();
    if (!cfg.contains("E")) throw Error(ErrorCode::kInvalidInput, "E is required");
    const auto e = hajlab::io::point_set_from_json(cfg.at("E"), s.size());
    const double sexp = number(cfg, "s", 1.0), p = number(cfg, "p", 1.0);
    const auto opts = solver_options(cfg);
    hajlab::CapacityResult res;
    if (target == "msp") {
      res = hajlab::msp_capacity(s, e, sexp, p, opts);
    } else if (target == "relative") {
      const auto f = cfg.contains("F") ? hajlab::io::point_set_from_json(cfg.at("F"), s.size()) : s.all();
      res = hajlab::relative_capacity(s, e, f, sexp, p, opts);
    } else if (target == "wspq") {
      res = hajlab::wspq_capacity(s, e, sexp, p, number(cfg, "q", 1.0), opts);
    } else {
      throw Error(ErrorCode::kInvalidInput, "target must be msp, relative or wspq");
    }
    auto j = hajlab::io::capacity_json(res);
    j["target"] = target;
    *out_json = dup(hajlab::io::dump(j));
  });
}

hajlab_status hajlab_content(const hajlab_space* space, const char* config, char** out_json) {
  return guarded([&] {
    require_space(space);
    require_out(out_json);
    const auto cfg = parse_config(config, {"E", "d", "rho", "mode", "s", "p", "alpha"});
    const auto& s = space->space;
    if (!cfg.contains("E")) throw Error(ErrorCode::kInvalidInput, "E is required");
    const auto e = hajlab::io::point_set_from_json(cfg.at("E"), s.size());
    // Default codimension sp - alpha and the full-norm covering scale.
    const double d = number(cfg, "d", number(cfg, "s", 1.0) * number(cfg, "p", 1.0) -
                                          number(cfg, "alpha", 0.0));
    const double rho = number(cfg, "rho", 5.0 * std::min(1.0, s.diameter()));
    auto mode = hajlab::ContentMode::kExact;
    if (cfg.contains("mode")) {
      const auto m = cfg.at("mode").is_string() ? cfg.at("mode").get<std::string>() : "";
      if (m == "greedy") mode = hajlab::ContentMode::kGreedy;
      else if (m != "exact") throw Error(ErrorCode::kInvalidInput, "mode must be exact or greedy");
    }
    auto j = hajlab::io::content_json(hajlab::hausdorff_content(s, e, d, rho, mode));
    j["d"] = d;
    j["rho"] = rho;
    *out_json = dup(hajlab::io::dump(j));
  });
}

hajlab_status hajlab_limits(const hajlab_space* space, const char* config, char** out_json,
                            char** out_csv) {
  return guarded([&] {
    require_space(space);
    require_out(out_json);
    const auto cfg = parse_config(config, {"s", "p", "kappa", "lambdas", "basepoint", "jmax", "floor",
                                           "threshold", "u", "profile", "seed", "tol"});
    const auto& s = space->space;
    hajlab::LimitsConfig lc;
    lc.s = number(cfg, "s", lc.s);
    lc.p = number(cfg, "p", lc.p);
    lc.kappa = number(cfg, "kappa", lc.kappa);
    lc.basepoint = index_of(space, cfg, "basepoint");
    lc.floor = number(cfg, "floor", lc.floor);
    lc.threshold = number(cfg, "threshold", lc.threshold);
    lc.solver = solver_options(cfg);
    if (cfg.contains("jmax")) {
      if (!cfg.at("jmax").is_number_integer()) throw Error(ErrorCode::kInvalidInput, "jmax must be an integer");
      lc.j_max = cfg.at("jmax").get<int>();
    }
    if (cfg.contains("lambdas")) {
      lc.lambdas.clear();
      for (const auto& l : cfg.at("lambdas")) lc.lambdas.push_back(l.get<double>());
      if (lc.lambdas.empty()) throw Error(ErrorCode::kInvalidInput, "lambdas must not be empty");
    }
    std::vector<double> u;
    std::string source;
    if (cfg.contains("u")) {
      u = cfg.at("u").get<std::vector<double>>();
      source = "given";
    } else if (!cfg.contains("profile") && space->function) {
      u = *space->function;
      source = "generator";
    } else {
      const auto prof = cfg.contains("profile") ? cfg.at("profile").get<std::string>() : "ramp";
      u = hajlab::random_function(s, hajlab::parse_profile(prof), lc.solver.seed);
      source = prof;
    }
    const auto run = hajlab::run_limits(s, u, lc);
    Json j;
    j["function"] = source;
    j["basepoint"] = lc.basepoint;
    j["median_trace"] = hajlab::io::median_trace_json(run.trace);
    j["exceptional_set"] = hajlab::io::exceptional_set_json(run.exceptional);
    j["thinness"] = hajlab::io::thinness_json(run.thinness);
    j["limit"] = run.limit ? hajlab::io::limit_json(*run.limit) : Json(nullptr);
    *out_json = dup(hajlab::io::dump(j));
    if (out_csv) *out_csv = dup(hajlab::limits_csv(run));
  });
}

hajlab_status hajlab_verify(const char* config, char** out_json, int* all_passed) {
  return guarded([&] {
    require_out(out_json);
    const auto cfg = parse_config(config, {"seed", "filter", "sabotage", "scale"});
    hajlab::VerifyOptions o;
    o.seed = static_cast<std::uint64_t>(number(cfg, "seed", 1.0));
    o.scale = number(cfg, "scale", 1.0);
    if (cfg.contains("filter")) o.filter = cfg.at("filter").get<std::string>();
    if (cfg.contains("sabotage")) o.sabotage = cfg.at("sabotage").get<std::string>();
    const auto rep = hajlab::run_verify(o);
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"suite", c.suite},
                        {"name", c.suite + "." + c.name},
                        {"passed", c.passed},
                        {"instances", c.instances},
                        {"lhs", std::isfinite(c.lhs) ? Json(c.lhs) : Json(nullptr)},
                        {"rhs", std::isfinite(c.rhs) ? Json(c.rhs) : Json(nullptr)},
                        {"detail", c.detail}});
    }
    Json j = {{"seed", o.seed},
              {"checks", checks},
              {"total", rep.checks.size()},
              {"failed", rep.failed},
              {"passed", rep.passed()}};
    *out_json = dup(hajlab::io::dump(j));
    if (all_passed) *all_passed = rep.passed() ? 1 : 0;
  });
}

}  // extern "C"
