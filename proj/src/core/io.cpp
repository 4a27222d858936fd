/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace hajlab::io {

namespace {

Error bad_input(const std::string& msg) { return Error(ErrorCode::kInvalidInput, msg); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad_input(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) throw bad_input(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw bad_input(std::string(what) + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// Numbers that are not finite become null; -0 prints as 0.
Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v == 0.0 ? 0.0 : v;
}

Json num_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

MetricMeasureSpace space_from_json(const Json& j) {
  if (!j.is_object()) throw bad_input("space must be a JSON object");
  const auto weights = number_array(require(j, "weights"), "weights");
  const auto& metric = require(j, "metric");
  const auto& kind_j = require(metric, "kind");
  if (!kind_j.is_string()) throw bad_input("metric.kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) throw bad_input("labels must be an array");
    for (const auto& l : j.at("labels")) {
      labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
  }
  const std::size_t n = weights.size();
  std::vector<double> dist;
  std::vector<std::vector<double>> coords;
  if (kind == "explicit") {
    const auto& m = require(metric, "matrix");
    if (!m.is_array() || m.size() != n) throw bad_input("matrix must be n x n with n = #weights");
    for (const auto& row : m) {
      const auto r = number_array(row, "matrix row");
      if (r.size() != n) throw bad_input("matrix must be n x n with n = #weights");
      dist.insert(dist.end(), r.begin(), r.end());
    }
  } else if (kind == "euclidean") {
    const auto& c = require(metric, "coords");
    if (!c.is_array() || c.size() != n) throw bad_input("coords must have one row per weight");
    for (const auto& row : c) coords.push_back(number_array(row, "coords row"));
    double pe = 2.0;
    if (metric.contains("p_exponent")) {
      if (!metric.at("p_exponent").is_number()) throw bad_input("p_exponent must be a number");
      pe = metric.at("p_exponent").get<double>();
    }
    if (!(pe >= 1.0)) throw bad_input("p_exponent must be >= 1");
    dist.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      if (coords[a].size() != coords[0].size()) throw bad_input("coords rows differ in length");
      for (std::size_t b = 0; b < n; ++b) {
        double acc = 0.0, mx = 0.0;
        for (std::size_t k = 0; k < coords[a].size(); ++k) {
          const double d = std::abs(coords[a][k] - coords[b][k]);
          acc += std::pow(d, pe);
          mx = std::max(mx, d);
        }
        dist[a * n + b] = std::isinf(pe) ? mx : std::pow(acc, 1.0 / pe);
      }
    }
  } else {
    throw bad_input("unknown metric kind '" + kind + "'");
  }
  if (!labels.empty() && labels.size() != n) throw bad_input("labels must match weights");
  return MetricMeasureSpace::build(std::move(dist), weights, std::move(labels), std::move(coords));
}

MetricMeasureSpace space_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw bad_input(std::string("malformed JSON: ") + e.what());
  }
  return space_from_json(j);
}

Json space_to_json(const MetricMeasureSpace& space) {
  Json j;
  const std::size_t n = space.size();
  if (!space.labels().empty()) j["labels"] = space.labels();
  j["weights"] = std::vector<double>(space.weights().begin(), space.weights().end());
  Json m = Json::array();
  for (Index i = 0; i < n; ++i) {
    const auto row = space.distance_row(i);
    m.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["metric"] = {{"kind", "explicit"}, {"matrix", m}};
  return j;
}

LoadedSpace generate_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kBadSpec, "generator spec must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorCode::kBadSpec, "generator spec needs a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  auto get = [&](const char* key, double def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number()) throw Error(ErrorCode::kBadSpec, std::string(key) + " must be a number");
    return j.at(key).get<double>();
  };
  for (const auto& [key, value] : j.items()) {
    static const char* known[] = {"kind", "extent", "step", "dim", "alpha",
                                  "ratio", "level", "scale", "gap"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known)) {
      throw Error(ErrorCode::kBadSpec, "unknown generator parameter '" + key + "'");
    }
  }
  if (kind == "example_exe") {
    auto ex = example_exe(get("extent", 32.0), get("step", 1.0));
    return {std::move(ex.space), ex.origin, std::nullopt, std::move(ex.u)};
  }
  FamilySpec spec;
  spec.kind = parse_family(kind);
  spec.extent = get("extent", spec.extent);
  spec.step = get("step", spec.step);
  spec.dim = static_cast<int>(get("dim", spec.dim));
  spec.alpha = get("alpha", spec.alpha);
  spec.ratio = get("ratio", spec.ratio);
  spec.level = static_cast<int>(get("level", spec.level));
  spec.scale = get("scale", spec.scale);
  spec.gap = get("gap", spec.gap);
  auto gs = generate(spec);
  return {std::move(gs.space), gs.origin, gs.sigma_model, std::nullopt};
}

LoadedSpace generate_from_spec(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') {
    Json j;
    try {
      j = Json::parse(spec);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kBadSpec, std::string("malformed generator JSON: ") + e.what());
    }
    return generate_from_json(j);
  }
  Json j;
  const auto colon = spec.find(':');
  j["kind"] = spec.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::kBadSpec, "expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || ptr != val.data() + val.size()) {
        throw Error(ErrorCode::kBadSpec, "bad number for '" + key + "'");
      }
      j[key] = v;
    }
  }
  return generate_from_json(j);
}

Json point_set_json(const PointSet& e) { return e.members(); }

PointSet point_set_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw bad_input("point set must be an array of indices");
  std::vector<Index> m;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0 ||
        static_cast<std::size_t>(v.get<long long>()) >= n) {
      throw bad_input("point index out of range");
    }
    m.push_back(static_cast<Index>(v.get<long long>()));
  }
  return PointSet(std::move(m));
}

Json geometry_json(const GeometryReport& rep) {
  Json j;
  j["kappa"] = num(rep.kappa);
  j["c_mu"] = num(rep.c_mu);
  j["c_mu_witness"] = {{"center", rep.c_mu_witness.center}, {"radius", num(rep.c_mu_witness.radius)}};
  j["Q"] = num(rep.Q);
  j["c_R"] = num(rep.c_R);
  j["c_R_witness"] = {{"center", rep.c_R_witness.center}, {"radius", num(rep.c_R_witness.radius)}};
  j["c_R_range_empty"] = rep.c_R_range_empty;
  j["sigma"] = num(rep.sigma);
  j["c_sigma"] = num(rep.c_sigma);
  j["sigma_witness"] = rep.sigma_witness;
  j["r_range_used"] = {num(rep.r_lo), num(rep.r_hi)};
  if (rep.basepoint) {
    const auto& b = *rep.basepoint;
    j["basepoint"] = {{"index", b.basepoint},         {"c_R", num(b.c_R)},
                      {"sigma", num(b.sigma)},        {"c_sigma", num(b.c_sigma)},
                      {"r_range", {num(b.r_lo), num(b.r_hi)}}};
  }
  return j;
}

Json capacity_json(const CapacityResult& res) {
  Json j;
  j["value"] = num(res.value);
  j["lower_bound"] = res.lower_bound ? num(*res.lower_bound) : Json(nullptr);
  j["status"] = std::string(status_name(res.status));
  j["iterations"] = res.iterations;
  j["kkt_residual"] = num(res.kkt_residual);
  j["v"] = num_array(res.v_opt);
  j["g"] = num_array(res.g_opt.g);
  j["feasibility_residual"] = num(res.g_opt.feasibility_residual);
  return j;
}

Json content_json(const ContentResult& res) {
  Json balls = Json::array();
  for (const auto& b : res.covering.balls) balls.push_back({{"center", b.center}, {"radius", num(b.radius)}});
  Json j;
  j["value"] = num(res.value);
  j["exact"] = res.exact;
  j["greedy_ratio_bound"] = res.greedy_ratio_bound ? num(*res.greedy_ratio_bound) : Json(nullptr);
  j["balls"] = balls;
  j["covers"] = point_set_json(res.covering.covers);
  j["candidates"] = res.candidates;
  return j;
}

Json median_trace_json(const MedianTrace& tr) {
  return {{"basepoint", tr.basepoint}, {"kappa", num(tr.kappa)}, {"j_min", tr.j_min},
          {"j_max", tr.j_max},         {"medians", num_array(tr.medians)},
          {"empty", tr.empty}};
}

Json exceptional_set_json(const ExceptionalSet& ex) {
  Json sizes = Json::array();
  for (const auto& e : ex.e_j) sizes.push_back(e.size());
  return {{"j_min", ex.j_min},
          {"j_max", ex.j_max},
          {"a", num_array(ex.a_seq)},
          {"b", num_array(ex.b_seq)},
          {"E_sizes", sizes},
          {"union", point_set_json(ex.set_union)},
          {"floor", num(ex.floor_used)},
          {"sum_ratio", num(ex.sum_ratio)},
          {"main_bound", num(ex.main_bound)},
          {"floor_term", num(ex.floor_term)},
          {"overlap", ex.overlap}};
}

Json thinness_json(const ThinnessReport& rep) {
  Json per = Json::array();
  for (const auto& t : rep.per_lambda) {
    Json st = Json::array();
    for (auto s : t.status) st.push_back(std::string(status_name(s)));
    per.push_back({{"lambda", num(t.lambda)},
                   {"cap", num_array(t.per_j_cap)},
                   {"status", st},
                   {"tail_sums", num_array(t.tail_sums)},
                   {"verdict", t.consistent ? "consistent" : "inconsistent"}});
  }
  return {{"j_min", rep.j_min},
          {"truncation_j_max", rep.j_max},
          {"threshold", num(rep.threshold)},
          {"per_lambda", per},
          {"verdict", rep.consistent ? "consistent" : "inconsistent"}};
}

Json limit_json(const LimitReport& rep) {
  Json lv = Json::array();
  for (const auto& l : rep.levels) {
    lv.push_back({{"N", num(l.radius)}, {"sup", num(l.sup)}, {"inf", num(l.inf)}, {"count", l.count}});
  }
  return {{"levels", lv},
          {"c", num(rep.c)},
          {"epsilon", num(rep.epsilon)},
          {"median_limit", num(rep.median_limit)},
          {"median_gap", num(rep.median_gap)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace hajlab::io
