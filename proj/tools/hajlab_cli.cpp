/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Command-line front end. Talks to the library only through hajlab.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hajlab.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct SpaceDeleter {
  void operator()(hajlab_space* s) const { hajlab_space_free(s); }
};
using SpacePtr = std::unique_ptr<hajlab_space, SpaceDeleter>;

struct CString {
  char* ptr = nullptr;
  ~CString() { hajlab_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct Options {
  std::string space_file;
  std::string generate;
  double s = 1.0, p = 1.0, q = 1.0, alpha = 0.0, kappa = 2.0, tol = 1e-8;
  double d = 0.0, rho = 0.0, floor = 0.0, threshold = 0.0;
  std::vector<double> lambdas;
  std::size_t basepoint = 0;
  int jmax = 0;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string format = "json";
  std::string filter, sabotage, target, mode, profile, function_file;
  std::vector<std::size_t> e, f;
  double scale = 1.0;
};

int status_exit(hajlab_status st) {
  if (st == HAJLAB_OK) return kExitOk;
  std::cerr << "error: " << hajlab_last_error() << "\n";
  return hajlab_status_is_solver(st) ? kExitSolver : kExitInput;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int write_output(const Options& o, const std::string& name, const std::string& text) {
  if (o.out_dir.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  std::ofstream out(std::filesystem::path(o.out_dir) / name, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "error: cannot write " << name << " in " << o.out_dir << "\n";
    return kExitInput;
  }
  return kExitOk;
}

int load_space(const Options& o, SpacePtr& out) {
  if (o.space_file.empty() == o.generate.empty()) {
    std::cerr << "error: give exactly one of --space or --generate\n";
    return kExitInput;
  }
  hajlab_space* raw = nullptr;
  hajlab_status st;
  if (!o.space_file.empty()) {
    const auto text = read_file(o.space_file);
    if (!text) {
      std::cerr << "error: cannot read " << o.space_file << "\n";
      return kExitInput;
    }
    st = hajlab_space_from_json(text->c_str(), &raw);
  } else {
    st = hajlab_space_generate(o.generate.c_str(), &raw);
  }
  out.reset(raw);
  return status_exit(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potential theory on finite metric measure spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--space", o.space_file, "Space JSON file");
  app.add_option("--generate", o.generate, "Generator spec, e.g. line_grid:extent=8");
  auto* s_opt = app.add_option("--s", o.s, "Smoothness exponent s in (0, 1]");
  auto* p_opt = app.add_option("--p", o.p, "Integrability exponent p > 0");
  auto* q_opt = app.add_option("--q", o.q, "Fractional exponent q > 0");
  auto* alpha_opt = app.add_option("--alpha", o.alpha, "Codimension offset alpha");
  auto* kappa_opt = app.add_option("--kappa", o.kappa, "Annulus ratio kappa > 1");
  auto* lambda_opt = app.add_option("--lambda", o.lambdas, "Inflation factor (repeatable)");
  auto* base_opt = app.add_option("--basepoint", o.basepoint, "Basepoint index");
  auto* jmax_opt = app.add_option("--jmax", o.jmax, "Last annulus index");
  auto* seed_opt = app.add_option("--seed", o.seed, "Random seed");
  auto* tol_opt = app.add_option("--tol", o.tol, "Solver tolerance");
  app.add_option("--out", o.out_dir, "Write results into this directory");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--filter", o.filter, "Verify only this suite or check");

  auto* geo = app.add_subcommand("geometry", "Doubling and reverse-doubling constants");
  auto* cap = app.add_subcommand("capacity", "Capacity of a set");
  cap->add_option("--target", o.target, "msp, relative or wspq")->required();
  cap->add_option("--E", o.e, "Point indices of E")->delimiter(',')->required();
  auto* f_opt = cap->add_option("--F", o.f, "Point indices of F (relative)")->delimiter(',');
  auto* lim = app.add_subcommand("limits", "Medians, exceptional set, thinness and limit");
  auto* floor_opt = lim->add_option("--floor", o.floor, "Floor of the b sequence");
  auto* thr_opt = lim->add_option("--threshold", o.threshold, "Tail-sum threshold");
  auto* prof_opt = lim->add_option("--profile", o.profile, "ramp, bump, noise or decay");
  auto* fun_opt = lim->add_option("--function", o.function_file, "JSON array of function values");
  auto* con = app.add_subcommand("content", "Restricted Hausdorff content");
  con->add_option("--E", o.e, "Point indices of E")->delimiter(',')->required();
  auto* d_opt = con->add_option("--d", o.d, "Codimension (default sp - alpha)");
  auto* rho_opt = con->add_option("--rho", o.rho, "Largest radius");
  auto* mode_opt = con->add_option("--mode", o.mode, "exact or greedy");
  auto* ver = app.add_subcommand("verify", "Run the property suites");
  ver->add_option("--sabotage", o.sabotage, "Inject a known defect (median_tie)");
  ver->add_option("--scale", o.scale, "Multiply random instance counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  Json cfg = Json::object();
  auto put = [&](CLI::Option* opt, const char* key, const Json& value) {
    if (opt->count() > 0) cfg[key] = value;
  };
  if (o.format == "csv" && !lim->parsed()) {
    std::cerr << "error: --format csv applies to limits only\n";
    return kExitInput;
  }

  if (ver->parsed()) {
    put(seed_opt, "seed", o.seed);
    if (!o.filter.empty()) cfg["filter"] = o.filter;
    if (!o.sabotage.empty()) cfg["sabotage"] = o.sabotage;
    if (o.scale != 1.0) cfg["scale"] = o.scale;
    CString out;
    int passed = 0;
    const auto st = hajlab_verify(cfg.dump().c_str(), &out.ptr, &passed);
    if (st != HAJLAB_OK) return status_exit(st);
    const Json rep = Json::parse(out.str());
    for (const auto& c : rep.at("checks")) {
      std::cerr << (c.at("passed").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>()
                << "\n";
    }
    if (const int rc = write_output(o, "verify.json", out.str()); rc != kExitOk) return rc;
    return passed ? kExitOk : kExitVerifyFailed;
  }

  SpacePtr space;
  if (const int rc = load_space(o, space); rc != kExitOk) return rc;

  if (geo->parsed()) {
    put(kappa_opt, "kappa", o.kappa);
    put(base_opt, "basepoint", o.basepoint);
    CString out;
    const auto st = hajlab_geometry(space.get(), cfg.dump().c_str(), &out.ptr);
    if (st != HAJLAB_OK) return status_exit(st);
    return write_output(o, "geometry.json", out.str());
  }
  if (cap->parsed()) {
    cfg["target"] = o.target;
    cfg["E"] = o.e;
    put(f_opt, "F", o.f);
    put(s_opt, "s", o.s);
    put(p_opt, "p", o.p);
    put(q_opt, "q", o.q);
    put(tol_opt, "tol", o.tol);
    put(seed_opt, "seed", o.seed);
    CString out;
    const auto st = hajlab_capacity(space.get(), cfg.dump().c_str(), &out.ptr);
    if (st != HAJLAB_OK) return status_exit(st);
    return write_output(o, "capacity.json", out.str());
  }
  if (con->parsed()) {
    cfg["E"] = o.e;
    put(d_opt, "d", o.d);
    put(rho_opt, "rho", o.rho);
    put(mode_opt, "mode", o.mode);
    put(s_opt, "s", o.s);
    put(p_opt, "p", o.p);
    put(alpha_opt, "alpha", o.alpha);
    CString out;
    const auto st = hajlab_content(space.get(), cfg.dump().c_str(), &out.ptr);
    if (st != HAJLAB_OK) return status_exit(st);
    return write_output(o, "content.json", out.str());
  }
  // limits
  put(s_opt, "s", o.s);
  put(p_opt, "p", o.p);
  put(kappa_opt, "kappa", o.kappa);
  put(lambda_opt, "lambdas", o.lambdas);
  put(base_opt, "basepoint", o.basepoint);
  put(jmax_opt, "jmax", o.jmax);
  put(floor_opt, "floor", o.floor);
  put(thr_opt, "threshold", o.threshold);
  put(prof_opt, "profile", o.profile);
  put(seed_opt, "seed", o.seed);
  put(tol_opt, "tol", o.tol);
  if (fun_opt->count() > 0) {
    const auto text = read_file(o.function_file);
    if (!text) {
      std::cerr << "error: cannot read " << o.function_file << "\n";
      return kExitInput;
    }
    try {
      cfg["u"] = Json::parse(*text);
    } catch (const Json::parse_error& e) {
      std::cerr << "error: malformed function file: " << e.what() << "\n";
      return kExitInput;
    }
  }
  CString json, csv;
  const auto st = hajlab_limits(space.get(), cfg.dump().c_str(), &json.ptr, &csv.ptr);
  if (st != HAJLAB_OK) return status_exit(st);
  if (!o.out_dir.empty()) {
    if (const int rc = write_output(o, "limits.json", json.str()); rc != kExitOk) return rc;
    return write_output(o, "limits.csv", csv.str());
  }
  std::cout << (o.format == "csv" ? csv.str() : json.str());
  return kExitOk;
}
