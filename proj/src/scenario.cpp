#include "dynbc/scenario.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "dynbc/errors.hpp"
#include "dynbc/io.hpp"

namespace dynbc {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  void issue(std::string msg) { issues_.push_back(std::move(msg)); }

  // Reports keys of `obj` outside `known`.
  void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
      bool found = false;
      for (auto k : known) found = found || k == key;
      if (!found) issue(where + key + ": unknown field");
    }
  }

  void number(const json& obj, const std::string& where, const char* key, double& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_number()) {
      out = v.get<double>();
    } else if (v.is_string() && (v == "inf" || v == "infinity")) {
      out = kInfiniteTime;
    } else {
      issue(where + key + ": expected a number");
    }
  }

  void integer(const json& obj, const std::string& where, const char* key, int& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_number_integer()) out = v.get<int>();
    else issue(where + key + ": expected an integer");
  }

  void string(const json& obj, const std::string& where, const char* key, std::string& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_string()) out = v.get<std::string>();
    else issue(where + key + ": expected a string");
  }

  void boolean(const json& obj, const std::string& where, const char* key, bool& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_boolean()) out = v.get<bool>();
    else issue(where + key + ": expected true or false");
  }

  void numbers(const json& obj, const std::string& where, const char* key, std::vector<double>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array()) {
      issue(where + key + ": expected an array of numbers");
      return;
    }
    out.clear();
    for (const auto& e : v) {
      if (e.is_number()) out.push_back(e.get<double>());
      else if (e.is_string() && (e == "inf" || e == "infinity")) out.push_back(kInfiniteTime);
      else issue(where + key + ": expected an array of numbers");
    }
  }

  bool object(const json& obj, const char* key) {
    if (!obj.contains(key)) return false;
    if (!obj.at(key).is_object()) {
      issue(std::string(key) + ": expected an object");
      return false;
    }
    return true;
  }

 private:
  std::vector<std::string>& issues_;
};

void try_parse(Reader& r, const std::string& field, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    r.issue(field + ": " + e.what());
  }
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  return s == Scheme::ImplicitEuler ? "implicit-euler" : "crank-nicolson";
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError({std::string("json: ") + e.what()});
  }
  if (!root.is_object()) throw ScenarioError({"json: top level must be an object"});

  std::vector<std::string> issues;
  Reader r(issues);
  Scenario sc;
  sc.base_dir = base_dir;
  r.check_keys(root, "", {"mesh", "family", "motion", "t0", "T", "dt", "scheme", "initial", "forcing", "output",
                          "verify"});

  if (r.object(root, "mesh")) {
    const json& m = root["mesh"];
    r.check_keys(m, "mesh.", {"generator", "radius", "h", "side", "n", "file"});
    r.string(m, "mesh.", "generator", sc.mesh.generator);
    r.number(m, "mesh.", "radius", sc.mesh.radius);
    r.number(m, "mesh.", "h", sc.mesh.h);
    r.number(m, "mesh.", "side", sc.mesh.side);
    r.integer(m, "mesh.", "n", sc.mesh.n);
    r.string(m, "mesh.", "file", sc.mesh.file);
    if (m.contains("file") && !m.contains("generator")) sc.mesh.generator = "file";
  }
  const auto& g = sc.mesh.generator;
  if (g == "disk") {
    if (!(sc.mesh.radius > 0.0)) r.issue("mesh.radius: must be > 0");
    if (!(sc.mesh.h > 0.0)) r.issue("mesh.h: must be > 0");
  } else if (g == "square") {
    if (!(sc.mesh.side > 0.0)) r.issue("mesh.side: must be > 0");
    if (sc.mesh.n < 1) r.issue("mesh.n: must be >= 1");
  } else if (g == "file") {
    if (sc.mesh.file.empty()) r.issue("mesh.file: required for generator 'file'");
  } else {
    r.issue("mesh.generator: unknown generator '" + g + "' (disk, square, file)");
  }

  if (r.object(root, "family")) {
    const json& f = root["family"];
    r.check_keys(f, "family.", {"preset", "lambda", "eps", "decay", "beta"});
    r.string(f, "family.", "preset", sc.family.preset);
    r.number(f, "family.", "lambda", sc.family.lambda);
    r.number(f, "family.", "eps", sc.family.eps);
    r.number(f, "family.", "decay", sc.family.decay);
    if (f.contains("beta")) {
      std::vector<double> beta;
      r.numbers(f, "family.", "beta", beta);
      if (beta.size() == 2) sc.family.beta = Vec2(beta[0], beta[1]);
      else r.issue("family.beta: expected two numbers");
    }
  }
  if (!(sc.family.lambda < 0.0)) r.issue("family.lambda: must be < 0");
  const auto& fp = sc.family.preset;
  if (fp != "laplace_shift" && fp != "oscillating" && fp != "advection" && fp != "motion-derived")
    r.issue("family.preset: unknown preset '" + fp + "' (laplace_shift, oscillating, advection, motion-derived)");

  if (root.contains("motion")) {
    if (r.object(root, "motion")) {
      const json& m = root["motion"];
      MotionSpec ms;
      r.check_keys(m, "motion.", {"preset", "amplitude", "rate", "eps", "beta", "a"});
      r.string(m, "motion.", "preset", ms.preset);
      r.number(m, "motion.", "amplitude", ms.amplitude);
      r.number(m, "motion.", "rate", ms.rate);
      r.number(m, "motion.", "eps", ms.eps);
      r.number(m, "motion.", "beta", ms.beta);
      r.number(m, "motion.", "a", ms.a);
      if (ms.preset != "identity" && ms.preset != "radial_dilation" && ms.preset != "collar")
        r.issue("motion.preset: unknown preset '" + ms.preset + "' (identity, radial_dilation, collar)");
      sc.motion = ms;
    }
  }
  if (fp == "motion-derived" && !sc.motion) r.issue("family.preset: 'motion-derived' requires a motion");

  r.number(root, "", "t0", sc.t0);
  sc.T = sc.t0;  // no T means no time stepping
  r.number(root, "", "T", sc.T);
  const bool has_dt = root.contains("dt");
  r.number(root, "", "dt", sc.dt);
  if (!std::isfinite(sc.t0)) r.issue("t0: must be finite");
  if (!std::isfinite(sc.T)) r.issue("T: must be finite");
  if (!(sc.T >= sc.t0)) r.issue("T: must be >= t0");
  if (has_dt && !(sc.dt > 0.0)) r.issue("dt: must be > 0");
  if (!has_dt && sc.T > sc.t0) r.issue("dt: required when T > t0");
  if (sc.dt > 0.0 && sc.T > sc.t0) try_parse(r, "dt", [&] { step_count(sc.t0, sc.T, sc.dt); });

  if (root.contains("scheme")) {
    std::string s;
    r.string(root, "", "scheme", s);
    if (s == "implicit-euler") sc.scheme = Scheme::ImplicitEuler;
    else if (s == "crank-nicolson") sc.scheme = Scheme::CrankNicolson;
    else r.issue("scheme: unknown scheme '" + s + "' (implicit-euler, crank-nicolson)");
  }

  r.string(root, "", "initial", sc.initial);
  try_parse(r, "initial", [&] { parse_spatial_function(sc.initial); });

  if (r.object(root, "forcing")) {
    const json& f = root["forcing"];
    r.check_keys(f, "forcing.", {"limit", "transient", "time_factor"});
    r.string(f, "forcing.", "limit", sc.forcing.limit);
    r.string(f, "forcing.", "transient", sc.forcing.transient);
    r.string(f, "forcing.", "time_factor", sc.forcing.time_factor);
  }
  try_parse(r, "forcing.limit", [&] { parse_spatial_function(sc.forcing.limit); });
  try_parse(r, "forcing.transient", [&] { parse_spatial_function(sc.forcing.transient); });
  try_parse(r, "forcing.time_factor", [&] { parse_time_factor(sc.forcing.time_factor); });

  if (r.object(root, "output")) {
    const json& o = root["output"];
    r.check_keys(o, "output.", {"csv", "vtk", "snapshot_interval", "record_every"});
    r.string(o, "output.", "csv", sc.output.csv);
    r.string(o, "output.", "vtk", sc.output.vtk);
    r.integer(o, "output.", "snapshot_interval", sc.output.snapshot_interval);
    r.integer(o, "output.", "record_every", sc.output.record_every);
  }
  if (sc.output.snapshot_interval < 1) r.issue("output.snapshot_interval: must be >= 1");
  if (sc.output.record_every < 1) r.issue("output.record_every: must be >= 1");

  if (r.object(root, "verify")) {
    const json& v = root["verify"];
    r.check_keys(v, "verify.", {"sectoriality", "holder", "yagi", "adjoint", "coercivity", "motion", "refine",
                                "dist_threshold", "times", "pair_bases", "pair_spacings", "nu", "thetas", "trials"});
    auto& vs = sc.verify;
    r.boolean(v, "verify.", "sectoriality", vs.sectoriality);
    r.boolean(v, "verify.", "holder", vs.holder);
    r.boolean(v, "verify.", "yagi", vs.yagi);
    r.boolean(v, "verify.", "adjoint", vs.adjoint);
    r.boolean(v, "verify.", "coercivity", vs.coercivity);
    r.boolean(v, "verify.", "motion", vs.motion);
    r.boolean(v, "verify.", "refine", vs.refine);
    if (v.contains("dist_threshold")) {
      double d = 0.0;
      r.number(v, "verify.", "dist_threshold", d);
      if (!(d > 0.0)) r.issue("verify.dist_threshold: must be > 0");
      vs.dist_threshold = d;
    }
    r.numbers(v, "verify.", "times", vs.times);
    r.numbers(v, "verify.", "pair_bases", vs.pair_bases);
    r.numbers(v, "verify.", "pair_spacings", vs.pair_spacings);
    r.number(v, "verify.", "nu", vs.nu);
    r.numbers(v, "verify.", "thetas", vs.thetas);
    r.integer(v, "verify.", "trials", vs.trials);
    if (vs.trials < 1) r.issue("verify.trials: must be >= 1");
    for (double th : vs.thetas)
      if (!(th > 0.0 && th < 1.0)) r.issue("verify.thetas: every theta must lie in ]0, 1[");
    for (double s : vs.pair_spacings)
      if (!(s > 0.0)) r.issue("verify.pair_spacings: spacings must be > 0");
    if (vs.motion && !sc.motion) r.issue("verify.motion: requires a motion");
  }
  if (sc.verify.times.empty()) sc.verify.times = {sc.t0, sc.t0 + 1.0, sc.t0 + 10.0, kInfiniteTime};

  if (sc.motion && issues.empty()) {
    try {
      const DomainMotion m = build_motion(*sc.motion);
      if (sc.t0 < m.t_star)
        r.issue("t0: must be >= t_star = " + format_number(m.t_star) + " of motion '" + m.name +
                "' (normal speed |c| <= 0.5 and invertible Jacobian from t_star on)");
    } catch (const Error& e) {
      r.issue(std::string("motion: ") + e.what());
    }
  }

  if (issues.empty()) try_parse(r, "family", [&] { build_family(sc); });
  if (!issues.empty()) throw ScenarioError(std::move(issues));
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.parent_path());
}

std::shared_ptr<const TriMesh> build_mesh(const MeshSpec& spec, const std::filesystem::path& base_dir) {
  if (spec.generator == "disk") return std::make_shared<const TriMesh>(generate_disk_mesh(spec.radius, spec.h));
  if (spec.generator == "square") return std::make_shared<const TriMesh>(generate_square_mesh(spec.side, spec.n));
  if (spec.generator == "file") {
    std::filesystem::path p = spec.file;
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return std::make_shared<const TriMesh>(load_mesh(read_file(p)));
  }
  throw InvalidParameter("unknown mesh generator '" + spec.generator + "'");
}

DomainMotion build_motion(const MotionSpec& spec) {
  if (spec.preset == "identity") return identity_motion();
  if (spec.preset == "radial_dilation") return radial_dilation_exp(spec.amplitude, spec.rate);
  if (spec.preset == "collar") return collar_oscillating(spec.eps, spec.beta, spec.a);
  throw InvalidParameter("unknown motion preset '" + spec.preset + "'");
}

CoefficientFamily build_family(const Scenario& sc) {
  const auto& f = sc.family;
  if (f.preset == "laplace_shift") return preset_laplace_shift(f.lambda);
  if (f.preset == "oscillating") return preset_oscillating(f.lambda, f.eps, f.decay);
  if (f.preset == "advection") return preset_advection(f.lambda, f.beta);
  if (f.preset == "motion-derived") {
    if (!sc.motion) throw InvalidParameter("motion-derived family requires a motion");
    return transformed_family(build_motion(*sc.motion), f.lambda);
  }
  throw InvalidParameter("unknown family preset '" + f.preset + "'");
}

SpaceTimeForcing build_forcing(const ForcingSpec& spec) {
  return {parse_spatial_function(spec.limit), parse_spatial_function(spec.transient),
          parse_time_factor(spec.time_factor)};
}

}  // namespace dynbc
