#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "dynbc/errors.hpp"
#include "dynbc/functions.hpp"
#include "dynbc/io.hpp"
#include "dynbc/scenario.hpp"

using namespace dynbc;

namespace {

std::vector<std::string> issues_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("minimal scenario gets defaults") {
  const Scenario sc = parse_scenario("{}");
  CHECK(sc.mesh.generator == "disk");
  CHECK(sc.family.preset == "laplace_shift");
  CHECK(sc.family.lambda == -1.0);
  CHECK_FALSE(sc.motion.has_value());
  CHECK(sc.scheme == Scheme::ImplicitEuler);
  CHECK(scheme_name(sc.scheme) == "implicit-euler");
  CHECK(sc.output.snapshot_interval == 10);
  CHECK(sc.output.record_every == 1);
  CHECK(sc.output.csv == "series.csv");
  CHECK(sc.t0 == 0.0);
  CHECK(sc.T == 0.0);
  REQUIRE(sc.verify.times.size() == 4);
  CHECK(sc.verify.times[2] == 10.0);
  CHECK(is_infinite_time(sc.verify.times[3]));
}

TEST_CASE("full scenario round trip") {
  const Scenario sc = parse_scenario(R"({
    "mesh": {"generator": "square", "side": 2, "n": 4},
    "family": {"preset": "oscillating", "lambda": -2, "eps": 0.4, "decay": 0.5},
    "t0": 1, "T": 3, "dt": 0.5, "scheme": "crank-nicolson",
    "initial": "cos_theta + const:1",
    "forcing": {"limit": "x", "transient": "y", "time_factor": "decay_exp:2"},
    "output": {"csv": "a.csv", "vtk": "", "snapshot_interval": 2, "record_every": 3},
    "verify": {"sectoriality": true, "times": [1, "inf"], "nu": 0.3, "dist_threshold": 0.01}
  })");
  CHECK(sc.mesh.generator == "square");
  CHECK(sc.mesh.n == 4);
  CHECK(sc.family.eps == 0.4);
  CHECK(sc.scheme == Scheme::CrankNicolson);
  CHECK(sc.output.vtk.empty());
  CHECK(sc.output.record_every == 3);
  CHECK(sc.verify.sectoriality);
  CHECK_FALSE(sc.verify.holder);
  REQUIRE(sc.verify.times.size() == 2);
  CHECK(is_infinite_time(sc.verify.times[1]));
  CHECK(sc.verify.dist_threshold.value() == 0.01);
  const auto mesh = build_mesh(sc.mesh);
  CHECK(total_area(*mesh) == 4.0);
  const auto fam = build_family(sc);
  CHECK(fam.name == "oscillating");
  const auto forcing = build_forcing(sc.forcing);
  CHECK(forcing(0.0, Point(0.5, 0.25)) == doctest::Approx(0.75));
  CHECK(forcing(1.0, Point(0.5, 0.25)) == doctest::Approx(0.5 + std::exp(-2.0) * 0.25));
}

TEST_CASE("dt validation names dt") {
  CHECK(mentions(issues_of(R"({"T": 1, "dt": 0})"), "dt"));
  CHECK(mentions(issues_of(R"({"T": 1, "dt": -0.1})"), "dt"));
  CHECK(mentions(issues_of(R"({"T": 1})"), "dt"));
  CHECK(issues_of(R"({"T": 0})").empty());
  CHECK(mentions(issues_of(R"({"t0": 2, "T": 1, "dt": 0.1})"), "T"));
}

TEST_CASE("motion start before t_star is rejected") {
  const auto issues =
      issues_of(R"({"motion": {"preset": "radial_dilation", "amplitude": 2, "rate": 1}, "t0": 0})");
  CHECK(mentions(issues, "t_star"));
  CHECK(issues_of(R"({"motion": {"preset": "radial_dilation", "amplitude": 2, "rate": 1}, "t0": 1.5,
                      "family": {"preset": "motion-derived"}})")
            .empty());
  CHECK(mentions(issues_of(R"({"motion": {"preset": "collar", "eps": 0.5}, "t0": 1})"), "t_star"));
}

TEST_CASE("unknown names and fields are reported together") {
  const auto issues = issues_of(R"({
    "family": {"preset": "wobbly"},
    "motion": {"preset": "twist"},
    "scheme": "leapfrog",
    "mesh": {"generator": "torus", "colour": "red"},
    "initial": "sinh",
    "extra": 1
  })");
  CHECK(mentions(issues, "family.preset"));
  CHECK(mentions(issues, "motion.preset"));
  CHECK(mentions(issues, "scheme"));
  CHECK(mentions(issues, "mesh.generator"));
  CHECK(mentions(issues, "mesh.colour"));
  CHECK(mentions(issues, "initial"));
  CHECK(mentions(issues, "extra"));
  CHECK(issues.size() >= 7);
}

TEST_CASE("family parameters are validated") {
  CHECK(mentions(issues_of(R"({"family": {"lambda": 1}})"), "family.lambda"));
  CHECK(mentions(issues_of(R"({"family": {"preset": "oscillating", "eps": 1.5}})"), "family"));
  CHECK(mentions(issues_of(R"({"family": {"preset": "motion-derived"}})"), "motion"));
  CHECK(mentions(issues_of(R"({"verify": {"thetas": [0.5, 1.0]}})"), "verify.thetas"));
  CHECK(mentions(issues_of(R"({"verify": {"motion": true}})"), "verify.motion"));
  CHECK(mentions(issues_of(R"({"mesh": {"h": "fine"}})"), "mesh.h"));
  CHECK_THROWS_AS(parse_scenario("{ not json"), ScenarioError);
}

TEST_CASE("relative mesh files resolve against the scenario directory") {
  const auto dir = std::filesystem::temp_directory_path() / "dynbc_scenario_test";
  std::filesystem::create_directories(dir);
  write_file(dir / "tri.txt", save_mesh(generate_square_mesh(1.0, 2)));
  write_file(dir / "s.json", R"({"mesh": {"generator": "file", "file": "tri.txt"}})");
  const Scenario sc = load_scenario(dir / "s.json");
  CHECK(build_mesh(sc.mesh, sc.base_dir)->num_vertices() == 9);
  std::filesystem::remove_all(dir);
}

TEST_CASE("named spatial functions and time factors") {
  const Point p(0.0, 2.0);
  CHECK(parse_spatial_function("zero")(p) == 0.0);
  CHECK(parse_spatial_function("const:2.5")(p) == 2.5);
  CHECK(parse_spatial_function("x")(p) == 0.0);
  CHECK(parse_spatial_function("y")(p) == 2.0);
  CHECK(parse_spatial_function("radius_sq")(p) == 4.0);
  CHECK(parse_spatial_function("sin_theta")(p) == doctest::Approx(1.0));
  CHECK(parse_spatial_function("cos_theta")(p) == doctest::Approx(0.0));
  CHECK(parse_spatial_function("cos_ktheta:2")(p) == doctest::Approx(-1.0));
  CHECK(parse_spatial_function("x + y + const:1")(Point(1.0, 2.0)) == 4.0);
  CHECK_THROWS(parse_spatial_function("cosh"));
  CHECK(parse_time_factor("const")(5.0) == 1.0);
  CHECK(parse_time_factor("zero")(5.0) == 0.0);
  CHECK(parse_time_factor("decay_exp:0.5")(2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS(parse_time_factor("grow"));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-12) == "-2.5e-12");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(kInfiniteTime) == "inf");
  CHECK(format_number(-kInfiniteTime) == "-inf");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("VTK output") {
  const TriMesh m = generate_square_mesh(1.0, 1);
  std::ostringstream out;
  write_vtk(out, m, {}, "u", Vector::Ones(m.num_vertices()));
  const std::string s = out.str();
  CHECK(s.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(s.find("POINTS 4") != std::string::npos);
  CHECK(s.find("CELLS 2 8") != std::string::npos);
  CHECK(s.find("SCALARS u") != std::string::npos);
}
