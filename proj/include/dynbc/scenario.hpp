#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynbc/coeffs.hpp"
#include "dynbc/evolution.hpp"
#include "dynbc/functions.hpp"
#include "dynbc/mesh.hpp"
#include "dynbc/motion.hpp"

namespace dynbc {

struct MeshSpec {
  std::string generator = "disk";  // disk | square | file
  double radius = 1.0;
  double h = 0.1;
  double side = 1.0;
  int n = 8;
  std::string file;
};

struct FamilySpec {
  std::string preset = "laplace_shift";  // laplace_shift | oscillating | advection | motion-derived
  double lambda = -1.0;
  double eps = 0.3;
  double decay = 1.0;
  Vec2 beta = Vec2(0.3, 0.0);
};

struct MotionSpec {
  std::string preset = "identity";  // identity | radial_dilation | collar
  double amplitude = 0.1;
  double rate = 1.0;
  double eps = 0.05;
  double beta = 1.0;
  double a = 1.2;
};

struct ForcingSpec {
  std::string limit = "zero";
  std::string transient = "zero";
  std::string time_factor = "const";
};

struct OutputSpec {
  std::string csv = "series.csv";
  std::string vtk = "snapshot";  // file prefix; empty disables snapshots
  int snapshot_interval = 10;    // steps
  int record_every = 1;          // steps between CSV rows
};

struct VerifySpec {
  bool sectoriality = false;
  bool holder = false;
  bool yagi = false;
  bool adjoint = false;
  bool coercivity = false;
  bool motion = false;
  bool refine = false;  // repeat the sectoriality sweep on the h/2 mesh
  std::optional<double> dist_threshold;
  std::vector<double> times;       // sectoriality / coercivity / motion sample times
  std::vector<double> pair_bases{0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> pair_spacings{0.1, 0.05};
  double nu = 0.4;
  std::vector<double> thetas{0.25, 0.5, 0.75};
  int trials = 20;
};

struct Scenario {
  MeshSpec mesh;
  FamilySpec family;
  std::optional<MotionSpec> motion;
  double t0 = 0.0;
  double T = 0.0;
  double dt = 0.0;
  Scheme scheme = Scheme::ImplicitEuler;
  std::string initial = "zero";
  ForcingSpec forcing;
  OutputSpec output;
  VerifySpec verify;
  std::filesystem::path base_dir;  // relative mesh files resolve against it
};

/// Parses and validates a JSON scenario; throws ScenarioError listing every
/// violated field.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

std::shared_ptr<const TriMesh> build_mesh(const MeshSpec& spec, const std::filesystem::path& base_dir = {});
DomainMotion build_motion(const MotionSpec& spec);
CoefficientFamily build_family(const Scenario& scenario);
SpaceTimeForcing build_forcing(const ForcingSpec& spec);

std::string_view scheme_name(Scheme s);

}  // namespace dynbc
