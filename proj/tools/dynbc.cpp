// Command-line entry point: one scenario per invocation.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "dynbc/app.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/io.hpp"
#include "dynbc/log.hpp"
#include "dynbc/mesh.hpp"

namespace {

dynbc::Scenario require_scenario(const std::string& config) {
  if (config.empty()) throw dynbc::InvalidParameter("this subcommand needs --config <scenario.json>");
  return dynbc::load_scenario(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet-to-Neumann evolution toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config;
  dynbc::RunOptions opts;
  std::string out_dir = "out";
  app.add_option("--config", config, "Scenario JSON file");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", opts.seed, "Seed for random trial vectors");
  app.add_option("--threads", opts.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  auto* mesh = app.add_subcommand("mesh", "Generate or check meshes");
  mesh->require_subcommand(1);
  auto* mesh_gen = mesh->add_subcommand("gen", "Generate a mesh file");
  dynbc::MeshSpec gen_spec;
  std::string gen_name = "mesh.txt";
  mesh_gen->add_option("--generator", gen_spec.generator, "disk | square")->check(CLI::IsMember({"disk", "square"}));
  mesh_gen->add_option("--radius", gen_spec.radius, "Disk radius");
  mesh_gen->add_option("--mesh-h", gen_spec.h, "Target edge length (disk)");
  mesh_gen->add_option("--side", gen_spec.side, "Square side");
  mesh_gen->add_option("--n", gen_spec.n, "Cells per side (square)");
  mesh_gen->add_option("--name", gen_name, "Output file name inside --out");
  auto* mesh_check = mesh->add_subcommand("check", "Validate a mesh file");
  std::string check_file;
  mesh_check->add_option("file", check_file, "Mesh file")->required();

  auto* dtn = app.add_subcommand("dtn-matrix", "Dense DtN matrix at t0");
  auto* evolve = app.add_subcommand("evolve", "Cylindrical evolution");
  auto* noncyl = app.add_subcommand("noncyl-evolve", "Evolution on a moving domain");
  auto* stationary = app.add_subcommand("stationary", "Stationary limit solve");

  auto* oracle = app.add_subcommand("oracle", "Analytic references");
  oracle->require_subcommand(1);
  auto* oracle_disk = oracle->add_subcommand("disk", "Disk DtN eigenvalues");
  double lambda = -1.0;
  int kmax = 10;
  oracle_disk->add_option("--lambda", lambda, "Spectral shift (< 0)");
  oracle_disk->add_option("--kmax", kmax, "Largest mode");

  auto* verify = app.add_subcommand("verify", "Operator hypothesis checks");
  verify->require_subcommand(1);
  for (const char* name : {"sectoriality", "holder", "yagi", "adjoint", "coercivity", "motion"})
    verify->add_subcommand(name, std::string("Run the ") + name + " check");

  CLI11_PARSE(app, argc, argv);
  opts.out_dir = out_dir;

  try {
    if (mesh_gen->parsed()) {
      if (!config.empty()) gen_spec = require_scenario(config).mesh;
      const auto m = dynbc::build_mesh(gen_spec);
      dynbc::write_file(opts.out_dir / gen_name, dynbc::save_mesh(*m));
      std::cout << "vertices " << m->num_vertices() << " triangles " << m->num_triangles() << " boundary "
                << m->num_boundary() << '\n';
      return dynbc::kExitOk;
    }
    if (mesh_check->parsed()) {
      try {
        const auto m = dynbc::load_mesh(dynbc::read_file(check_file));
        std::cout << "ok vertices " << m.num_vertices() << " triangles " << m.num_triangles() << " boundary "
                  << m.num_boundary() << " area " << dynbc::format_number(dynbc::total_area(m))
                  << " max_edge " << dynbc::format_number(dynbc::max_edge_length(m)) << '\n';
        return dynbc::kExitOk;
      } catch (const dynbc::ValidationError& e) {
        std::cout << "invalid " << e.invariant() << ": " << e.what() << '\n';
        return dynbc::kExitCheckFailed;
      }
    }
    if (oracle_disk->parsed()) {
      dynbc::write_oracle_disk(std::cout, lambda, kmax);
      return dynbc::kExitOk;
    }
    if (dtn->parsed()) return dynbc::run_dtn_matrix(require_scenario(config), opts);
    if (evolve->parsed()) return dynbc::run_evolve(require_scenario(config), opts);
    if (noncyl->parsed()) return dynbc::run_noncyl_evolve(require_scenario(config), opts);
    if (stationary->parsed()) return dynbc::run_stationary(require_scenario(config), opts);
    for (auto* sub : verify->get_subcommands({}))
      if (sub->parsed()) return dynbc::run_verify(require_scenario(config), sub->get_name(), opts);
  } catch (const dynbc::ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dynbc::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dynbc::kExitError;
  }
  return dynbc::kExitError;
}
