#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "dynbc/scenario.hpp"

namespace dynbc {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Exit codes: 0 all enabled checks passed, 1 a check failed. Errors throw.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

/// Cylindrical evolution: series CSV, VTK snapshots, summary.json and
/// metrics.json, followed by every enabled verification.
int run_evolve(const Scenario& scenario, const RunOptions& options);

/// Evolution of the pulled-back problem; snapshots carry the moved vertices.
int run_noncyl_evolve(const Scenario& scenario, const RunOptions& options);

/// Dispatches to run_noncyl_evolve when the family is motion-derived.
int run_scenario(const Scenario& scenario, const RunOptions& options);

/// u_inf for the declared forcing limit.
int run_stationary(const Scenario& scenario, const RunOptions& options);

/// Dense DtN matrix at t0 and the boundary mass matrix as CSV.
int run_dtn_matrix(const Scenario& scenario, const RunOptions& options);

/// One verification by name (sectoriality, holder, yagi, adjoint,
/// coercivity, motion) regardless of the scenario toggles.
int run_verify(const Scenario& scenario, std::string_view check, const RunOptions& options);

/// CSV table k,mu_k for k = 0..kmax.
void write_oracle_disk(std::ostream& out, double lambda, int kmax);

}  // namespace dynbc
