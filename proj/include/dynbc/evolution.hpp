#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "dynbc/coeffs.hpp"
#include "dynbc/elliptic.hpp"
#include "dynbc/mesh.hpp"

namespace dynbc {

enum class Scheme { ImplicitEuler, CrankNicolson };

/// One-step maps for du/dt + A(t) u = f(t) on the boundary. Each step is a
/// single bulk solve with the shifted form a_{t,lambda}, lambda = -1/dt
/// (implicit Euler) or -2/dt (Crank-Nicolson). Factorizations are cached per
/// (t, shift); for time-constant families the time is ignored in the key.
class TimeStepper {
 public:
  struct Step {
    BoundaryField boundary;
    Vector bulk;  // discretely harmonic representative at the new time
  };

  TimeStepper(std::shared_ptr<const TriMesh> mesh, CoefficientFamily family);

  /// u_{n+1} = (A(t_next) + 1/dt)^{-1} (M u_n / dt + f_next).
  Step implicit_euler(const BoundaryField& u_n, double t_next, double dt, const BoundaryDual& f_next);

  /// (M/dt + A(t_next)/2) u_{n+1} = (M/dt - A(t_n)/2) u_n + f_mid.
  Step crank_nicolson(const BoundaryField& u_n, double t_n, double t_next, double dt,
                      const BoundaryDual& f_mid);

  /// A(t) g as a boundary dual.
  BoundaryDual apply_dtn(double t, const BoundaryField& g);
  Vector harmonic_extension(double t, const BoundaryField& g);

  const SparseMatrix& boundary_mass() const { return Mb_; }
  const TriMesh& mesh() const { return *mesh_; }

 private:
  const BlockSystem<double>& system(double t, double shift);

  struct CacheEntry {
    double t;
    double shift;
    std::shared_ptr<BlockSystem<double>> system;
  };

  std::shared_ptr<const TriMesh> mesh_;
  CoefficientFamily family_;
  SparseMatrix Mb_;
  SparseMatrix Mbulk_;
  std::vector<CacheEntry> cache_;
};

BoundaryField step_implicit_euler(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                  const BoundaryField& u_n, double t_next, double dt,
                                  const BoundaryDual& f_next);
BoundaryField step_crank_nicolson(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                  const BoundaryField& u_n, double t_n, double t_next, double dt,
                                  const BoundaryDual& f_mid);

using Forcing = std::function<BoundaryDual(double t)>;

struct StationarySolution {
  BoundaryField boundary;
  Vector bulk;
};

/// u_inf with A(inf) u_inf = f_inf.
StationarySolution stationary_solve(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                    const BoundaryDual& f_inf);

struct EvolutionProblem {
  std::shared_ptr<const TriMesh> mesh;
  CoefficientFamily family;
  BoundaryField u0;
  Forcing forcing;  // empty means f = 0
  double t0 = 0.0;
  double T = 0.0;
  double dt = 0.0;
  Scheme scheme = Scheme::ImplicitEuler;
  int record_every = 1;
  std::optional<StationarySolution> u_inf;  // enables dist_h1_to_uinf
};

struct EvolutionRecord {
  double t = 0.0;
  int step = 0;
  BoundaryField u;
  Vector bulk;
  double l2_boundary = 0.0;
  double h1_bulk = 0.0;
  double dist_h1 = std::numeric_limits<double>::quiet_NaN();
};

struct EvolutionSeries {
  std::vector<EvolutionRecord> records;
};

/// Number of uniform steps covering [t0, T]; throws InvalidParameter when
/// dt does not divide T - t0.
int step_count(double t0, double T, double dt);

/// Observer called after each completed step (index, time, state).
using StepObserver = std::function<void(int, double, const TimeStepper::Step&)>;

EvolutionSeries run_evolution(const EvolutionProblem& problem, const StepObserver& observer = {});

/// (t, ||U(t) - U_inf||_{H^1}) for every record.
std::vector<std::pair<double, double>> asymptotic_report(const EvolutionSeries& series,
                                                         const StationarySolution& u_inf,
                                                         const SparseMatrix& h1_gram);

/// Header t,u_l2_boundary,u_h1_bulk,dist_h1_to_uinf; one row per record.
void write_series_csv(std::ostream& out, const EvolutionSeries& series);

double boundary_l2_norm(const SparseMatrix& Mb, const Vector& u);
double energy_norm(const SparseMatrix& G, const Vector& u);

}  // namespace dynbc
