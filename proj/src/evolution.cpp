#include "dynbc/evolution.hpp"

#include <cmath>
#include <ostream>

#include "dynbc/assembly.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/io.hpp"

namespace dynbc {

TimeStepper::TimeStepper(std::shared_ptr<const TriMesh> mesh, CoefficientFamily family)
    : mesh_(std::move(mesh)), family_(std::move(family)) {
  Mb_ = assemble_boundary_mass(*mesh_).matrix;
  Mbulk_ = boundary_mass_bulk(*mesh_);
}

const BlockSystem<double>& TimeStepper::system(double t, double shift) {
  const double key_t = family_.time_constant ? 0.0 : t;
  for (const auto& e : cache_)
    if (e.t == key_t && e.shift == shift) return *e.system;
  SparseMatrix A = assemble_form(*mesh_, family_, t).matrix;
  if (shift != 0.0) A += shift * Mbulk_;
  constexpr std::size_t kCacheSize = 4;
  if (cache_.size() == kCacheSize) cache_.erase(cache_.begin());
  cache_.push_back({key_t, shift, std::make_shared<BlockSystem<double>>(mesh_, std::move(A))});
  return *cache_.back().system;
}

Vector TimeStepper::harmonic_extension(double t, const BoundaryField& g) {
  return system(t, 0.0).solve_dirichlet(g.values);
}

BoundaryDual TimeStepper::apply_dtn(double t, const BoundaryField& g) {
  const auto& sys = system(t, 0.0);
  return BoundaryDual(sys.boundary_rows(sys.solve_dirichlet(g.values)));
}

TimeStepper::Step TimeStepper::implicit_euler(const BoundaryField& u_n, double t_next, double dt,
                                              const BoundaryDual& f_next) {
  if (!(dt > 0.0)) throw InvalidParameter("implicit Euler: dt must be > 0");
  const Vector rhs = Mb_ * u_n.values / dt + f_next.values;
  const auto& sys = system(t_next, 1.0 / dt);
  Vector U = sys.solve_full(embed_k(*mesh_, BoundaryDual(rhs)));
  return {trace(*mesh_, U), std::move(U)};
}

TimeStepper::Step TimeStepper::crank_nicolson(const BoundaryField& u_n, double t_n, double t_next,
                                              double dt, const BoundaryDual& f_mid) {
  if (!(dt > 0.0)) throw InvalidParameter("Crank-Nicolson: dt must be > 0");
  const Vector explicit_part = apply_dtn(t_n, u_n).values;
  const Vector rhs = (2.0 / dt) * (Mb_ * u_n.values) - explicit_part + 2.0 * f_mid.values;
  const auto& sys = system(t_next, 2.0 / dt);
  Vector U = sys.solve_full(embed_k(*mesh_, BoundaryDual(rhs)));
  return {trace(*mesh_, U), std::move(U)};
}

BoundaryField step_implicit_euler(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                  const BoundaryField& u_n, double t_next, double dt,
                                  const BoundaryDual& f_next) {
  TimeStepper stepper(std::move(mesh), family);
  return stepper.implicit_euler(u_n, t_next, dt, f_next).boundary;
}

BoundaryField step_crank_nicolson(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                  const BoundaryField& u_n, double t_n, double t_next, double dt,
                                  const BoundaryDual& f_mid) {
  TimeStepper stepper(std::move(mesh), family);
  return stepper.crank_nicolson(u_n, t_n, t_next, dt, f_mid).boundary;
}

StationarySolution stationary_solve(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                    const BoundaryDual& f_inf) {
  const RealOperator K = assemble_form(*mesh, family, kInfiniteTime);
  Vector U = solve_neumann(mesh, K, f_inf);
  return {trace(*mesh, U), std::move(U)};
}

double boundary_l2_norm(const SparseMatrix& Mb, const Vector& u) {
  return std::sqrt(std::max(0.0, u.dot(Mb * u)));
}

double energy_norm(const SparseMatrix& G, const Vector& u) {
  return std::sqrt(std::max(0.0, u.dot(G * u)));
}

int step_count(double t0, double T, double dt) {
  if (!(T >= t0)) throw InvalidParameter("T must be >= t0");
  if (T == t0) return 0;  // dt is unused without steps
  if (!(dt > 0.0)) throw InvalidParameter("dt must be > 0");
  const double exact = (T - t0) / dt;
  const double n = std::round(exact);
  if (std::abs(n - exact) > 1e-9 * std::max(1.0, exact))
    throw InvalidParameter("dt must divide T - t0 into a whole number of steps");
  return static_cast<int>(n);
}

EvolutionSeries run_evolution(const EvolutionProblem& p, const StepObserver& observer) {
  const int n_steps = step_count(p.t0, p.T, p.dt);
  if (p.record_every < 1) throw InvalidParameter("record_every must be >= 1");
  const TriMesh& mesh = *p.mesh;
  if (p.u0.size() != mesh.num_boundary()) throw InvalidParameter("initial data has wrong length");

  TimeStepper stepper(p.mesh, p.family);
  const SparseMatrix G = assemble_h1_gram(mesh).matrix;
  const auto forcing = [&](double t) {
    return p.forcing ? p.forcing(t) : BoundaryDual(Vector::Zero(mesh.num_boundary()));
  };

  EvolutionSeries series;
  auto record = [&](int step, double t, const BoundaryField& u, Vector bulk) {
    EvolutionRecord r;
    r.t = t;
    r.step = step;
    r.u = u;
    r.l2_boundary = boundary_l2_norm(stepper.boundary_mass(), u.values);
    r.h1_bulk = energy_norm(G, bulk);
    if (p.u_inf) r.dist_h1 = energy_norm(G, bulk - p.u_inf->bulk);
    r.bulk = std::move(bulk);
    series.records.push_back(std::move(r));
  };

  record(0, p.t0, p.u0, stepper.harmonic_extension(p.t0, p.u0));
  BoundaryField u = p.u0;
  for (int n = 0; n < n_steps; ++n) {
    const double t_n = p.t0 + n * p.dt;
    const double t_next = n + 1 == n_steps ? p.T : p.t0 + (n + 1) * p.dt;
    TimeStepper::Step step;
    try {
      step = p.scheme == Scheme::ImplicitEuler
                 ? stepper.implicit_euler(u, t_next, p.dt, forcing(t_next))
                 : stepper.crank_nicolson(u, t_n, t_next, p.dt, forcing(t_n + 0.5 * p.dt));
    } catch (const std::exception& ex) {
      throw SolverError("evolution step " + std::to_string(n + 1) + " (t = " + std::to_string(t_next) +
                        ") failed: " + ex.what());
    }
    if (observer) observer(n + 1, t_next, step);
    u = step.boundary;
    if ((n + 1) % p.record_every == 0 || n + 1 == n_steps) record(n + 1, t_next, u, std::move(step.bulk));
  }
  return series;
}

std::vector<std::pair<double, double>> asymptotic_report(const EvolutionSeries& series,
                                                         const StationarySolution& u_inf,
                                                         const SparseMatrix& h1_gram) {
  std::vector<std::pair<double, double>> table;
  table.reserve(series.records.size());
  for (const auto& r : series.records) {
    if (r.bulk.size() != u_inf.bulk.size())
      throw InvalidParameter("asymptotic_report: series and u_inf live on different meshes");
    table.emplace_back(r.t, energy_norm(h1_gram, r.bulk - u_inf.bulk));
  }
  return table;
}

void write_series_csv(std::ostream& out, const EvolutionSeries& series) {
  out << "t,u_l2_boundary,u_h1_bulk,dist_h1_to_uinf\n";
  for (const auto& r : series.records)
    out << format_number(r.t) << ',' << format_number(r.l2_boundary) << ',' << format_number(r.h1_bulk)
        << ',' << format_number(r.dist_h1) << '\n';
}

}  // namespace dynbc
