#include "dynbc/app.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dynbc/assembly.hpp"
#include "dynbc/config.hpp"
#include "dynbc/dtn.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/evolution.hpp"
#include "dynbc/io.hpp"
#include "dynbc/log.hpp"
#include "dynbc/oracle.hpp"
#include "dynbc/verify.hpp"

namespace dynbc {

using nlohmann::ordered_json;

namespace {

std::string time_label(double t) { return is_infinite_time(t) ? "inf" : format_number(t); }

// Accumulates check flags and metrics for one invocation and writes them on exit.
class Session {
 public:
  Session(const Scenario& sc, const RunOptions& opts)
      : sc_(sc), opts_(opts), mesh_(build_mesh(sc.mesh, sc.base_dir)), family_(build_family(sc)) {}

  const Scenario& scenario() const { return sc_; }
  const RunOptions& options() const { return opts_; }
  const std::shared_ptr<const TriMesh>& mesh() const { return mesh_; }
  const CoefficientFamily& family() const { return family_; }

  void check(const std::string& name, bool ok) {
    checks_[name] = ok;
    if (!ok) log::warn("check '" + name + "' failed");
  }
  ordered_json& metrics() { return metrics_; }

  void write_output(const std::string& name, const std::string& content) const {
    write_file(opts_.out_dir / name, content);
  }

  // Runs `fn`; an exception marks `name` as failed and is recorded.
  template <class Fn>
  void guarded(const std::string& name, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      metrics_["errors"][name] = e.what();
      check(name, false);
    }
  }

  int finish() const {
    ordered_json summary = ordered_json::object();
    bool ok = true;
    for (const auto& [name, pass] : checks_) {
      summary[name] = pass;
      ok = ok && pass;
    }
    write_output("summary.json", summary.dump(2) + "\n");
    write_output("metrics.json", metrics_.dump(2) + "\n");
    return ok ? kExitOk : kExitCheckFailed;
  }

 private:
  const Scenario& sc_;
  const RunOptions& opts_;
  std::shared_ptr<const TriMesh> mesh_;
  CoefficientFamily family_;
  std::map<std::string, bool> checks_;
  ordered_json metrics_ = ordered_json::object();
};

std::shared_ptr<const TriMesh> refined_mesh(const MeshSpec& spec, const std::filesystem::path& base_dir) {
  MeshSpec fine = spec;
  if (spec.generator == "disk") fine.h = spec.h / 2.0;
  else if (spec.generator == "square") fine.n = spec.n * 2;
  else throw InvalidParameter("refinement needs a generated mesh");
  return build_mesh(fine, base_dir);
}

void verify_sectoriality(Session& s) {
  const auto& sc = s.scenario();
  const auto grid = default_lambda_grid();
  auto sweep_sups = [&](const std::shared_ptr<const TriMesh>& mesh, std::ostringstream* table) {
    const NormSystem norms = build_norm_system(mesh);
    std::map<std::string, double> sups;
    for (double t : sc.verify.times) {
      const DtnOperator op(mesh, s.family(), t);
      const BoundaryPencil pencil = boundary_pencil(op);
      for (NormKind kind : {NormKind::L2, NormKind::HMinusHalf}) {
        const std::string norm = kind == NormKind::L2 ? "l2" : "h-1/2";
        const auto res = sectoriality_sweep(pencil, norms, grid, kind, s.options().threads);
        if (table)
          for (const auto& e : res.table)
            *table << time_label(t) << ',' << norm << ',' << format_number(e.lambda.real()) << ','
                   << format_number(e.lambda.imag()) << ',' << format_number(e.value) << '\n';
        sups[time_label(t) + "/" + norm] = res.sup;
      }
    }
    return sups;
  };

  std::ostringstream table;
  table << "t,norm,re_lambda,im_lambda,value\n";
  const auto sups = sweep_sups(s.mesh(), &table);
  s.write_output("sectoriality.csv", table.str());
  bool finite = true;
  for (const auto& [key, v] : sups) {
    s.metrics()["sectoriality"]["sup"][key] = v;
    finite = finite && std::isfinite(v);
  }
  s.check("sectoriality_finite", finite);

  if (sc.verify.refine) {
    const auto fine = sweep_sups(refined_mesh(sc.mesh, sc.base_dir), nullptr);
    double worst = 0.0;
    for (const auto& [key, v] : fine) {
      s.metrics()["sectoriality"]["sup_refined"][key] = v;
      worst = std::max(worst, relative_change(v, sups.at(key)));
    }
    s.metrics()["sectoriality"]["max_refinement_change"] = worst;
    s.check("sectoriality_refinement", worst <= config::kSectorialityRefinementTol);
  }
}

void write_pairs(std::ostringstream& out, double spacing, const std::vector<PairValue>& table) {
  for (const auto& p : table)
    out << format_number(spacing) << ',' << format_number(p.t) << ',' << format_number(p.s) << ','
        << format_number(p.value) << '\n';
}

void verify_holder(Session& s) {
  const auto& v = s.scenario().verify;
  std::ostringstream table;
  table << "spacing,t,s,value\n";
  std::vector<double> sups;
  for (double spacing : v.pair_spacings) {
    const auto pairs = spaced_pairs(v.pair_bases, spacing);
    const auto est = operator_holder_estimate(s.mesh(), s.family(), pairs, s.family().alpha);
    write_pairs(table, spacing, est.table);
    sups.push_back(est.sup);
    s.metrics()["holder"]["sup"][format_number(spacing)] = est.sup;
  }
  s.write_output("holder.csv", table.str());
  bool ok = !sups.empty();
  for (double a : sups)
    for (double b : sups) ok = ok && std::isfinite(a) && relative_change(a, b) <= config::kHolderSpacingTol;
  s.check("holder", ok);
}

void verify_yagi(Session& s) {
  const auto& v = s.scenario().verify;
  const auto res = yagi_condition_check(s.mesh(), s.family(), v.nu, s.family().alpha, v.pair_bases,
                                        v.pair_spacings);
  std::ostringstream table;
  table << "t,s,value\n";
  for (const auto& p : res.table)
    table << format_number(p.t) << ',' << format_number(p.s) << ',' << format_number(p.value) << '\n';
  s.write_output("yagi.csv", table.str());
  for (std::size_t i = 0; i < res.spacings.size(); ++i)
    s.metrics()["yagi"]["sup"][format_number(res.spacings[i])] = res.sups[i];
  s.check("yagi", res.pass);
}

void verify_adjoint(Session& s) {
  const auto& v = s.scenario().verify;
  const DtnOperator op(s.mesh(), s.family(), s.scenario().t0);
  std::ostringstream table;
  table << "theta,max_discrepancy\n";
  bool ok = true;
  for (double theta : v.thetas) {
    const double d = adjoint_fractional_identity_check(op, theta, v.trials, s.options().seed);
    table << format_number(theta) << ',' << format_number(d) << '\n';
    ok = ok && d <= 1e-6;
  }
  s.write_output("adjoint.csv", table.str());
  s.check("adjoint", ok);
}

void verify_coercivity(Session& s) {
  std::ostringstream table;
  table << "t,coercivity\n";
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (double t : s.scenario().verify.times) {
    const double c = coercivity_constant(*s.mesh(), s.family(), t);
    table << time_label(t) << ',' << format_number(c) << '\n';
    worst = std::min(worst, c);
    ok = ok && c >= s.family().coercivity_floor;
  }
  s.write_output("coercivity.csv", table.str());
  s.metrics()["coercivity"]["min"] = worst;
  s.metrics()["coercivity"]["floor"] = s.family().coercivity_floor;
  s.check("coercivity", ok);
}

void verify_motion(Session& s) {
  const auto& sc = s.scenario();
  if (!sc.motion) throw InvalidParameter("verify motion: scenario has no motion");
  std::vector<double> times;
  for (double t : sc.verify.times)
    if (std::isfinite(t)) times.push_back(t);
  const MotionReport rep = verify_motion_assumptions(build_motion(*sc.motion), times);
  std::ostringstream table;
  table << "t,jac_deviation,dh_dt,c,normal_residual,min_det,min_N\n";
  for (const auto& m : rep.samples)
    table << format_number(m.t) << ',' << format_number(m.jac_deviation) << ',' << format_number(m.dh_dt) << ','
          << format_number(m.c) << ',' << format_number(m.normal_residual) << ',' << format_number(m.min_det)
          << ',' << format_number(m.min_N) << '\n';
  s.write_output("motion.csv", table.str());
  auto& mm = s.metrics()["motion"];
  mm["max_jac_deviation"] = rep.max_jac_deviation;
  mm["max_second_difference"] = rep.max_second_difference;
  mm["max_dh_dt"] = rep.max_dh_dt;
  mm["max_abs_c"] = rep.max_abs_c;
  mm["max_normal_residual"] = rep.max_normal_residual;
  mm["holder_h"] = rep.holder_h;
  mm["holder_dh_dt"] = rep.holder_dh_dt;
  mm["failures"] = rep.failures;
  s.check("motion", rep.passed());
}

void run_named_check(Session& s, std::string_view check) {
  const std::string name(check);
  if (check == "sectoriality") s.guarded("sectoriality_finite", [&] { verify_sectoriality(s); });
  else if (check == "holder") s.guarded(name, [&] { verify_holder(s); });
  else if (check == "yagi") s.guarded(name, [&] { verify_yagi(s); });
  else if (check == "adjoint") s.guarded(name, [&] { verify_adjoint(s); });
  else if (check == "coercivity") s.guarded(name, [&] { verify_coercivity(s); });
  else if (check == "motion") s.guarded(name, [&] { verify_motion(s); });
  else throw InvalidParameter("unknown verification '" + name + "'");
}

void run_enabled_checks(Session& s) {
  const auto& v = s.scenario().verify;
  if (v.sectoriality) run_named_check(s, "sectoriality");
  if (v.holder) run_named_check(s, "holder");
  if (v.yagi) run_named_check(s, "yagi");
  if (v.adjoint) run_named_check(s, "adjoint");
  if (v.coercivity) run_named_check(s, "coercivity");
  if (v.motion) run_named_check(s, "motion");
}

std::string snapshot_name(const std::string& prefix, int step) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06d", step);
  return "vtk/" + prefix + "_" + buf + ".vtk";
}

int evolve(const Scenario& sc, const RunOptions& opts, bool noncyl) {
  if (noncyl != (sc.family.preset == "motion-derived"))
    throw InvalidParameter(noncyl ? "noncyl-evolve needs family preset 'motion-derived' and a motion"
                                  : "family 'motion-derived' runs through noncyl-evolve");
  Session s(sc, opts);
  const TriMesh& mesh = *s.mesh();
  const SpatialFunction initial = parse_spatial_function(sc.initial);
  const SpaceTimeForcing forcing = build_forcing(sc.forcing);
  const SparseMatrix Mb = assemble_boundary_mass(mesh).matrix;
  std::optional<DomainMotion> motion;
  if (noncyl) motion = build_motion(*sc.motion);

  EvolutionProblem p;
  p.mesh = s.mesh();
  p.family = s.family();
  p.t0 = sc.t0;
  p.T = sc.T;
  p.dt = sc.T > sc.t0 ? sc.dt : 1.0;
  p.scheme = sc.scheme;
  p.record_every = sc.output.record_every;
  if (motion) {
    p.u0 = sample_boundary(mesh, [&](const Point& y) { return initial(motion->h(sc.t0, y)); });
    p.forcing = [&](double t) { return pullback_boundary_data(*motion, mesh, t, forcing); };
  } else {
    p.u0 = sample_boundary(mesh, initial);
    p.forcing = [&](double t) {
      return BoundaryDual(Mb * sample_boundary(mesh, [&](const Point& y) { return forcing(t, y); }).values);
    };
  }
  const BoundaryDual f_inf(Mb * sample_boundary(mesh, forcing.limit).values);
  p.u_inf = stationary_solve(s.mesh(), s.family(), f_inf);

  auto snapshot = [&](int step, double t, const Vector& bulk) {
    if (sc.output.vtk.empty()) return;
    std::ostringstream out;
    std::vector<Point> positions;
    if (motion) positions = pushforward_field(*motion, mesh, t, bulk).positions;
    write_vtk(out, mesh, positions, "u", bulk);
    s.write_output(snapshot_name(sc.output.vtk, step), out.str());
  };
  const StepObserver observer = [&](int step, double t, const TimeStepper::Step& st) {
    if (step % sc.output.snapshot_interval == 0) snapshot(step, t, st.bulk);
  };

  EvolutionSeries series;
  if (sc.T > sc.t0) {
    series = run_evolution(p, observer);
  } else {
    // Verification-only scenario: no time stepping, no series output.
    p.T = p.t0;
    series = run_evolution(p);
  }
  if (sc.T > sc.t0) {
    snapshot(0, sc.t0, series.records.front().bulk);
    std::ostringstream csv;
    write_series_csv(csv, series);
    s.write_output(sc.output.csv, csv.str());
  }

  const auto& last = series.records.back();
  auto& m = s.metrics()["evolution"];
  m["scheme"] = scheme_name(sc.scheme);
  m["steps"] = last.step;
  m["final_t"] = last.t;
  m["final_l2_boundary"] = last.l2_boundary;
  m["final_dist_h1_to_uinf"] = last.dist_h1;
  if (sc.verify.dist_threshold) s.check("dist_threshold", last.dist_h1 <= *sc.verify.dist_threshold);

  run_enabled_checks(s);
  return s.finish();
}

}  // namespace

int run_evolve(const Scenario& sc, const RunOptions& opts) { return evolve(sc, opts, false); }
int run_noncyl_evolve(const Scenario& sc, const RunOptions& opts) { return evolve(sc, opts, true); }

int run_scenario(const Scenario& sc, const RunOptions& opts) {
  return evolve(sc, opts, sc.family.preset == "motion-derived");
}

int run_stationary(const Scenario& sc, const RunOptions& opts) {
  Session s(sc, opts);
  const TriMesh& mesh = *s.mesh();
  const SpaceTimeForcing forcing = build_forcing(sc.forcing);
  const SparseMatrix Mb = assemble_boundary_mass(mesh).matrix;
  const BoundaryDual f_inf(Mb * sample_boundary(mesh, forcing.limit).values);
  const StationarySolution u = stationary_solve(s.mesh(), s.family(), f_inf);

  std::ostringstream csv;
  csv << "index,x,y,u\n";
  for (int b = 0; b < mesh.num_boundary(); ++b) {
    const Point& p = mesh.vertices[mesh.boundary_vertices[b]];
    csv << mesh.boundary_vertices[b] << ',' << format_number(p.x()) << ',' << format_number(p.y()) << ','
        << format_number(u.boundary.values[b]) << '\n';
  }
  s.write_output("stationary.csv", csv.str());
  std::ostringstream vtk;
  write_vtk(vtk, mesh, {}, "u_inf", u.bulk);
  s.write_output("stationary.vtk", vtk.str());

  const DtnOperator op(s.mesh(), s.family(), kInfiniteTime);
  const Vector residual = op.apply(u.boundary).values - f_inf.values;
  const double scale = std::max(1.0, f_inf.values.cwiseAbs().maxCoeff());
  s.metrics()["stationary"]["residual"] = residual.cwiseAbs().maxCoeff();
  s.check("stationary_residual", residual.cwiseAbs().maxCoeff() <= config::kResidualTol * scale);
  return s.finish();
}

int run_dtn_matrix(const Scenario& sc, const RunOptions& opts) {
  Session s(sc, opts);
  const TriMesh& mesh = *s.mesh();
  const DtnOperator op(s.mesh(), s.family(), sc.t0);
  std::ostringstream a, m, nodes;
  write_dense_csv(a, op.matrix());
  write_dense_csv(m, DenseMatrix(op.boundary_mass()));
  nodes << "slot,vertex,x,y\n";
  for (int b = 0; b < mesh.num_boundary(); ++b) {
    const Point& p = mesh.vertices[mesh.boundary_vertices[b]];
    nodes << b << ',' << mesh.boundary_vertices[b] << ',' << format_number(p.x()) << ',' << format_number(p.y())
          << '\n';
  }
  s.write_output("dtn_matrix.csv", a.str());
  s.write_output("boundary_mass.csv", m.str());
  s.write_output("boundary_nodes.csv", nodes.str());
  s.metrics()["dtn"]["boundary_dofs"] = mesh.num_boundary();
  s.metrics()["dtn"]["t"] = time_label(sc.t0);
  return s.finish();
}

int run_verify(const Scenario& sc, std::string_view check, const RunOptions& opts) {
  Session s(sc, opts);
  run_named_check(s, check);
  return s.finish();
}

void write_oracle_disk(std::ostream& out, double lambda, int kmax) {
  if (kmax < 0) throw InvalidParameter("oracle disk: kmax must be >= 0");
  out << "k,mu_k\n";
  for (int k = 0; k <= kmax; ++k) out << k << ',' << format_number(oracle::disk_dtn_eigenvalue(lambda, k)) << '\n';
}

}  // namespace dynbc
