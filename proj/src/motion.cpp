#include "dynbc/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dynbc/assembly.hpp"
#include "dynbc/config.hpp"
#include "dynbc/errors.hpp"

namespace dynbc {

namespace {

constexpr double kCutoffInner = 0.5;
constexpr double kCutoffWidth = 0.25;

Vec2 radial_unit(const Point& y) {
  const double r = y.norm();
  return r > 0.0 ? Vec2(y / r) : Vec2::Zero();
}

void require_time(const DomainMotion& m, double t) {
  if (t < m.t_star)
    throw DomainError("motion '" + m.name + "': t = " + std::to_string(t) + " precedes t_star = " +
                      std::to_string(m.t_star));
}

Mat2 inverse_jacobian(const DomainMotion& m, double t, const Point& y) {
  const Mat2 J = m.jac(t, y);
  const double det = J.determinant();
  if (!(std::abs(det) > 1e-14)) throw GeometryError("motion '" + m.name + "': singular Jacobian");
  return J.inverse();
}

// N from its definition, without the t_star check.
double normal_factor_raw(const DomainMotion& m, double t, const Point& y) {
  if (m.normal_factor) return m.normal_factor(t, y);
  const double chi = m.chi(y);
  if (chi == 0.0) return 1.0;
  const Vec2 gnu = inverse_jacobian(m, t, y).transpose() * m.nu_normal(y);
  const double len = gnu.norm();
  if (!(len > 0.0)) throw GeometryError("motion '" + m.name + "': |G^T nu| = 0 inside the cutoff support");
  return chi / len + 1.0 - chi;
}

}  // namespace

double collar_cutoff(double r) {
  const double s = (r - kCutoffInner) / kCutoffWidth;
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

double collar_cutoff_derivative(double r) {
  const double s = (r - kCutoffInner) / kCutoffWidth;
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return 30.0 * s * s * (1.0 - s) * (1.0 - s) / kCutoffWidth;
}

DomainMotion identity_motion() {
  DomainMotion m;
  m.name = "identity";
  m.h = [](double, const Point& y) { return y; };
  m.jac = [](double, const Point&) { return Mat2::Identity().eval(); };
  m.dh_dt = [](double, const Point&) { return Vec2::Zero().eval(); };
  m.c = [](double) { return 0.0; };
  m.nu_normal = radial_unit;
  m.chi = [](const Point& y) { return collar_cutoff(y.norm()); };
  m.stationary = true;
  m.normal_factor = [](double, const Point&) { return 1.0; };
  m.gn_divergence = [](double, const Point&) { return Vec2::Zero().eval(); };
  return m;
}

DomainMotion radial_dilation(std::function<double(double)> rho, std::function<double(double)> drho,
                             double t_star) {
  DomainMotion m;
  m.name = "radial_dilation";
  m.h = [rho](double t, const Point& y) { return Point(rho(t) * y); };
  m.jac = [rho](double t, const Point&) { return Mat2(rho(t) * Mat2::Identity()); };
  m.dh_dt = [drho](double t, const Point& y) { return Vec2(drho(t) * y); };
  m.c = drho;
  m.nu_normal = radial_unit;
  m.chi = [](const Point& y) { return collar_cutoff(y.norm()); };
  m.t_star = t_star;
  m.diameter = 2.0;
  // G = I / rho, |G^T nu| = 1 / rho on supp chi.
  m.normal_factor = [rho](double t, const Point& y) { return 1.0 + collar_cutoff(y.norm()) * (rho(t) - 1.0); };
  m.gn_divergence = [rho](double t, const Point& y) {
    const double r = y.norm();
    const double dchi = collar_cutoff_derivative(r);
    if (dchi == 0.0) return Vec2::Zero().eval();
    const double p = rho(t);
    return Vec2((p - 1.0) / p * dchi * y / r);
  };
  return m;
}

DomainMotion radial_dilation_exp(double amplitude, double rate) {
  if (!(rate > 0.0)) throw InvalidParameter("radial_dilation: rate must be > 0");
  if (!(amplitude > -1.0)) throw InvalidParameter("radial_dilation: amplitude must be > -1");
  const double speed0 = std::abs(amplitude) * rate;
  const double t_star = speed0 > config::kMaxNormalSpeed ? std::log(speed0 / config::kMaxNormalSpeed) / rate : 0.0;
  auto m = radial_dilation([=](double t) { return 1.0 + amplitude * std::exp(-rate * t); },
                           [=](double t) { return -amplitude * rate * std::exp(-rate * t); }, t_star);
  return m;
}

DomainMotion collar_normal(std::function<double(double)> f, std::function<double(double)> df, double t_star,
                           double alpha) {
  DomainMotion m;
  m.name = "collar";
  m.h = [f](double t, const Point& y) { return Point(y + f(t) * collar_cutoff(y.norm()) * radial_unit(y)); };
  m.jac = [f](double t, const Point& y) {
    const double r = y.norm();
    const double chi = collar_cutoff(r);
    const double dchi = collar_cutoff_derivative(r);
    if (chi == 0.0 && dchi == 0.0) return Mat2::Identity().eval();
    const Vec2 n = y / r;
    const Mat2 nn = n * n.transpose();
    return Mat2(Mat2::Identity() + f(t) * (dchi * nn + chi / r * (Mat2::Identity() - nn)));
  };
  m.dh_dt = [df](double t, const Point& y) { return Vec2(df(t) * collar_cutoff(y.norm()) * radial_unit(y)); };
  m.c = df;
  m.nu_normal = radial_unit;
  m.chi = [](const Point& y) { return collar_cutoff(y.norm()); };
  m.alpha = alpha;
  m.t_star = t_star;
  m.diameter = 2.0;
  return m;
}

DomainMotion collar_oscillating(double eps, double beta, double a) {
  if (!(beta > 0.0)) throw InvalidParameter("collar: beta must be > 0");
  if (!(a > 0.0)) throw InvalidParameter("collar: a must be > 0");
  if (!(2.0 * (a - 1.0) < beta)) throw InvalidParameter("collar: need 2(a - 1) < beta");
  // Both bounds decrease in t once a - beta - 1 < 0, which the condition above implies for a >= 1.
  if (!(a - beta - 1.0 < 0.0)) throw InvalidParameter("collar: need a - beta - 1 < 0");
  const double max_dchi = 30.0 / 16.0 / kCutoffWidth;
  auto ok = [=](double t) {
    const double speed = std::abs(eps) * (beta * std::pow(t, -beta - 1.0) + a * std::pow(t, a - beta - 1.0));
    const double disp = std::abs(eps) * std::pow(t, -beta) * std::max(max_dchi, 1.0 / kCutoffInner);
    return speed <= config::kMaxNormalSpeed && disp <= 0.5;
  };
  double lo = 1.0;
  double t_star = 1.0;
  if (!ok(lo)) {
    double hi = 2.0;
    while (!ok(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e12) throw InvalidParameter("collar: no admissible start time");
    }
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
    t_star = hi;
  }
  auto f = [=](double t) { return eps * std::pow(t, -beta) * std::sin(std::pow(t, a)); };
  auto df = [=](double t) {
    return eps * (-beta * std::pow(t, -beta - 1.0) * std::sin(std::pow(t, a)) +
                  a * std::pow(t, a - beta - 1.0) * std::cos(std::pow(t, a)));
  };
  return collar_normal(f, df, t_star, 1.0);
}

double normal_extension_N(const DomainMotion& motion, double t, const Point& y) {
  require_time(motion, t);
  return normal_factor_raw(motion, t, y);
}

std::vector<double> normal_extension_N(const DomainMotion& motion, double t, std::span<const Point> points) {
  require_time(motion, t);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(normal_factor_raw(motion, t, p));
  return out;
}

Vec2 moving_normal(const DomainMotion& motion, double t, const Point& y) {
  const Vec2 gnu = inverse_jacobian(motion, t, y).transpose() * motion.nu_normal(y);
  const double len = gnu.norm();
  if (!(len > 0.0)) throw GeometryError("motion '" + motion.name + "': normal undefined at this point");
  return gnu / len;
}

Vec2 gn_divergence(const DomainMotion& motion, double t, const Point& y) {
  if (motion.gn_divergence) return motion.gn_divergence(t, y);
  const double delta = 1e-6 * motion.diameter;
  auto gn = [&](const Point& p) { return Mat2(inverse_jacobian(motion, t, p) * normal_factor_raw(motion, t, p)); };
  Vec2 div = Vec2::Zero();
  for (int l = 0; l < 2; ++l) {
    const Point e = Point::Unit(l) * delta;
    const Mat2 diff = gn(y + e) - gn(y - e);
    div += diff.row(l).transpose() / (2.0 * delta);
  }
  return div;
}

CoefficientFamily transformed_family(const DomainMotion& motion, double lambda) {
  if (!(lambda < 0.0)) throw InvalidParameter("transformed_family: lambda must be < 0");
  CoefficientFamily f;
  f.name = "motion:" + motion.name;
  f.finite = [motion, lambda](double t, const Point& x) {
    require_time(motion, t);
    const Mat2 G = inverse_jacobian(motion, t, x);
    const double N = normal_factor_raw(motion, t, x);
    const double one_c = 1.0 - motion.c(t);
    const Vec2 div = gn_divergence(motion, t, x);
    CoefficientSample s;
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) s.a(k, l) = (G(k, 0) * G(l, 0) + G(k, 1) * G(l, 1)) * one_c * N;
    s.b = one_c * (G * div);
    s.d = -lambda * (one_c * N);
    return s;
  };
  f.limit = [lambda](const Point&) {
    CoefficientSample s;
    s.d = -lambda;
    return s;
  };
  f.alpha = motion.alpha;
  f.coercivity_floor = 0.25;
  f.time_constant = motion.stationary;
  f.symmetric = motion.stationary;
  return f;
}

BoundaryField strong_conormal_eval(const DomainMotion& motion, const TriMesh& mesh, double t, const Vector& v) {
  require_time(motion, t);
  if (v.size() != mesh.num_vertices()) throw InvalidParameter("strong_conormal_eval: bulk vector has wrong length");
  const int nb = mesh.num_boundary();
  std::vector<Vec2> grad(nb, Vec2::Zero());
  std::vector<double> weight(nb, 0.0);
  for (const auto& tri : mesh.triangles) {
    const Point& p0 = mesh.vertices[tri[0]];
    const Point& p1 = mesh.vertices[tri[1]];
    const Point& p2 = mesh.vertices[tri[2]];
    const double area2 = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    const Vec2 g = (v[tri[0]] * Vec2(p1.y() - p2.y(), p2.x() - p1.x()) +
                    v[tri[1]] * Vec2(p2.y() - p0.y(), p0.x() - p2.x()) +
                    v[tri[2]] * Vec2(p0.y() - p1.y(), p1.x() - p0.x())) /
                   area2;
    for (int k : tri) {
      const int b = mesh.boundary_slot[k];
      if (b < 0) continue;
      grad[b] += 0.5 * area2 * g;
      weight[b] += 0.5 * area2;
    }
  }
  const double one_c = 1.0 - motion.c(t);
  Vector out(nb);
  for (int b = 0; b < nb; ++b) {
    const Point& y = mesh.vertices[mesh.boundary_vertices[b]];
    const Vec2 gn = inverse_jacobian(motion, t, y) * moving_normal(motion, t, y);
    out[b] = one_c * gn.dot(grad[b] / weight[b]);
  }
  return BoundaryField(std::move(out));
}

BoundaryDual pullback_boundary_data(const DomainMotion& motion, const TriMesh& mesh, double t,
                                    const std::function<double(double, const Point&)>& f) {
  require_time(motion, t);
  const BoundaryField samples = sample_boundary(mesh, [&](const Point& y) { return f(t, motion.h(t, y)); });
  return BoundaryDual(assemble_boundary_mass(mesh).matrix * samples.values);
}

PushedField pushforward_field(const DomainMotion& motion, const TriMesh& mesh, double t, const Vector& v) {
  require_time(motion, t);
  if (v.size() != mesh.num_vertices()) throw InvalidParameter("pushforward_field: bulk vector has wrong length");
  PushedField out;
  out.positions.reserve(mesh.vertices.size());
  for (const auto& y : mesh.vertices) out.positions.push_back(motion.h(t, y));
  out.values = v;
  return out;
}

MotionReport verify_motion_assumptions(const DomainMotion& motion, std::span<const double> times) {
  MotionReport rep;
  rep.min_det = std::numeric_limits<double>::infinity();
  rep.min_N = std::numeric_limits<double>::infinity();
  const std::vector<Point> interior = default_coefficient_samples();
  std::vector<Point> boundary;
  constexpr int kBoundarySamples = 24;
  for (int k = 0; k < kBoundarySamples; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kBoundarySamples;
    boundary.emplace_back(std::cos(th), std::sin(th));
  }
  std::vector<Point> all = interior;
  all.insert(all.end(), boundary.begin(), boundary.end());

  auto fail = [&](std::string msg) {
    if (std::find(rep.failures.begin(), rep.failures.end(), msg) == rep.failures.end())
      rep.failures.push_back(std::move(msg));
  };

  std::vector<double> ts(times.begin(), times.end());
  std::sort(ts.begin(), ts.end());
  for (double t : ts) {
    MotionTimeSample s;
    s.t = t;
    s.min_det = std::numeric_limits<double>::infinity();
    s.min_N = std::numeric_limits<double>::infinity();
    if (t < motion.t_star) fail("sample time " + std::to_string(t) + " precedes t_star");
    s.c = motion.c(t);
    if (!(std::abs(s.c) <= config::kMaxNormalSpeed)) fail("normal speed |c| exceeds 0.5");
    if (!(s.c < 1.0)) fail("normal speed c >= 1");
    for (const auto& y : all) {
      const Mat2 J = motion.jac(t, y);
      s.jac_deviation = std::max(s.jac_deviation, (J - Mat2::Identity()).cwiseAbs().maxCoeff());
      s.min_det = std::min(s.min_det, J.determinant());
      s.dh_dt = std::max(s.dh_dt, motion.dh_dt(t, y).norm());
      try {
        s.min_N = std::min(s.min_N, normal_factor_raw(motion, t, y));
      } catch (const GeometryError& e) {
        fail(e.what());
      }
    }
    for (const auto& y : boundary) {
      try {
        const Vec2 r = motion.dh_dt(t, y) - s.c * moving_normal(motion, t, y);
        s.normal_residual = std::max(s.normal_residual, r.norm());
      } catch (const GeometryError& e) {
        fail(e.what());
      }
    }
    if (!(s.min_det > 0.0)) fail("Jacobian determinant not positive");
    if (!(s.min_N > 0.0)) fail("normal extension N not positive");
    if (!(s.normal_residual <= config::kNormalSpeedResidualTol)) fail("dh/dt differs from c n on the boundary");

    constexpr double kStep = 1e-3;
    for (const auto& y : interior) {
      for (int k = 0; k < 2; ++k) {
        const Point e = Point::Unit(k) * kStep;
        const Vec2 d2 = (motion.h(t, y + e) - 2.0 * motion.h(t, y) + motion.h(t, y - e)) / (kStep * kStep);
        rep.max_second_difference = std::max(rep.max_second_difference, d2.norm());
      }
    }

    rep.max_jac_deviation = std::max(rep.max_jac_deviation, s.jac_deviation);
    rep.max_dh_dt = std::max(rep.max_dh_dt, s.dh_dt);
    rep.max_abs_c = std::max(rep.max_abs_c, std::abs(s.c));
    rep.max_normal_residual = std::max(rep.max_normal_residual, s.normal_residual);
    rep.min_det = std::min(rep.min_det, s.min_det);
    rep.min_N = std::min(rep.min_N, s.min_N);
    rep.samples.push_back(s);
  }

  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double dt = ts[i] - ts[i - 1];
    if (!(dt > 0.0)) continue;
    const double scale = std::pow(dt, motion.alpha);
    for (const auto& y : all) {
      rep.holder_h = std::max(rep.holder_h, (motion.h(ts[i], y) - motion.h(ts[i - 1], y)).norm() / scale);
      rep.holder_dh_dt =
          std::max(rep.holder_dh_dt, (motion.dh_dt(ts[i], y) - motion.dh_dt(ts[i - 1], y)).norm() / scale);
    }
  }
  if (!std::isfinite(rep.holder_h) || !std::isfinite(rep.holder_dh_dt)) fail("Hoelder modulus in time not finite");
  if (ts.empty()) {
    rep.min_det = 0.0;
    rep.min_N = 0.0;
  }
  return rep;
}

}  // namespace dynbc
