#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dynbc/coeffs.hpp"
#include "dynbc/mesh.hpp"

namespace dynbc {

/// Family of diffeomorphisms h(t, .) of the reference domain onto the moving
/// domain Omega_t, with the cutoff, normal extension and normal speed needed
/// to pull the moving-boundary problem back to the fixed cylinder.
///
/// G denotes jac^{-1}. Presets may supply closed forms for the normal
/// extension N and for div_j = sum_l d_l(G_lj N); otherwise N follows its
/// definition and div is taken by central differences.
struct DomainMotion {
  std::string name;
  std::function<Point(double t, const Point& y)> h;
  std::function<Mat2(double t, const Point& y)> jac;
  std::function<Vec2(double t, const Point& y)> dh_dt;
  std::function<double(double t)> c;
  std::function<Vec2(const Point& y)> nu_normal;
  std::function<double(const Point& y)> chi;
  double alpha = 1.0;
  double t_star = 0.0;
  double diameter = 2.0;
  bool stationary = false;  // h(t, .) is the identity for every t

  std::function<double(double t, const Point& y)> normal_factor;
  std::function<Vec2(double t, const Point& y)> gn_divergence;
};

/// h(t, y) = y.
DomainMotion identity_motion();

/// h(t, y) = rho(t) y on the unit disk; c = rho'.
DomainMotion radial_dilation(std::function<double(double)> rho, std::function<double(double)> drho,
                             double t_star = 0.0);

/// rho(t) = 1 + amplitude e^{-rate t}; t_star is the first time with |rho'| <= 0.5.
DomainMotion radial_dilation_exp(double amplitude, double rate);

/// h(t, y) = y + f(t) chi(|y|) y/|y| on the unit disk; c = f'.
DomainMotion collar_normal(std::function<double(double)> f, std::function<double(double)> df,
                           double t_star, double alpha = 1.0);

/// f(t) = eps t^{-beta} sin(t^a); t_star >= 1 is chosen so that |f'| <= 0.5
/// and the Jacobian stays invertible on [t_star, inf).
DomainMotion collar_oscillating(double eps, double beta, double a);

/// Quintic smoothstep in r = |y|: 0 for r <= 0.5, 1 for r >= 0.75.
double collar_cutoff(double r);
double collar_cutoff_derivative(double r);

/// N(t, y) = chi / |G^T nu| + 1 - chi. Throws DomainError for t < t_star and
/// GeometryError when |G^T nu| vanishes inside supp chi.
std::vector<double> normal_extension_N(const DomainMotion& motion, double t, std::span<const Point> points);
double normal_extension_N(const DomainMotion& motion, double t, const Point& y);

/// n(t, y) = G^T nu / |G^T nu|, the outward normal of the moving boundary at h(t, y).
Vec2 moving_normal(const DomainMotion& motion, double t, const Point& y);

/// sum_l d_l(G_lj N)(t, y), closed form when the preset provides one.
Vec2 gn_divergence(const DomainMotion& motion, double t, const Point& y);

/// Coefficients of the pulled-back form:
///   a_kl = sum_j G_kj G_lj (1 - c) N,  b_k = (1 - c) sum_j G_kj div_j,
///   c = 0,  d = -lambda (1 - c) N.
/// The infinite-time snapshot is a = I, b = 0, d = -lambda.
CoefficientFamily transformed_family(const DomainMotion& motion, double lambda);

/// (1 - c) (G n) . grad v at each boundary vertex, grad v the area-weighted
/// average of the adjacent P1 gradients.
BoundaryField strong_conormal_eval(const DomainMotion& motion, const TriMesh& mesh, double t, const Vector& v);

/// M_b times the samples f(t, h(t, y_b)).
BoundaryDual pullback_boundary_data(const DomainMotion& motion, const TriMesh& mesh, double t,
                                    const std::function<double(double, const Point&)>& f);

struct PushedField {
  std::vector<Point> positions;  // h(t, y_i)
  Vector values;
};
PushedField pushforward_field(const DomainMotion& motion, const TriMesh& mesh, double t, const Vector& v);

struct MotionTimeSample {
  double t = 0.0;
  double jac_deviation = 0.0;   // max |jac - I|
  double dh_dt = 0.0;           // max |dh/dt|
  double c = 0.0;
  double normal_residual = 0.0; // max over boundary samples of |dh/dt - c n|
  double min_det = 0.0;
  double min_N = 0.0;
};

struct MotionReport {
  std::vector<MotionTimeSample> samples;
  double max_jac_deviation = 0.0;
  double max_second_difference = 0.0;
  double max_dh_dt = 0.0;
  double max_abs_c = 0.0;
  double max_normal_residual = 0.0;
  double holder_h = 0.0;
  double holder_dh_dt = 0.0;
  double min_det = 0.0;
  double min_N = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Samples the motion on a polar lattice of the unit disk plus boundary
/// points and checks det jac != 0, N > 0, dh/dt = c n on the boundary,
/// |c| <= 0.5 and finite Hoelder moduli in time.
MotionReport verify_motion_assumptions(const DomainMotion& motion, std::span<const double> times);

}  // namespace dynbc
