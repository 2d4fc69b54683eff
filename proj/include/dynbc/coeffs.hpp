#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dynbc/types.hpp"

namespace dynbc {

/// Coefficients of the form at one (t, x):
///   a(u, v) = int sum a_ij d_j u d_i v + sum b_j d_j u v + sum c_j u d_j v + d u v.
struct CoefficientSample {
  Mat2 a = Mat2::Identity();
  Vec2 b = Vec2::Zero();
  Vec2 c = Vec2::Zero();
  double d = 0.0;
};

/// Time-indexed coefficient fields on the closed domain, t in [t0, inf].
///
/// Evaluators must be pure and re-entrant. `at` accepts kInfiniteTime and
/// then defers to `limit`.
struct CoefficientFamily {
  std::string name;
  std::function<CoefficientSample(double t, const Point& x)> finite;
  std::function<CoefficientSample(const Point& x)> limit;
  double alpha = 1.0;             // Hoelder exponent in time, in ]0, 1]
  double coercivity_floor = 0.0;  // claimed, verified at runtime
  bool time_constant = false;
  bool symmetric = false;  // a symmetric and b == c at every (t, x)

  CoefficientSample at(double t, const Point& x) const;
};

/// a = I, b = c = 0, d = -lambda. Requires lambda < 0.
CoefficientFamily preset_laplace_shift(double lambda);

/// a = (1 + eps e^{-decay t} sin t) I, b = c = 0, d = -lambda.
/// Requires lambda < 0, |eps| < 1, decay > 0.
CoefficientFamily preset_oscillating(double lambda, double eps, double decay);

/// Non-symmetric family: a = I, b = beta, c = 0, d = -lambda.
/// Requires lambda < 0 and |beta| < 1.
CoefficientFamily preset_advection(double lambda, const Vec2& beta);

/// Family of the adjoint form a*_t(u, v) = conj(a_t(v, u)): a -> a^T, b <-> c.
CoefficientFamily adjoint_family(const CoefficientFamily& family);

/// Fixed spatial sample set (unit disk, polar lattice plus centre).
std::vector<Point> default_coefficient_samples();

/// max |coef(t, x) - coef(s, x)| / |t - s|^alpha over sampled pairs and x.
double holder_modulus_estimate(const CoefficientFamily& family, std::span<const double> times,
                               std::span<const Point> samples);
double holder_modulus_estimate(const CoefficientFamily& family, std::span<const double> times);

/// max_x |coef(t, x) - coef(inf, x)| over the sample set.
double limit_distance(const CoefficientFamily& family, double t, std::span<const Point> samples);

/// Entrywise max-norm of the difference of two samples.
double max_abs_difference(const CoefficientSample& p, const CoefficientSample& q);

}  // namespace dynbc
