#include "dynbc/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dynbc/errors.hpp"

namespace dynbc {

CoefficientSample CoefficientFamily::at(double t, const Point& x) const {
  return is_infinite_time(t) ? limit(x) : finite(t, x);
}

CoefficientFamily preset_laplace_shift(double lambda) {
  if (!(lambda < 0.0)) throw InvalidParameter("preset_laplace_shift: lambda must be < 0");
  CoefficientSample s;
  s.d = -lambda;
  CoefficientFamily f;
  f.name = "laplace_shift";
  f.finite = [s](double, const Point&) { return s; };
  f.limit = [s](const Point&) { return s; };
  f.alpha = 1.0;
  f.coercivity_floor = std::min(1.0, -lambda);
  f.time_constant = true;
  f.symmetric = true;
  return f;
}

CoefficientFamily preset_oscillating(double lambda, double eps, double decay) {
  if (!(lambda < 0.0)) throw InvalidParameter("preset_oscillating: lambda must be < 0");
  if (!(std::abs(eps) < 1.0)) throw InvalidParameter("preset_oscillating: need |eps| < 1");
  if (!(decay > 0.0)) throw InvalidParameter("preset_oscillating: decay must be > 0");
  CoefficientFamily f;
  f.name = "oscillating";
  f.finite = [=](double t, const Point&) {
    CoefficientSample s;
    s.a = (1.0 + eps * std::exp(-decay * t) * std::sin(t)) * Mat2::Identity();
    s.d = -lambda;
    return s;
  };
  f.limit = [=](const Point&) {
    CoefficientSample s;
    s.d = -lambda;
    return s;
  };
  f.alpha = 1.0;
  f.coercivity_floor = std::min(1.0 - std::abs(eps), -lambda);
  f.time_constant = eps == 0.0;
  f.symmetric = true;
  return f;
}

CoefficientFamily preset_advection(double lambda, const Vec2& beta) {
  if (!(lambda < 0.0)) throw InvalidParameter("preset_advection: lambda must be < 0");
  if (!(beta.norm() < 1.0)) throw InvalidParameter("preset_advection: need |beta| < 1");
  CoefficientSample s;
  s.b = beta;
  s.d = -lambda;
  CoefficientFamily f;
  f.name = "advection";
  f.finite = [s](double, const Point&) { return s; };
  f.limit = [s](const Point&) { return s; };
  f.alpha = 1.0;
  f.coercivity_floor = 0.5 * std::min(1.0, -lambda);
  f.time_constant = true;
  f.symmetric = beta.isZero(0.0);
  return f;
}

CoefficientFamily adjoint_family(const CoefficientFamily& family) {
  auto swap = [](CoefficientSample s) {
    s.a.transposeInPlace();
    std::swap(s.b, s.c);
    return s;
  };
  CoefficientFamily f = family;
  f.name = family.name + "*";
  f.finite = [inner = family.finite, swap](double t, const Point& x) { return swap(inner(t, x)); };
  f.limit = [inner = family.limit, swap](const Point& x) { return swap(inner(x)); };
  return f;
}

std::vector<Point> default_coefficient_samples() {
  std::vector<Point> pts{Point(0.0, 0.0)};
  for (double r : {0.25, 0.5, 0.75, 1.0})
    for (int k = 0; k < 6; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 6.0 + r;
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  return pts;
}

double max_abs_difference(const CoefficientSample& p, const CoefficientSample& q) {
  double m = (p.a - q.a).cwiseAbs().maxCoeff();
  m = std::max(m, (p.b - q.b).cwiseAbs().maxCoeff());
  m = std::max(m, (p.c - q.c).cwiseAbs().maxCoeff());
  return std::max(m, std::abs(p.d - q.d));
}

double holder_modulus_estimate(const CoefficientFamily& family, std::span<const double> times,
                               std::span<const Point> samples) {
  double best = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) {
      const double gap = std::abs(times[i] - times[j]);
      if (gap == 0.0) continue;
      double diff = 0.0;
      for (const auto& x : samples)
        diff = std::max(diff, max_abs_difference(family.at(times[i], x), family.at(times[j], x)));
      best = std::max(best, diff / std::pow(gap, family.alpha));
    }
  }
  return best;
}

double holder_modulus_estimate(const CoefficientFamily& family, std::span<const double> times) {
  const auto samples = default_coefficient_samples();
  return holder_modulus_estimate(family, times, samples);
}

double limit_distance(const CoefficientFamily& family, double t, std::span<const Point> samples) {
  double m = 0.0;
  for (const auto& x : samples) m = std::max(m, max_abs_difference(family.at(t, x), family.limit(x)));
  return m;
}

}  // namespace dynbc
