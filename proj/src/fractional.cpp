#include <cmath>
#include <numbers>

#include "dynbc/config.hpp"
#include "dynbc/dtn.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/quadrature.hpp"

namespace dynbc {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("gauss_legendre: need n >= 1");
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [n](double x, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

BalakrishnanRule BalakrishnanRule::standard() {
  return {config::kBalakrishnanSMin, config::kBalakrishnanSMax, config::kBalakrishnanPointsPerUnit,
          config::kBalakrishnanTailTerms};
}

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidParameter("fractional power: theta must lie in ]0, 1[");
}

DenseMatrix balakrishnan(const BoundaryPencil& pencil, double theta, const DenseMatrix& F,
                         const BalakrishnanRule& rule) {
  const auto& S = pencil.S;
  const auto& M = pencil.M;
  const auto gl = gauss_legendre(rule.points_per_unit);
  DenseMatrix sum = DenseMatrix::Zero(F.rows(), F.cols());

  const int intervals = static_cast<int>(std::lround(rule.s_max - rule.s_min));
  const double width = (rule.s_max - rule.s_min) / intervals;
  for (int k = 0; k < intervals; ++k) {
    const double mid = rule.s_min + (k + 0.5) * width;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double s = mid + 0.5 * width * gl.nodes[q];
      const double rho = std::exp(s);
      // d rho = rho ds, so the weight carries rho^{1 - theta}.
      const double w = 0.5 * width * gl.weights[q] * std::exp((1.0 - theta) * s);
      Eigen::PartialPivLU<DenseMatrix> lu(S + rho * M);
      sum.noalias() += w * lu.solve(F);
    }
  }

  Eigen::LLT<DenseMatrix> mass(M);
  Eigen::PartialPivLU<DenseMatrix> stiff(S);
  // Lower tail: sum_n (-1)^n a^{n+1-theta}/(n+1-theta) A^{-(n+1)} f, A^{-1} f = S^{-1} F.
  const double a = std::exp(rule.s_min);
  DenseMatrix inv_power = stiff.solve(F);
  for (int n = 0; n < rule.tail_terms; ++n) {
    const double c = (n % 2 ? -1.0 : 1.0) * std::pow(a, n + 1.0 - theta) / (n + 1.0 - theta);
    sum += c * inv_power;
    inv_power = stiff.solve(M * inv_power);
  }
  // Upper tail: sum_n (-1)^n b^{-theta-n}/(theta+n) A^n f, f = M^{-1} F, A f = M^{-1} S f.
  const double b = std::exp(rule.s_max);
  DenseMatrix power = mass.solve(F);
  for (int n = 0; n < rule.tail_terms; ++n) {
    const double c = (n % 2 ? -1.0 : 1.0) * std::pow(b, -theta - n) / (theta + n);
    sum += c * power;
    power = mass.solve(S * power);
  }
  return (std::sin(theta * std::numbers::pi) / std::numbers::pi) * sum;
}

}  // namespace

DenseMatrix fractional_power_apply(const DtnOperator& op, double theta, const DenseMatrix& duals,
                                   FractionalMethod method, const BalakrishnanRule& rule) {
  check_theta(theta);
  if (duals.rows() != op.mesh().num_boundary())
    throw InvalidParameter("fractional power: duals have wrong length");
  if (method == FractionalMethod::Spectral) {
    const DenseMatrix& S = op.matrix();
    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * S.cwiseAbs().maxCoeff())
      throw UnsupportedMethod("spectral fractional powers need a symmetric operator; use balakrishnan");
    const auto spec = symmetric_spectrum(op);
    const Vector scale = spec.values.array().pow(-theta).matrix();
    return spec.vectors * (scale.asDiagonal() * (spec.vectors.transpose() * duals));
  }
  return balakrishnan(boundary_pencil(op), theta, duals, rule);
}

BoundaryField fractional_power_apply(const DtnOperator& op, double theta, const BoundaryDual& F,
                                     FractionalMethod method, const BalakrishnanRule& rule) {
  const DenseMatrix out = fractional_power_apply(op, theta, DenseMatrix(F.values), method, rule);
  return BoundaryField(out.col(0));
}

}  // namespace dynbc
