#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/motion.hpp"
#include "dynbc/verify.hpp"
#include "helpers.hpp"

using namespace dynbc;

TEST_CASE("opnorm") {
  const DenseMatrix I = DenseMatrix::Identity(3, 3);
  CHECK(opnorm(I, I, I) == doctest::Approx(1.0).epsilon(1e-14));
  DenseMatrix D = DenseMatrix::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = 1.0;
  const DenseMatrix I2 = DenseMatrix::Identity(2, 2);
  CHECK(opnorm(D, I2, I2) == doctest::Approx(3.0).epsilon(1e-14));
  // |A x|_C / |x|_D with C = 4 I doubles the norm, D = 4 I halves it.
  CHECK(opnorm(D, I2, 4.0 * I2) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(opnorm(D, 4.0 * I2, I2) == doctest::Approx(1.5).epsilon(1e-14));

  const CDenseMatrix Dc = D.cast<Complex>();
  CHECK(opnorm(Dc, GramFactor(I2), GramFactor(4.0 * I2)) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("norm system") {
  const auto mesh = testing::disk(0.2);
  const NormSystem norms = build_norm_system(mesh);
  const int nb = mesh->num_boundary();
  CHECK(norms.S_half.rows() == nb);
  CHECK(testing::max_abs(norms.S_half - norms.S_half.transpose()) <= 1e-12 * testing::max_abs(norms.S_half));
  CHECK(Eigen::SelfAdjointEigenSolver<DenseMatrix>(norms.S_half).eigenvalues().minCoeff() > 0.0);
  CHECK(Eigen::SelfAdjointEigenSolver<DenseMatrix>(norms.M).eigenvalues().minCoeff() > 0.0);
  CHECK(testing::max_abs(norms.S_half * norms.S_half_inv - DenseMatrix::Identity(nb, nb)) <= 1e-10);
  const Vector one = Vector::Ones(nb);
  CHECK(norms.l2_norm(one) == doctest::Approx(std::sqrt(boundary_length(*mesh))).epsilon(1e-12));
  // The harmonic-extension norm dominates the boundary L2 norm only up to constants; both are positive.
  CHECK(norms.half_norm(one) > 0.0);
}

TEST_CASE("norm duality on small meshes") {
  for (double h : {0.3, 0.2, 0.1}) {
    const auto mesh = testing::disk(h);
    REQUIRE(mesh->num_boundary() <= 200);
    const NormSystem norms = build_norm_system(mesh);
    for (std::uint64_t seed : {1u, 2u, 3u})
      CHECK(norm_duality_discrepancy(norms, testing::random_vector(mesh->num_boundary(), seed)) <= 1e-10);
  }
}

TEST_CASE("sectoriality entries match the spectral mapping") {
  const auto mesh = testing::disk(0.1);
  const DtnOperator op(mesh, preset_laplace_shift(-1.0), 0.0);
  const double mu_min = symmetric_spectrum(op).values.minCoeff();
  const std::vector<Complex> grid{0.0, -0.5, -3.0, -100.0};
  const auto res = sectoriality_sweep(op, grid, NormKind::L2);
  REQUIRE(res.table.size() == grid.size());
  for (const auto& e : res.table) {
    const double s = -e.lambda.real();
    CHECK(e.value == doctest::Approx((1.0 + s) / (mu_min + s)).epsilon(1e-9));
  }
  const NormSystem norms = build_norm_system(mesh);
  const double inv = opnorm(DenseMatrix(op.matrix().partialPivLu().solve(norms.M)), norms.M, norms.M);
  CHECK(res.table[0].value == doctest::Approx(inv).epsilon(1e-10));
  CHECK(res.sup == doctest::Approx(1.0 / mu_min).epsilon(1e-9));
}

TEST_CASE("sectoriality sweep over the default grid") {
  const auto grid = default_lambda_grid();
  CHECK(grid.size() == 81);
  CHECK(std::count(grid.begin(), grid.end(), Complex(0.0, 0.0)) == 1);
  for (const auto& l : grid) CHECK(l.real() <= 0.0);

  std::vector<double> sups;
  for (double h : {0.2, 0.1}) {
    const auto mesh = testing::disk(h);
    const DtnOperator op(mesh, preset_advection(-1.0, Vec2(0.3, 0.2)), 0.0);
    for (NormKind kind : {NormKind::L2, NormKind::HMinusHalf}) {
      const auto res = sectoriality_sweep(op, grid, kind, 2);
      CHECK(std::isfinite(res.sup));
      CHECK(res.table.size() == grid.size());
      if (kind == NormKind::L2) sups.push_back(res.sup);
    }
  }
  CHECK(relative_change(sups[0], sups[1]) <= 0.10);
}

TEST_CASE("sectoriality sweep is thread-count independent") {
  const auto mesh = testing::disk(0.2);
  const DtnOperator op(mesh, preset_oscillating(-1.0, 0.5, 1.0), 1.0);
  const auto grid = default_lambda_grid();
  const auto a = sectoriality_sweep(op, grid, NormKind::HMinusHalf, 1);
  const auto b = sectoriality_sweep(op, grid, NormKind::HMinusHalf, 4);
  REQUIRE(a.table.size() == b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    CHECK(a.table[i].lambda == b.table[i].lambda);
    CHECK(a.table[i].value == b.table[i].value);
  }
}

TEST_CASE("sectoriality rejects the right half-plane") {
  const auto mesh = testing::disk(0.3);
  const DtnOperator op(mesh, preset_laplace_shift(-1.0), 0.0);
  const std::vector<Complex> bad{Complex(0.5, 0.0)};
  CHECK_THROWS_AS(sectoriality_sweep(op, bad, NormKind::L2), DomainError);
}

TEST_CASE("operator Hoelder estimate") {
  const auto mesh = testing::disk(0.2);
  const std::vector<double> bases{0.0, 0.5, 1.0, 2.0};
  SUBCASE("time-constant family") {
    const std::vector<double> times{0.0, 1.0, 3.0};
    CHECK(operator_holder_estimate(mesh, preset_laplace_shift(-1.0), times).sup == 0.0);
  }
  SUBCASE("oscillating family is stable under spacing halving") {
    const auto fam = preset_oscillating(-1.0, 0.5, 1.0);
    const auto coarse = operator_holder_estimate(mesh, fam, spaced_pairs(bases, 0.1), 1.0);
    const auto fine = operator_holder_estimate(mesh, fam, spaced_pairs(bases, 0.05), 1.0);
    CHECK(std::isfinite(coarse.sup));
    CHECK(coarse.sup > 0.0);
    CHECK(relative_change(coarse.sup, fine.sup) <= 0.20);
    // |t - s| <= 1 gives |t - s|^{1/2} >= |t - s|, so the halved exponent cannot enlarge the quotient.
    const auto half = operator_holder_estimate(mesh, fam, spaced_pairs(bases, 0.1), 0.5);
    CHECK(half.sup <= coarse.sup);
  }
}

TEST_CASE("pair helpers") {
  const std::vector<double> times{0.0, 1.0, 2.0};
  CHECK(all_pairs(times).size() == 3);
  const auto sp = spaced_pairs(times, 0.25);
  REQUIRE(sp.size() == 3);
  CHECK(sp[2] == std::pair<double, double>(2.0, 2.25));
}

TEST_CASE("Yagi condition") {
  const auto mesh = testing::disk(0.2);
  const std::vector<double> bases{0.0, 1.0, 2.0};
  const std::vector<double> spacings{0.1, 0.05};
  SUBCASE("time-constant family") {
    const auto r = yagi_condition_check(mesh, preset_laplace_shift(-1.0), 0.4, 1.0, bases, spacings);
    CHECK(r.sup <= 1e-10);  // rounding in I - S_t S_s^{-1} only
  }
  SUBCASE("oscillating family") {
    const auto r = yagi_condition_check(mesh, preset_oscillating(-1.0, 0.3, 1.0), 0.4, 1.0, bases, spacings);
    CHECK(std::isfinite(r.sup));
    CHECK(r.sup > 0.0);
    CHECK(r.pass);
    CHECK(r.sups.size() == 2);
    CHECK(r.table.size() == bases.size() * spacings.size());
  }
  SUBCASE("exponent window") {
    const auto fam = preset_oscillating(-1.0, 0.3, 1.0);
    CHECK_THROWS_AS(yagi_condition_check(mesh, fam, 0.6, 1.0, bases, spacings), InvalidParameter);
    CHECK_THROWS_AS(yagi_condition_check(mesh, fam, 0.4, 0.5, bases, spacings), InvalidParameter);
    CHECK_THROWS_AS(yagi_condition_check(mesh, fam, 0.1, 0.8, bases, spacings), InvalidParameter);
  }
}

TEST_CASE("coercivity constant") {
  const auto mesh = testing::disk(0.15);
  CHECK(coercivity_constant(*mesh, preset_laplace_shift(-1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  for (double t : {0.0, 0.5, 1.5, 4.0})
    CHECK(coercivity_constant(*mesh, preset_oscillating(-1.0, 0.5, 1.0), t) >= 0.5 - 1e-10);
  CHECK(coercivity_constant(*mesh, transformed_family(identity_motion(), -1.0), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  const double dil = coercivity_constant(*mesh, transformed_family(radial_dilation_exp(0.1, 1.0), -1.0), 0.0);
  CHECK(dil >= 0.25);
}

TEST_CASE("coercivity via inverse iteration on larger meshes") {
  const auto mesh = testing::disk(0.035);
  REQUIRE(mesh->num_vertices() > 2500);
  CHECK(coercivity_constant(*mesh, preset_laplace_shift(-1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(coercivity_constant(*mesh, preset_oscillating(-1.0, 0.5, 1.0), 0.5) >= 0.5 - 1e-6);
}

TEST_CASE("relative change") {
  CHECK(relative_change(0.0, 0.0) == 0.0);
  CHECK(relative_change(1.0, 2.0) == 0.5);
  CHECK(relative_change(2.0, 1.0) == 0.5);
}
