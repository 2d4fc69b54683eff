#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "dynbc/assembly.hpp"
#include "dynbc/errors.hpp"
#include "helpers.hpp"

using namespace dynbc;

namespace {

DenseMatrix dense(const SparseMatrix& m) { return DenseMatrix(m); }

CoefficientFamily laplace_only() {
  CoefficientFamily f = preset_laplace_shift(-1.0);
  CoefficientSample s;  // a = I, no lower-order terms
  f.finite = [s](double, const Point&) { return s; };
  f.limit = [s](const Point&) { return s; };
  return f;
}

}  // namespace

TEST_CASE("reference triangle stiffness") {
  const TriMesh m = testing::reference_triangle();
  const DenseMatrix K = dense(assemble_form(m, laplace_only(), 0.0).matrix);
  DenseMatrix expected(3, 3);
  expected << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
  CHECK(testing::max_abs(K - expected) <= 1e-15);
}

TEST_CASE("reference triangle with shift adds the exact P1 mass") {
  const TriMesh m = testing::reference_triangle();
  const DenseMatrix K = dense(assemble_form(m, preset_laplace_shift(-2.0), 0.0).matrix);
  DenseMatrix stiff(3, 3), mass(3, 3);
  stiff << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
  mass << 2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2.0;
  mass *= 0.5 / 12.0;
  CHECK(testing::max_abs(K - (stiff + 2.0 * mass)) <= 1e-15);
}

TEST_CASE("symmetric families assemble symmetric matrices; constants lie in the stiffness kernel") {
  const auto mesh = testing::disk(0.2);
  const DenseMatrix K = dense(assemble_form(*mesh, preset_oscillating(-1.0, 0.5, 1.0), 0.7).matrix);
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const DenseMatrix L = dense(assemble_form(*mesh, laplace_only(), 0.0).matrix);
  CHECK((L * Vector::Ones(L.rows())).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("mass matrix rows sum to the domain area") {
  // K(shift) - K(no shift) is d times the bulk mass.
  const auto mesh = testing::disk(0.15);
  const DenseMatrix K1 = dense(assemble_form(*mesh, preset_laplace_shift(-1.0), 0.0).matrix);
  const DenseMatrix K0 = dense(assemble_form(*mesh, laplace_only(), 0.0).matrix);
  const DenseMatrix M = K1 - K0;
  CHECK(M.sum() == doctest::Approx(total_area(*mesh)).epsilon(1e-12));
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("boundary mass of a single edge") {
  const TriMesh m = testing::reference_triangle();
  const DenseMatrix Mb = dense(assemble_boundary_mass(m).matrix);
  REQUIRE(Mb.rows() == 3);
  // Slots follow the boundary vertex order; edge 0-1 has unit length.
  const int s0 = m.boundary_slot[0], s1 = m.boundary_slot[1], s2 = m.boundary_slot[2];
  const double hyp = std::sqrt(2.0);
  CHECK(Mb(s0, s1) == doctest::Approx(1.0 / 6.0));
  CHECK(Mb(s1, s2) == doctest::Approx(hyp / 6.0));
  CHECK(Mb(s0, s0) == doctest::Approx(1.0 / 3.0 + 1.0 / 3.0));
  CHECK(Mb.sum() == doctest::Approx(2.0 + hyp));

  const TriMesh sq = generate_square_mesh(1.0, 1);
  const DenseMatrix Ms = dense(assemble_boundary_mass(sq).matrix);
  CHECK(Ms.sum() == doctest::Approx(4.0).epsilon(1e-14));
  for (Eigen::Index i = 0; i < Ms.rows(); ++i) CHECK(Ms(i, i) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("boundary mass integrates constants and traces") {
  const auto mesh = testing::disk(0.1);
  const auto Mb = assemble_boundary_mass(*mesh);
  CHECK(Mb.domain == Space::BoundaryTrace);
  CHECK(Mb.codomain == Space::BoundaryDual);
  const Vector one = Vector::Ones(mesh->num_boundary());
  CHECK(one.dot(Mb.matrix * one) == doctest::Approx(boundary_length(*mesh)).epsilon(1e-13));
  const SparseMatrix bulk = boundary_mass_bulk(*mesh);
  CHECK(bulk.rows() == mesh->num_vertices());
  CHECK(DenseMatrix(bulk).sum() == doctest::Approx(boundary_length(*mesh)).epsilon(1e-13));
}

TEST_CASE("H1 gram equals the laplace_shift(-1) form") {
  const auto mesh = testing::disk(0.2);
  const auto G = assemble_h1_gram(*mesh);
  const auto K = assemble_form(*mesh, preset_laplace_shift(-1.0), 0.0);
  CHECK(testing::max_abs(dense(G.matrix) - dense(K.matrix)) == 0.0);
}

TEST_CASE("shifted forms") {
  const auto mesh = testing::disk(0.25);
  const auto fam = preset_advection(-1.0, Vec2(0.3, 0.1));
  const DenseMatrix K = dense(assemble_form(*mesh, fam, 0.0).matrix);
  const DenseMatrix Mb = dense(boundary_mass_bulk(*mesh));

  CHECK(testing::max_abs(dense(assemble_form_shifted(*mesh, fam, 0.0, 0.0).matrix) - K) == 0.0);
  CHECK(testing::max_abs(dense(assemble_form_shifted(*mesh, fam, 0.0, -1.0).matrix) - (K + Mb)) <= 1e-15);

  const auto Ki = assemble_form_shifted(*mesh, fam, 0.0, Complex(0.0, 1.0));
  const Eigen::MatrixXcd C = Eigen::MatrixXcd(Ki.matrix);
  CHECK(testing::max_abs(DenseMatrix(C.real()) - K) == 0.0);
  CHECK(testing::max_abs(DenseMatrix(C.imag()) + Mb) <= 1e-15);

  CHECK_THROWS_AS(assemble_form_shifted(*mesh, fam, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(assemble_form_shifted(*mesh, fam, 0.0, Complex(0.1, 1.0)), DomainError);
}

TEST_CASE("embed and trace") {
  const auto mesh = testing::disk(0.25);
  const BoundaryDual F(testing::random_vector(mesh->num_boundary(), 3));
  const Vector e = embed_k(*mesh, F);
  CHECK(e.size() == mesh->num_vertices());
  for (int v : mesh->interior_vertices) CHECK(e[v] == 0.0);
  CHECK(trace(*mesh, e).values == F.values);

  const Vector u = testing::random_vector(mesh->num_vertices(), 4);
  const BoundaryField g = trace(*mesh, u);
  // <embed F, u> = <F, trace u>
  CHECK(e.dot(u) == doctest::Approx(F.values.dot(g.values)).epsilon(1e-14));
  CHECK_THROWS_AS(trace(*mesh, Vector(Vector::Zero(3))), InvalidParameter);
}

TEST_CASE("adjoint family assembles the transpose") {
  const auto mesh = testing::disk(0.2);
  const auto fam = preset_advection(-1.0, Vec2(0.4, -0.3));
  const DenseMatrix K = dense(assemble_form(*mesh, fam, 0.0).matrix);
  const DenseMatrix Ks = dense(assemble_form(*mesh, adjoint_family(fam), 0.0).matrix);
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-3);
  CHECK(testing::max_abs(Ks - K.transpose()) <= 1e-15);
}

TEST_CASE("assembly is deterministic") {
  const auto mesh = testing::disk(0.1);
  const auto fam = preset_oscillating(-1.0, 0.5, 1.0);
  const SparseMatrix a = assemble_form(*mesh, fam, 1.3).matrix;
  const SparseMatrix b = assemble_form(*mesh, fam, 1.3).matrix;
  CHECK(testing::max_abs(dense(a) - dense(b)) == 0.0);
  std::ostringstream sa, sb;
  write_matrix_market(sa, a);
  write_matrix_market(sb, b);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("non-finite coefficients are reported") {
  const auto mesh = testing::disk(0.3);
  CoefficientFamily bad = preset_laplace_shift(-1.0);
  bad.finite = [](double, const Point&) {
    CoefficientSample s;
    s.d = std::numeric_limits<double>::quiet_NaN();
    return s;
  };
  CHECK_THROWS_AS(assemble_form(*mesh, bad, 0.0), AssemblyError);
}

TEST_CASE("operator composition checks spaces") {
  const auto mesh = testing::disk(0.3);
  const auto K = assemble_form(*mesh, preset_laplace_shift(-1.0), 0.0);
  const auto Mb = assemble_boundary_mass(*mesh);
  CHECK_THROWS_AS(compose(Mb, K), InvalidParameter);
  CHECK(space_name(Space::Bulk) == "bulk-H1");
}
