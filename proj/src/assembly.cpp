#include "dynbc/assembly.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dynbc/errors.hpp"
#include "dynbc/kernels.hpp"

namespace dynbc {

std::string_view space_name(Space s) {
  switch (s) {
    case Space::Bulk:
      return "bulk-H1";
    case Space::BulkDual:
      return "bulk-dual";
    case Space::BoundaryTrace:
      return "boundary-trace";
    case Space::BoundaryDual:
      return "boundary-dual";
  }
  return "?";
}

RealOperator compose(const RealOperator& outer, const RealOperator& inner) {
  if (outer.domain != inner.codomain)
    throw InvalidParameter("compose: space mismatch (" + std::string(space_name(inner.codomain)) +
                           " into " + std::string(space_name(outer.domain)) + ")");
  RealOperator r;
  r.matrix = outer.matrix * inner.matrix;
  r.domain = inner.domain;
  r.codomain = outer.codomain;
  return r;
}

namespace {

constexpr std::array<std::array<int, 2>, 3> kMidpointEdges{{{0, 1}, {1, 2}, {2, 0}}};

std::string describe_point(const Point& x) {
  std::ostringstream s;
  s << std::setprecision(17) << "(" << x.x() << ", " << x.y() << ")";
  return s.str();
}

void store_sample(kernels::ElementBatch& batch, std::size_t e, int g, const CoefficientSample& s) {
  const double values[9] = {s.a(0, 0), s.a(0, 1), s.a(1, 0), s.a(1, 1), s.b[0],
                            s.b[1],    s.c[0],    s.c[1],    s.d};
  for (int k = 0; k < 9; ++k) batch.coeffs[g * 9 + k][e] = values[k];
}

}  // namespace

RealOperator assemble_form(const TriMesh& mesh, const CoefficientFamily& family, double t) {
  const std::size_t nt = mesh.triangles.size();
  kernels::ElementBatch batch;
  batch.resize(nt);
  for (std::size_t e = 0; e < nt; ++e) {
    const auto& tri = mesh.triangles[e];
    for (int k = 0; k < 3; ++k) {
      batch.coords[2 * k][e] = mesh.vertices[tri[k]].x();
      batch.coords[2 * k + 1][e] = mesh.vertices[tri[k]].y();
    }
    for (int g = 0; g < 3; ++g) {
      const Point x =
          0.5 * (mesh.vertices[tri[kMidpointEdges[g][0]]] + mesh.vertices[tri[kMidpointEdges[g][1]]]);
      CoefficientSample s;
      try {
        s = family.at(t, x);
      } catch (const std::exception& ex) {
        throw AssemblyError("coefficient evaluation failed at t = " + std::to_string(t) +
                            ", x = " + describe_point(x) + ": " + ex.what());
      }
      if (!s.a.allFinite() || !s.b.allFinite() || !s.c.allFinite() || !std::isfinite(s.d))
        throw AssemblyError("non-finite coefficient at t = " + std::to_string(t) +
                            ", x = " + describe_point(x));
      store_sample(batch, e, g, s);
    }
  }

  kernels::ElementMatrices local;
  kernels::element_matrices(batch, local);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * nt);
  for (std::size_t e = 0; e < nt; ++e) {
    const auto& tri = mesh.triangles[e];
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) triplets.emplace_back(tri[p], tri[q], local.entries[p * 3 + q][e]);
  }
  const int n = mesh.num_vertices();
  RealOperator K;
  K.matrix.resize(n, n);
  K.matrix.setFromTriplets(triplets.begin(), triplets.end());
  K.domain = Space::Bulk;
  K.codomain = Space::BulkDual;
  return K;
}

RealOperator assemble_boundary_mass(const TriMesh& mesh) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& e : mesh.boundary_edges) {
    const double L = (mesh.vertices[e.j] - mesh.vertices[e.i]).norm();
    const int a = mesh.boundary_slot[e.i], b = mesh.boundary_slot[e.j];
    triplets.emplace_back(a, a, L / 3.0);
    triplets.emplace_back(b, b, L / 3.0);
    triplets.emplace_back(a, b, L / 6.0);
    triplets.emplace_back(b, a, L / 6.0);
  }
  const int nb = mesh.num_boundary();
  RealOperator M;
  M.matrix.resize(nb, nb);
  M.matrix.setFromTriplets(triplets.begin(), triplets.end());
  M.domain = Space::BoundaryTrace;
  M.codomain = Space::BoundaryDual;
  return M;
}

RealOperator assemble_h1_gram(const TriMesh& mesh) {
  static const CoefficientFamily reference = preset_laplace_shift(-1.0);
  return assemble_form(mesh, reference, 0.0);
}

SparseMatrix boundary_mass_bulk(const TriMesh& mesh) {
  const SparseMatrix Mb = assemble_boundary_mass(mesh).matrix;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k < Mb.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(Mb, k); it; ++it)
      triplets.emplace_back(mesh.boundary_vertices[it.row()], mesh.boundary_vertices[it.col()], it.value());
  SparseMatrix out(mesh.num_vertices(), mesh.num_vertices());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

ComplexOperator assemble_form_shifted(const TriMesh& mesh, const CoefficientFamily& family,
                                      double t, Complex lambda) {
  if (lambda.real() > 0.0)
    throw DomainError("assemble_form_shifted: Re(lambda) > 0 is outside the sector");
  const SparseMatrix K = assemble_form(mesh, family, t).matrix;
  ComplexOperator out;
  out.matrix = K.cast<Complex>() - lambda * boundary_mass_bulk(mesh).cast<Complex>();
  out.domain = Space::Bulk;
  out.codomain = Space::BulkDual;
  return out;
}

RealOperator assemble_form_shifted(const TriMesh& mesh, const CoefficientFamily& family, double t,
                                   double lambda) {
  if (lambda > 0.0) throw DomainError("assemble_form_shifted: lambda > 0 is outside the sector");
  RealOperator out = assemble_form(mesh, family, t);
  if (lambda != 0.0) out.matrix -= lambda * boundary_mass_bulk(mesh);
  return out;
}

template <class Scalar>
VectorT<Scalar> embed_k(const TriMesh& mesh, const BasicBoundaryDual<Scalar>& F) {
  if (F.size() != mesh.num_boundary()) throw InvalidParameter("embed_k: dual has wrong length");
  VectorT<Scalar> out = VectorT<Scalar>::Zero(mesh.num_vertices());
  for (int b = 0; b < mesh.num_boundary(); ++b) out[mesh.boundary_vertices[b]] = F.values[b];
  return out;
}

template <class Scalar>
BasicBoundaryField<Scalar> trace(const TriMesh& mesh, const VectorT<Scalar>& u) {
  if (u.size() != mesh.num_vertices()) throw InvalidParameter("trace: bulk vector has wrong length");
  VectorT<Scalar> out(mesh.num_boundary());
  for (int b = 0; b < mesh.num_boundary(); ++b) out[b] = u[mesh.boundary_vertices[b]];
  return BasicBoundaryField<Scalar>(std::move(out));
}

template Vector embed_k<double>(const TriMesh&, const BoundaryDual&);
template CVector embed_k<Complex>(const TriMesh&, const ComplexBoundaryDual&);
template BoundaryField trace<double>(const TriMesh&, const Vector&);
template ComplexBoundaryField trace<Complex>(const TriMesh&, const CVector&);

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  out << std::setprecision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

}  // namespace dynbc
