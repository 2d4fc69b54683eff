#pragma once

#include <iosfwd>
#include <string>

#include "dynbc/coeffs.hpp"
#include "dynbc/mesh.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Function space a matrix index runs over.
enum class Space { Bulk, BulkDual, BoundaryTrace, BoundaryDual };

std::string_view space_name(Space s);

/// Sparse matrix labelled with its column (domain) and row (codomain) spaces.
template <class Scalar>
struct SparseOperator {
  Eigen::SparseMatrix<Scalar> matrix;
  Space domain = Space::Bulk;
  Space codomain = Space::BulkDual;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

using RealOperator = SparseOperator<double>;
using ComplexOperator = SparseOperator<Complex>;

/// outer * inner; throws InvalidParameter when inner's codomain is not
/// outer's domain.
RealOperator compose(const RealOperator& outer, const RealOperator& inner);

/// K(t)_{pq} = a_t(phi_q, phi_p) with P1 hats. Triangle quadrature is the
/// 3-point edge-midpoint rule; coefficients are sampled at quadrature points.
RealOperator assemble_form(const TriMesh& mesh, const CoefficientFamily& family, double t);

/// Boundary mass M_b, indexed by boundary slot: each edge of length L adds
/// L/3 on the diagonal and L/6 off it.
RealOperator assemble_boundary_mass(const TriMesh& mesh);

/// H^1 Gram matrix: int grad u . grad v + u v.
RealOperator assemble_h1_gram(const TriMesh& mesh);

/// T^T M_b T as a bulk-sized matrix (T = boundary trace selection).
SparseMatrix boundary_mass_bulk(const TriMesh& mesh);

/// K(t) - lambda T^T M_b T, the discrete form a_{t,lambda}. Requires
/// Re(lambda) <= 0 (throws DomainError otherwise).
ComplexOperator assemble_form_shifted(const TriMesh& mesh, const CoefficientFamily& family,
                                      double t, Complex lambda);
RealOperator assemble_form_shifted(const TriMesh& mesh, const CoefficientFamily& family, double t,
                                   double lambda);

/// Bulk functional of the boundary dual F: boundary entries F_b, interior 0.
template <class Scalar>
VectorT<Scalar> embed_k(const TriMesh& mesh, const BasicBoundaryDual<Scalar>& F);

/// Restriction of a bulk vector to the boundary vertices.
template <class Scalar>
BasicBoundaryField<Scalar> trace(const TriMesh& mesh, const VectorT<Scalar>& u);

/// Boundary nodal samples of f.
template <class Fn>
BoundaryField sample_boundary(const TriMesh& mesh, Fn&& f) {
  Vector v(mesh.num_boundary());
  for (int b = 0; b < mesh.num_boundary(); ++b) v[b] = f(mesh.vertices[mesh.boundary_vertices[b]]);
  return BoundaryField(std::move(v));
}

/// Matrix Market coordinate dump (real general).
void write_matrix_market(std::ostream& out, const SparseMatrix& m);

}  // namespace dynbc
