#pragma once

#include <memory>
#include <mutex>

#include <Eigen/SparseLU>

#include "dynbc/assembly.hpp"
#include "dynbc/mesh.hpp"

namespace dynbc {

enum class LinearSolver { SparseDirect, ConjugateGradient };

/// Boundary/interior partition of a bulk operator with lazily computed,
/// cached factorizations of the interior block (Dirichlet solves) and of the
/// full matrix (Neumann solves). Factorization is serialized; solves may run
/// concurrently afterwards.
template <class Scalar>
class BlockSystem {
 public:
  using Sparse = Eigen::SparseMatrix<Scalar>;
  using Vec = VectorT<Scalar>;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BlockSystem(std::shared_ptr<const TriMesh> mesh, Sparse K,
              LinearSolver solver = LinearSolver::SparseDirect);

  const TriMesh& mesh() const { return *mesh_; }
  const Sparse& full() const { return K_; }
  const Sparse& interior_interior() const { return Kii_; }
  const Sparse& interior_boundary() const { return Kib_; }
  const Sparse& boundary_interior() const { return Kbi_; }
  const Sparse& boundary_boundary() const { return Kbb_; }

  /// Bulk vector with trace g and zero residual at interior rows.
  Vec solve_dirichlet(const Vec& g) const;

  /// Interior values -K_ii^{-1} K_ib G for a block of boundary columns.
  Dense interior_response(const Dense& G) const;

  /// Full solve K u = rhs.
  Vec solve_full(const Vec& rhs) const;

  /// Boundary rows of K u.
  Vec boundary_rows(const Vec& u) const;

  /// Max-norm of the interior rows of K u.
  double interior_residual(const Vec& u) const;

 private:
  void ensure_interior() const;
  void ensure_full() const;

  std::shared_ptr<const TriMesh> mesh_;
  Sparse K_, Kii_, Kib_, Kbi_, Kbb_;
  LinearSolver solver_;
  mutable std::once_flag interior_once_, full_once_;
  mutable Eigen::SparseLU<Sparse> interior_lu_, full_lu_;
};

/// Discrete extension operator: boundary entries g, interior entries 0.
Vector lift(const TriMesh& mesh, const BoundaryField& g);

/// Discrete B_{t,D} route: u with trace g, P(t)u = 0 in the interior.
Vector solve_dirichlet(std::shared_ptr<const TriMesh> mesh, const RealOperator& K,
                       const BoundaryField& g, LinearSolver solver = LinearSolver::SparseDirect);

/// Discrete B_{t,N}^{-1} k: K u = embed_k(F).
Vector solve_neumann(std::shared_ptr<const TriMesh> mesh, const RealOperator& K,
                     const BoundaryDual& F, LinearSolver solver = LinearSolver::SparseDirect);

/// <C u, phi_b> = a_t(u, phi_b) = (K u)_b. For u that is not discretely
/// harmonic this is a generalized conormal; a warning is logged.
BoundaryDual weak_conormal(const TriMesh& mesh, const RealOperator& K, const Vector& u);

}  // namespace dynbc
