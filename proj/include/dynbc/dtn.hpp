#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "dynbc/assembly.hpp"
#include "dynbc/coeffs.hpp"
#include "dynbc/elliptic.hpp"
#include "dynbc/mesh.hpp"

namespace dynbc {

/// The discrete Dirichlet-to-Neumann operator A(t): boundary values to
/// boundary duals, A g = weak conormal of the discretely harmonic extension
/// of g. Its matrix is the Schur complement K_bb - K_bi K_ii^{-1} K_ib.
///
/// Copies share one cache (assembled matrices, factorizations, materialized
/// matrix); all const members are safe to call concurrently.
class DtnOperator {
 public:
  DtnOperator(std::shared_ptr<const TriMesh> mesh, CoefficientFamily family, double t);

  const TriMesh& mesh() const { return *state_->mesh; }
  std::shared_ptr<const TriMesh> mesh_ptr() const { return state_->mesh; }
  const CoefficientFamily& family() const { return state_->family; }
  double time() const { return state_->t; }

  const RealOperator& bulk() const { return state_->K; }
  const BlockSystem<double>& system() const { return *state_->system; }
  const SparseMatrix& boundary_mass() const { return state_->Mb; }

  BoundaryDual apply(const BoundaryField& g) const;

  /// Dense boundary matrix, column b = apply(e_b). Throws SizeError above
  /// the dense cap.
  const DenseMatrix& matrix() const;

  /// A^{-1} F = trace(B_N^{-1} k(F)).
  BoundaryField inverse_apply(const BoundaryDual& F) const;

  /// (A - lambda)^{-1} F through the shifted form a_{t,lambda}; Re(lambda) <= 0.
  ComplexBoundaryField resolvent_apply(Complex lambda, const ComplexBoundaryDual& F) const;
  BoundaryField resolvent_apply(double lambda, const BoundaryDual& F) const;

  /// Operator of the adjoint family.
  DtnOperator adjoint() const;

  /// Harmonic extension of g (the Dirichlet solve).
  Vector harmonic_extension(const BoundaryField& g) const;

  bool symmetric() const { return state_->family.symmetric; }

 private:
  struct State {
    std::shared_ptr<const TriMesh> mesh;
    CoefficientFamily family;
    double t = 0.0;
    RealOperator K;
    SparseMatrix Mb;
    std::unique_ptr<BlockSystem<double>> system;
    mutable std::once_flag matrix_once;
    mutable DenseMatrix matrix;
    mutable std::mutex shifted_mutex;
    mutable std::map<std::pair<double, double>, std::shared_ptr<BlockSystem<Complex>>> shifted;
  };
  std::shared_ptr<State> state_;
};

BoundaryDual dtn_apply(const DtnOperator& op, const BoundaryField& g);
const DenseMatrix& dtn_matrix(const DtnOperator& op);
BoundaryField dtn_inverse_apply(const DtnOperator& op, const BoundaryDual& F);
ComplexBoundaryField dtn_resolvent_apply(const DtnOperator& op, Complex lambda,
                                         const ComplexBoundaryDual& F);
DtnOperator dtn_adjoint(const DtnOperator& op);

// ---------------------------------------------------------------------------
// Fractional powers.

enum class FractionalMethod { Balakrishnan, Spectral };

/// Quadrature for A^{-theta} = sin(theta pi)/pi int_0^inf rho^{-theta} (rho + A)^{-1} d rho.
/// rho = e^s, composite Gauss-Legendre on [s_min, s_max]; the two tails are
/// added in closed form from their Neumann series (tail_terms terms each).
struct BalakrishnanRule {
  double s_min;
  double s_max;
  int points_per_unit;
  int tail_terms;

  static BalakrishnanRule standard();
};

/// A^{-theta} on the L^2(boundary) realization A = M^{-1} S. Each column of
/// `duals` is a boundary dual F; the result column is the boundary field
/// A^{-theta} (M^{-1} F). theta in ]0, 1[.
DenseMatrix fractional_power_apply(const DtnOperator& op, double theta, const DenseMatrix& duals,
                                   FractionalMethod method,
                                   const BalakrishnanRule& rule = BalakrishnanRule::standard());

BoundaryField fractional_power_apply(const DtnOperator& op, double theta, const BoundaryDual& F,
                                     FractionalMethod method,
                                     const BalakrishnanRule& rule = BalakrishnanRule::standard());

/// Dense boundary-sized pieces shared by the fractional and verification code.
struct BoundaryPencil {
  DenseMatrix S;  // DtN matrix
  DenseMatrix M;  // boundary mass
};
BoundaryPencil boundary_pencil(const DtnOperator& op);

/// Generalized eigenpairs S v = mu M v of a symmetric pencil, ascending, with
/// M-orthonormal eigenvectors.
struct SymmetricSpectrum {
  Vector values;
  DenseMatrix vectors;
};
SymmetricSpectrum symmetric_spectrum(const DtnOperator& op);

}  // namespace dynbc
