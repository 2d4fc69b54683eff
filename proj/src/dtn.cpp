#include "dynbc/dtn.hpp"

#include "dynbc/config.hpp"
#include "dynbc/errors.hpp"

namespace dynbc {

DtnOperator::DtnOperator(std::shared_ptr<const TriMesh> mesh, CoefficientFamily family, double t)
    : state_(std::make_shared<State>()) {
  state_->mesh = std::move(mesh);
  state_->family = std::move(family);
  state_->t = t;
  state_->K = assemble_form(*state_->mesh, state_->family, t);
  state_->Mb = assemble_boundary_mass(*state_->mesh).matrix;
  state_->system = std::make_unique<BlockSystem<double>>(state_->mesh, state_->K.matrix);
}

Vector DtnOperator::harmonic_extension(const BoundaryField& g) const {
  return state_->system->solve_dirichlet(g.values);
}

BoundaryDual DtnOperator::apply(const BoundaryField& g) const {
  if (g.size() != mesh().num_boundary()) throw InvalidParameter("dtn apply: boundary data has wrong length");
  return BoundaryDual(state_->system->boundary_rows(harmonic_extension(g)));
}

const DenseMatrix& DtnOperator::matrix() const {
  const auto nb = static_cast<std::size_t>(mesh().num_boundary());
  if (nb > config::kDenseBoundaryCap)
    throw SizeError("dtn matrix: " + std::to_string(nb) + " boundary DOFs exceed the dense cap of " +
                    std::to_string(config::kDenseBoundaryCap) + "; use apply mode");
  std::call_once(state_->matrix_once, [this] {
    const auto& sys = *state_->system;
    const Eigen::Index n = mesh().num_boundary();
    DenseMatrix S = DenseMatrix(sys.boundary_boundary());
    if (mesh().num_interior() > 0) {
      const DenseMatrix X = sys.interior_response(DenseMatrix::Identity(n, n));
      S += sys.boundary_interior() * X;
    }
    state_->matrix = std::move(S);
  });
  return state_->matrix;
}

BoundaryField DtnOperator::inverse_apply(const BoundaryDual& F) const {
  if (F.size() != mesh().num_boundary()) throw InvalidParameter("dtn inverse: dual has wrong length");
  const Vector u = state_->system->solve_full(embed_k(mesh(), F));
  return trace(mesh(), u);
}

ComplexBoundaryField DtnOperator::resolvent_apply(Complex lambda, const ComplexBoundaryDual& F) const {
  if (lambda.real() > 0.0)
    throw DomainError("resolvent: Re(lambda) > 0 lies outside the sector where a_{t,lambda} is coercive");
  if (F.size() != mesh().num_boundary()) throw InvalidParameter("resolvent: dual has wrong length");
  std::shared_ptr<BlockSystem<Complex>> sys;
  {
    std::lock_guard lock(state_->shifted_mutex);
    auto& slot = state_->shifted[{lambda.real(), lambda.imag()}];
    if (!slot) {
      CSparseMatrix A = state_->K.matrix.cast<Complex>() -
                        lambda * boundary_mass_bulk(mesh()).cast<Complex>();
      slot = std::make_shared<BlockSystem<Complex>>(state_->mesh, std::move(A));
    }
    sys = slot;
  }
  const CVector u = sys->solve_full(embed_k(mesh(), F));
  return trace(mesh(), u);
}

BoundaryField DtnOperator::resolvent_apply(double lambda, const BoundaryDual& F) const {
  const ComplexBoundaryField r =
      resolvent_apply(Complex(lambda, 0.0), ComplexBoundaryDual(F.values.cast<Complex>()));
  return BoundaryField(r.values.real());
}

DtnOperator DtnOperator::adjoint() const {
  return DtnOperator(state_->mesh, adjoint_family(state_->family), state_->t);
}

BoundaryDual dtn_apply(const DtnOperator& op, const BoundaryField& g) { return op.apply(g); }
const DenseMatrix& dtn_matrix(const DtnOperator& op) { return op.matrix(); }
BoundaryField dtn_inverse_apply(const DtnOperator& op, const BoundaryDual& F) {
  return op.inverse_apply(F);
}
ComplexBoundaryField dtn_resolvent_apply(const DtnOperator& op, Complex lambda,
                                         const ComplexBoundaryDual& F) {
  return op.resolvent_apply(lambda, F);
}
DtnOperator dtn_adjoint(const DtnOperator& op) { return op.adjoint(); }

BoundaryPencil boundary_pencil(const DtnOperator& op) {
  return {op.matrix(), DenseMatrix(op.boundary_mass())};
}

SymmetricSpectrum symmetric_spectrum(const DtnOperator& op) {
  const auto pencil = boundary_pencil(op);
  const DenseMatrix S = 0.5 * (pencil.S + pencil.S.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(S, pencil.M);
  if (es.info() != Eigen::Success) throw SolverError("generalized eigensolve failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace dynbc
