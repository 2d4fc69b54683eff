#include "dynbc/elliptic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <cmath>
#include <string>

#include "dynbc/config.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/log.hpp"

namespace dynbc {

namespace {

template <class Scalar>
Eigen::SparseMatrix<Scalar> select_block(const Eigen::SparseMatrix<Scalar>& K,
                                         const std::vector<int>& row_slot, int n_rows,
                                         const std::vector<int>& col_slot, int n_cols) {
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (int k = 0; k < K.outerSize(); ++k)
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(K, k); it; ++it) {
      const int r = row_slot[it.row()], c = col_slot[it.col()];
      if (r >= 0 && c >= 0) triplets.emplace_back(r, c, it.value());
    }
  Eigen::SparseMatrix<Scalar> out(n_rows, n_cols);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

template <class Solver>
void check_factorization(const Solver& lu, const char* what) {
  if (lu.info() != Eigen::Success)
    throw SolverError(std::string(what) +
                      ": factorization failed (singular block?). Check that the coefficient family "
                      "is coercive, e.g. with verify coercivity.");
}

}  // namespace

template <class Scalar>
BlockSystem<Scalar>::BlockSystem(std::shared_ptr<const TriMesh> mesh, Sparse K, LinearSolver solver)
    : mesh_(std::move(mesh)), K_(std::move(K)), solver_(solver) {
  const int n = mesh_->num_vertices();
  if (K_.rows() != n || K_.cols() != n) throw InvalidParameter("BlockSystem: matrix/mesh size mismatch");
  if constexpr (!std::is_same_v<Scalar, double>) {
    if (solver_ == LinearSolver::ConjugateGradient)
      throw UnsupportedMethod("conjugate gradient path is for real SPD systems only");
  }
  const auto& bs = mesh_->boundary_slot;
  const auto& is = mesh_->interior_slot;
  const int nb = mesh_->num_boundary(), ni = mesh_->num_interior();
  Kii_ = select_block(K_, is, ni, is, ni);
  Kib_ = select_block(K_, is, ni, bs, nb);
  Kbi_ = select_block(K_, bs, nb, is, ni);
  Kbb_ = select_block(K_, bs, nb, bs, nb);
}

template <class Scalar>
void BlockSystem<Scalar>::ensure_interior() const {
  std::call_once(interior_once_, [this] {
    if (Kii_.rows() == 0) return;
    interior_lu_.analyzePattern(Kii_);
    interior_lu_.factorize(Kii_);
    check_factorization(interior_lu_, "interior (Dirichlet) block");
  });
}

template <class Scalar>
void BlockSystem<Scalar>::ensure_full() const {
  std::call_once(full_once_, [this] {
    full_lu_.analyzePattern(K_);
    full_lu_.factorize(K_);
    check_factorization(full_lu_, "full (Neumann) matrix");
  });
}

namespace {

Vector cg_solve(const SparseMatrix& A, const Vector& rhs) {
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(config::kCgRelativeTol);
  cg.setMaxIterations(static_cast<Eigen::Index>(
      std::ceil(config::kCgIterationFactor * std::sqrt(static_cast<double>(A.rows())))));
  cg.compute(A);
  Vector x = cg.solve(rhs);
  if (cg.info() != Eigen::Success)
    throw SolverError("conjugate gradient did not converge in " + std::to_string(cg.iterations()) +
                      " iterations (error " + std::to_string(cg.error()) + ")");
  return x;
}

}  // namespace

template <class Scalar>
typename BlockSystem<Scalar>::Dense BlockSystem<Scalar>::interior_response(const Dense& G) const {
  if (Kii_.rows() == 0) return Dense(0, G.cols());
  ensure_interior();
  Dense rhs = -(Kib_ * G);
  Dense X = interior_lu_.solve(rhs);
  if (interior_lu_.info() != Eigen::Success) throw SolverError("interior solve failed");
  return X;
}

template <class Scalar>
typename BlockSystem<Scalar>::Vec BlockSystem<Scalar>::solve_dirichlet(const Vec& g) const {
  const auto& m = *mesh_;
  if (g.size() != m.num_boundary()) throw InvalidParameter("solve_dirichlet: boundary data has wrong length");
  Vec u(m.num_vertices());
  for (int b = 0; b < m.num_boundary(); ++b) u[m.boundary_vertices[b]] = g[b];
  if (m.num_interior() > 0) {
    Vec ui;
    if constexpr (std::is_same_v<Scalar, double>) {
      if (solver_ == LinearSolver::ConjugateGradient) {
        ui = cg_solve(Kii_, -(Kib_ * g));
      }
    }
    if (ui.size() == 0) ui = interior_response(g);
    for (int i = 0; i < m.num_interior(); ++i) u[m.interior_vertices[i]] = ui[i];
  }
  return u;
}

template <class Scalar>
typename BlockSystem<Scalar>::Vec BlockSystem<Scalar>::solve_full(const Vec& rhs) const {
  if constexpr (std::is_same_v<Scalar, double>) {
    if (solver_ == LinearSolver::ConjugateGradient) return cg_solve(K_, rhs);
  }
  ensure_full();
  Vec u = full_lu_.solve(rhs);
  if (full_lu_.info() != Eigen::Success) throw SolverError("full solve failed");
  return u;
}

template <class Scalar>
typename BlockSystem<Scalar>::Vec BlockSystem<Scalar>::boundary_rows(const Vec& u) const {
  const Vec Ku = K_ * u;
  Vec out(mesh_->num_boundary());
  for (int b = 0; b < mesh_->num_boundary(); ++b) out[b] = Ku[mesh_->boundary_vertices[b]];
  return out;
}

template <class Scalar>
double BlockSystem<Scalar>::interior_residual(const Vec& u) const {
  const Vec Ku = K_ * u;
  double r = 0.0;
  for (int v : mesh_->interior_vertices) r = std::max(r, static_cast<double>(std::abs(Ku[v])));
  return r;
}

template class BlockSystem<double>;
template class BlockSystem<Complex>;

Vector lift(const TriMesh& mesh, const BoundaryField& g) {
  if (g.size() != mesh.num_boundary()) throw InvalidParameter("lift: boundary data has wrong length");
  Vector u = Vector::Zero(mesh.num_vertices());
  for (int b = 0; b < mesh.num_boundary(); ++b) u[mesh.boundary_vertices[b]] = g.values[b];
  return u;
}

Vector solve_dirichlet(std::shared_ptr<const TriMesh> mesh, const RealOperator& K,
                       const BoundaryField& g, LinearSolver solver) {
  BlockSystem<double> sys(std::move(mesh), K.matrix, solver);
  return sys.solve_dirichlet(g.values);
}

Vector solve_neumann(std::shared_ptr<const TriMesh> mesh, const RealOperator& K,
                     const BoundaryDual& F, LinearSolver solver) {
  const Vector rhs = embed_k(*mesh, F);
  BlockSystem<double> sys(std::move(mesh), K.matrix, solver);
  return sys.solve_full(rhs);
}

BoundaryDual weak_conormal(const TriMesh& mesh, const RealOperator& K, const Vector& u) {
  if (u.size() != mesh.num_vertices()) throw InvalidParameter("weak_conormal: bulk vector has wrong length");
  const Vector Ku = K.matrix * u;
  double interior = 0.0;
  for (int v : mesh.interior_vertices) interior = std::max(interior, std::abs(Ku[v]));
  const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  if (interior > 1e-8 * scale)
    log::warn("weak_conormal: argument is not discretely harmonic (interior residual " +
              std::to_string(interior) + "); returning the generalized conormal");
  Vector out(mesh.num_boundary());
  for (int b = 0; b < mesh.num_boundary(); ++b) out[b] = Ku[mesh.boundary_vertices[b]];
  return BoundaryDual(std::move(out));
}

}  // namespace dynbc
