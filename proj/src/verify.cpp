#include "dynbc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <Eigen/SparseCholesky>

#include "dynbc/assembly.hpp"
#include "dynbc/config.hpp"
#include "dynbc/elliptic.hpp"
#include "dynbc/errors.hpp"

namespace dynbc {

double NormSystem::l2_norm(const Vector& u) const { return std::sqrt(std::max(0.0, u.dot(M * u))); }
double NormSystem::half_norm(const Vector& z) const { return std::sqrt(std::max(0.0, z.dot(S_half * z))); }
double NormSystem::dual_norm(const Vector& F) const { return std::sqrt(std::max(0.0, F.dot(S_half_inv * F))); }

NormSystem build_norm_system(std::shared_ptr<const TriMesh> mesh) {
  const TriMesh& m = *mesh;
  const Eigen::Index nb = m.num_boundary();
  NormSystem ns;
  ns.M = DenseMatrix(assemble_boundary_mass(m).matrix);
  ns.G = assemble_h1_gram(m).matrix;
  const BlockSystem<double> ref(mesh, assemble_form(m, preset_laplace_shift(-1.0), 0.0).matrix);
  ns.L = DenseMatrix::Zero(m.num_vertices(), nb);
  for (Eigen::Index b = 0; b < nb; ++b) ns.L(m.boundary_vertices[b], b) = 1.0;
  if (m.num_interior() > 0) {
    const DenseMatrix X = ref.interior_response(DenseMatrix::Identity(nb, nb));
    for (int i = 0; i < m.num_interior(); ++i) ns.L.row(m.interior_vertices[i]) = X.row(i);
  }
  ns.S_half = ns.L.transpose() * (ns.G * ns.L);
  ns.S_half = 0.5 * (ns.S_half + ns.S_half.transpose()).eval();
  Eigen::LLT<DenseMatrix> llt(ns.S_half);
  if (llt.info() != Eigen::Success) throw SolverError("H^{1/2} surrogate Gram is not positive definite");
  ns.S_half_inv = llt.solve(DenseMatrix::Identity(nb, nb));
  ns.S_half_inv = 0.5 * (ns.S_half_inv + ns.S_half_inv.transpose()).eval();
  return ns;
}

GramFactor::GramFactor(const DenseMatrix& gram) {
  Eigen::LLT<DenseMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw SolverError("opnorm: Gram matrix is not positive definite");
  L = llt.matrixL();
}

double opnorm(const CDenseMatrix& A, const GramFactor& domain, const GramFactor& codomain) {
  if (A.rows() != codomain.L.rows() || A.cols() != domain.L.rows())
    throw InvalidParameter("opnorm: Gram sizes do not match the operator");
  if (static_cast<std::size_t>(std::max(A.rows(), A.cols())) > config::kDenseBoundaryCap)
    throw SizeError("opnorm: matrix exceeds the dense cap");
  // X = Lc^T A Ld^{-T}; computed as X^T = Ld^{-1} (Lc^T A)^T.
  const CDenseMatrix Y = codomain.L.transpose().cast<Complex>() * A;
  const CDenseMatrix Xt = domain.L.cast<Complex>().triangularView<Eigen::Lower>().solve(Y.transpose());
  Eigen::BDCSVD<CDenseMatrix> svd(Xt);
  return svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
}

double opnorm(const DenseMatrix& A, const DenseMatrix& domain_gram, const DenseMatrix& codomain_gram) {
  return opnorm(A.cast<Complex>().eval(), GramFactor(domain_gram), GramFactor(codomain_gram));
}

std::vector<Complex> default_lambda_grid() {
  std::vector<double> re{0.0};
  for (int k = 0; k < 8; ++k) re.push_back(-std::pow(10.0, -2.0 + k * 6.0 / 7.0));
  const std::vector<double> im{0.0, 1e-2, -1e-2, 1.0, -1.0, 1e2, -1e2, 1e4, -1e4};
  std::vector<Complex> grid;
  for (double r : re)
    for (double i : im) grid.emplace_back(r, i);
  return grid;
}

CDenseMatrix dense_resolvent(const BoundaryPencil& pencil, Complex lambda) {
  if (lambda.real() > 0.0) throw DomainError("resolvent: Re(lambda) > 0");
  const CDenseMatrix Mc = pencil.M.cast<Complex>();
  const CDenseMatrix shifted = lambda * Mc - pencil.S.cast<Complex>();
  return shifted.partialPivLu().solve(Mc);
}

SectorialityResult sectoriality_sweep(const BoundaryPencil& pencil, const NormSystem& norms,
                                      std::span<const Complex> grid, NormKind norm, int threads) {
  for (const auto& l : grid)
    if (l.real() > 0.0) throw DomainError("sectoriality sweep: grid point with Re(lambda) > 0");
  const GramFactor gram(norm == NormKind::L2 ? norms.M : norms.S_half_inv);
  const CDenseMatrix Mc = pencil.M.cast<Complex>();
  const CDenseMatrix Sc = pencil.S.cast<Complex>();

  SectorialityResult res;
  res.table.resize(grid.size());
  auto evaluate = [&](std::size_t k) {
    const Complex lambda = grid[k];
    const Eigen::PartialPivLU<CDenseMatrix> lu(lambda * Mc - Sc);
    const CDenseMatrix R = norm == NormKind::L2 ? CDenseMatrix(lu.solve(Mc))
                                                : CDenseMatrix(Mc * lu.solve(CDenseMatrix::Identity(Mc.rows(), Mc.cols())));
    res.table[k] = {lambda, (1.0 + std::abs(lambda)) * opnorm(R, gram, gram)};
  };

  const int n_threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, grid.size())));
  if (n_threads == 1) {
    for (std::size_t k = 0; k < grid.size(); ++k) evaluate(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int i = 0; i < n_threads; ++i)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next++) < grid.size();) {
          try {
            evaluate(k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  for (const auto& e : res.table) res.sup = std::max(res.sup, e.value);
  return res;
}

SectorialityResult sectoriality_sweep(const DtnOperator& op, std::span<const Complex> grid, NormKind norm,
                                      int threads) {
  return sectoriality_sweep(boundary_pencil(op), build_norm_system(op.mesh_ptr()), grid, norm, threads);
}

std::vector<std::pair<double, double>> all_pairs(std::span<const double> times) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = i + 1; j < times.size(); ++j) out.emplace_back(times[i], times[j]);
  return out;
}

std::vector<std::pair<double, double>> spaced_pairs(std::span<const double> bases, double spacing) {
  std::vector<std::pair<double, double>> out;
  for (double b : bases) out.emplace_back(b, b + spacing);
  return out;
}

namespace {

class OperatorCache {
 public:
  OperatorCache(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family)
      : mesh_(std::move(mesh)), family_(family) {}

  const DtnOperator& at(double t) {
    auto it = ops_.find(t);
    if (it == ops_.end()) it = ops_.emplace(t, DtnOperator(mesh_, family_, t)).first;
    return it->second;
  }

 private:
  std::shared_ptr<const TriMesh> mesh_;
  const CoefficientFamily& family_;
  std::map<double, DtnOperator> ops_;
};

}  // namespace

PairEstimate operator_holder_estimate(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                      std::span<const std::pair<double, double>> pairs, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParameter("holder estimate: alpha must lie in ]0, 1]");
  const NormSystem norms = build_norm_system(mesh);
  const GramFactor half(norms.S_half);
  const GramFactor dual(norms.S_half_inv);
  OperatorCache ops(mesh, family);
  PairEstimate est;
  for (const auto& [t, s] : pairs) {
    if (t == s) continue;
    const DenseMatrix diff = ops.at(t).matrix() - ops.at(s).matrix();
    const double value = opnorm(diff.cast<Complex>().eval(), half, dual) / std::pow(std::abs(t - s), alpha);
    est.table.push_back({t, s, value});
    est.sup = std::max(est.sup, value);
  }
  return est;
}

PairEstimate operator_holder_estimate(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                      std::span<const double> times) {
  if (times.size() < 2) throw InvalidParameter("holder estimate: need at least two times");
  const auto pairs = all_pairs(times);
  return operator_holder_estimate(std::move(mesh), family, pairs, family.alpha);
}

YagiResult yagi_condition_check(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family, double nu,
                                double alpha, std::span<const double> bases, std::span<const double> spacings,
                                FractionalMethod method) {
  if (!(alpha > 0.5 && alpha <= 1.0)) throw InvalidParameter("yagi: alpha must lie in ]1/2, 1]");
  if (!(nu > 1.0 - alpha && nu < 0.5)) throw InvalidParameter("yagi: nu must lie in ]1 - alpha, 1/2[");
  if (spacings.empty()) throw InvalidParameter("yagi: need at least one pair spacing");
  OperatorCache ops(mesh, family);
  const DenseMatrix M = DenseMatrix(assemble_boundary_mass(*mesh).matrix);
  const GramFactor gram(M);

  YagiResult res;
  for (double spacing : spacings) {
    double sup = 0.0;
    for (const auto& [t, s] : spaced_pairs(bases, spacing)) {
      const DtnOperator& At = ops.at(t);
      const DtnOperator& As = ops.at(s);
      // A(t)^nu (A(t)^{-1} - A(s)^{-1}) = A(t)^{-(1 - nu)} M^{-1} (I - S_t S_s^{-1}) M.
      const DenseMatrix SsInvM = As.matrix().partialPivLu().solve(M);
      const DenseMatrix duals = M - At.matrix() * SsInvM;
      const DenseMatrix X = fractional_power_apply(At, 1.0 - nu, duals, method);
      const double value = opnorm(X.cast<Complex>().eval(), gram, gram) / std::pow(std::abs(t - s), alpha);
      res.table.push_back({t, s, value});
      sup = std::max(sup, value);
    }
    res.spacings.push_back(spacing);
    res.sups.push_back(sup);
  }
  res.sup = *std::max_element(res.sups.begin(), res.sups.end());
  const double lo = *std::min_element(res.sups.begin(), res.sups.end());
  res.pass = std::isfinite(res.sup) && relative_change(res.sup, lo) <= config::kYagiSpacingTol;
  return res;
}

double coercivity_constant(const TriMesh& mesh, const CoefficientFamily& family, double t) {
  const SparseMatrix K = assemble_form(mesh, family, t).matrix;
  const SparseMatrix Ks = 0.5 * (K + SparseMatrix(K.transpose()));
  const SparseMatrix G = assemble_h1_gram(mesh).matrix;
  if (static_cast<std::size_t>(mesh.num_vertices()) <= config::kDenseCoercivityCap) {
    Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix(Ks), DenseMatrix(G),
                                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("coercivity: generalized eigensolve failed");
    return es.eigenvalues()[0];
  }
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(Ks);
  if (ldlt.info() != Eigen::Success) throw SolverError("coercivity: factorization of sym K failed");
  Vector x = Vector::Ones(mesh.num_vertices());
  double mu = 0.0;
  for (int it = 0; it < config::kInversePowerIterations; ++it) {
    x = ldlt.solve(G * x);
    x /= std::sqrt(x.dot(G * x));
    const Vector Kx = Ks * x;
    mu = x.dot(Kx);
    if ((Kx - mu * (G * x)).norm() <= config::kInversePowerTol * Kx.norm()) return mu;
  }
  throw SolverError("coercivity: inverse iteration did not converge in " +
                    std::to_string(config::kInversePowerIterations) + " iterations");
}

namespace {

DenseMatrix random_fields(Eigen::Index rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  DenseMatrix X(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) X(i, j) = normal(rng);
  return X;
}

}  // namespace

double adjoint_fractional_identity_check(const DtnOperator& op, double theta, int trials, std::uint64_t seed,
                                         FractionalMethod method) {
  if (trials < 1) throw InvalidParameter("adjoint check: need at least one trial");
  std::mt19937_64 rng(seed);
  const Eigen::Index nb = op.mesh().num_boundary();
  const DenseMatrix U = random_fields(nb, trials, rng);
  const DenseMatrix V = random_fields(nb, trials, rng);
  const DenseMatrix M = DenseMatrix(op.boundary_mass());
  const DtnOperator adj = op.adjoint();
  const DenseMatrix X = fractional_power_apply(op, theta, M * U, method);
  const DenseMatrix Y = fractional_power_apply(adj, theta, M * V, method);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const double lhs = X.col(k).dot(M * V.col(k));
    const double rhs = U.col(k).dot(M * Y.col(k));
    const double scale = std::sqrt(U.col(k).dot(M * U.col(k)) * V.col(k).dot(M * V.col(k)));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double fractional_inverse_limit_check(const DtnOperator& op, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const DenseMatrix M = DenseMatrix(op.boundary_mass());
  const DenseMatrix U = random_fields(op.mesh().num_boundary(), trials, rng);
  const DenseMatrix X = fractional_power_apply(op, 1.0 - 1e-6, M * U, FractionalMethod::Balakrishnan);
  const DenseMatrix Y = op.matrix().partialPivLu().solve(M * U);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Vector d = X.col(k) - Y.col(k);
    worst = std::max(worst, std::sqrt(d.dot(M * d) / Y.col(k).dot(M * Y.col(k))));
  }
  return worst;
}

double norm_duality_discrepancy(const NormSystem& norms, const Vector& F) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(norms.S_half);
  if (es.info() != Eigen::Success) throw SolverError("duality check: eigensolve failed");
  const Vector w = (es.eigenvectors().transpose() * F).cwiseQuotient(es.eigenvalues().cwiseSqrt());
  return relative_change(w.norm(), norms.dual_norm(F));
}

double relative_change(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace dynbc
