#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "dynbc/coeffs.hpp"
#include "dynbc/dtn.hpp"
#include "dynbc/mesh.hpp"

namespace dynbc {

/// Discrete norms on boundary and bulk:
///   |u|_{L2}^2 = u^T M u,  |z|_{1/2}^2 = z^T S z,  |F|_{-1/2}^2 = F^T S^{-1} F,
/// with S = L^T G L and L the discretely harmonic extension of the
/// reference family laplace_shift(-1).
struct NormSystem {
  DenseMatrix M;
  SparseMatrix G;
  DenseMatrix L;
  DenseMatrix S_half;
  DenseMatrix S_half_inv;

  double l2_norm(const Vector& u) const;
  double half_norm(const Vector& z) const;
  double dual_norm(const Vector& F) const;
};

NormSystem build_norm_system(std::shared_ptr<const TriMesh> mesh);

/// Cholesky factor of an SPD Gram matrix.
struct GramFactor {
  DenseMatrix L;
  explicit GramFactor(const DenseMatrix& gram);
};

/// sup |A x|_C / |x|_D = sigma_max(C^{1/2} A D^{-1/2}).
double opnorm(const CDenseMatrix& A, const GramFactor& domain, const GramFactor& codomain);
double opnorm(const DenseMatrix& A, const DenseMatrix& domain_gram, const DenseMatrix& codomain_gram);

enum class NormKind { L2, HMinusHalf };

struct SectorialityEntry {
  Complex lambda;
  double value = 0.0;  // (1 + |lambda|) |(lambda - A)^{-1}|
};

struct SectorialityResult {
  double sup = 0.0;
  std::vector<SectorialityEntry> table;
};

/// 81 points: Re lambda in {0} and 8 log-spaced values in [-1e4, -1e-2],
/// Im lambda in {0, +-1e-2, +-1, +-1e2, +-1e4}.
std::vector<Complex> default_lambda_grid();

/// Dense boundary-size sweep of the resolvent of A = M^{-1} S. In L2 the
/// resolvent acts on fields, in H^{-1/2} on duals (M (lambda M - S)^{-1}).
/// Points are independent; `threads` > 1 splits them without changing the
/// output order.
SectorialityResult sectoriality_sweep(const BoundaryPencil& pencil, const NormSystem& norms,
                                      std::span<const Complex> grid, NormKind norm, int threads = 1);
SectorialityResult sectoriality_sweep(const DtnOperator& op, std::span<const Complex> grid, NormKind norm,
                                      int threads = 1);

/// Resolvent (lambda - A)^{-1} as a dense map on boundary fields.
CDenseMatrix dense_resolvent(const BoundaryPencil& pencil, Complex lambda);

struct PairValue {
  double t = 0.0;
  double s = 0.0;
  double value = 0.0;
};

struct PairEstimate {
  double sup = 0.0;
  std::vector<PairValue> table;
};

/// All unordered pairs of `times`.
std::vector<std::pair<double, double>> all_pairs(std::span<const double> times);

/// (b, b + spacing) for each base b.
std::vector<std::pair<double, double>> spaced_pairs(std::span<const double> bases, double spacing);

/// max over pairs of |S(t) - S(s)|_{H^{1/2} -> H^{-1/2}} / |t - s|^alpha.
PairEstimate operator_holder_estimate(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                      std::span<const std::pair<double, double>> pairs, double alpha);
PairEstimate operator_holder_estimate(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family,
                                      std::span<const double> times);

struct YagiResult {
  std::vector<double> spacings;
  std::vector<double> sups;  // one per spacing
  double sup = 0.0;
  bool pass = false;
  std::vector<PairValue> table;
};

/// sup |A(t)^nu (A(t)^{-1} - A(s)^{-1})|_{L2} / |t - s|^alpha over
/// spaced_pairs(bases, spacing) for each spacing. Passes when every sup is
/// finite and they agree within kYagiSpacingTol. Requires alpha in ]1/2, 1]
/// and nu in ]1 - alpha, 1/2[.
YagiResult yagi_condition_check(std::shared_ptr<const TriMesh> mesh, const CoefficientFamily& family, double nu,
                                double alpha, std::span<const double> bases, std::span<const double> spacings,
                                FractionalMethod method = FractionalMethod::Balakrishnan);

/// Smallest eigenvalue of sym K(t) in the H^1 metric.
double coercivity_constant(const TriMesh& mesh, const CoefficientFamily& family, double t);

/// max over random u, v of |<A^{-theta} u, v> - <u, (A*)^{-theta} v>| / (|u| |v|), L2 pairing.
double adjoint_fractional_identity_check(const DtnOperator& op, double theta, int trials, std::uint64_t seed,
                                         FractionalMethod method = FractionalMethod::Balakrishnan);

/// max over random u of |A^{-theta} u - A^{-1} u| / |A^{-1} u| for theta = 1 - 1e-6.
double fractional_inverse_limit_check(const DtnOperator& op, int trials, std::uint64_t seed);

/// Relative gap between sup_z <F, z>/|z|_{1/2} (dense eigendecomposition)
/// and sqrt(F^T S^{-1} F).
double norm_duality_discrepancy(const NormSystem& norms, const Vector& F);

/// |a - b| relative to the larger magnitude; 0 when both vanish.
double relative_change(double a, double b);

}  // namespace dynbc
