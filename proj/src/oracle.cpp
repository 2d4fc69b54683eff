#include "dynbc/oracle.hpp"

#include <cmath>

#include "dynbc/config.hpp"
#include "dynbc/errors.hpp"

namespace dynbc::oracle {

double bessel_I(int k, double x) {
  if (k < 0) k = -k;  // I_{-k} = I_k for integer order
  if (x < 0.0 || x > 30.0) throw RangeError("bessel_I: x must lie in [0, 30] (series regime)");
  // First term (x/2)^k / k!.
  double term = 1.0;
  for (int j = 1; j <= k; ++j) term *= (0.5 * x) / j;
  double sum = term;
  const double q = 0.25 * x * x;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * (m + k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double disk_dtn_eigenvalue(double lambda, int k) {
  if (!(lambda < 0.0)) throw InvalidParameter("disk_dtn_eigenvalue: lambda must be < 0");
  if (k < 0) throw InvalidParameter("disk_dtn_eigenvalue: mode must be >= 0");
  const double kappa = std::sqrt(-lambda);
  const double ik = bessel_I(k, kappa);
  const double derivative = bessel_I(k - 1, kappa) - (k / kappa) * ik;
  return kappa * derivative / ik;
}

double exact_mode_decay(double lambda, int k, double t) {
  if (t < 0.0) throw InvalidParameter("exact_mode_decay: t must be >= 0");
  return std::exp(-disk_dtn_eigenvalue(lambda, k) * t);
}

DenseMatrix dense_schur_dtn(const SparseMatrix& K, const std::vector<int>& boundary) {
  const Eigen::Index n = K.rows();
  if (static_cast<std::size_t>(n) > config::kDenseBulkCap)
    throw SizeError("dense_schur_dtn: system too large for dense brute force");
  std::vector<int> is_boundary(n, -1);
  for (std::size_t b = 0; b < boundary.size(); ++b) is_boundary[boundary[b]] = static_cast<int>(b);
  std::vector<int> interior;
  for (Eigen::Index v = 0; v < n; ++v)
    if (is_boundary[v] < 0) interior.push_back(static_cast<int>(v));

  const DenseMatrix A = DenseMatrix(K);
  const Eigen::Index nb = static_cast<Eigen::Index>(boundary.size());
  const Eigen::Index ni = static_cast<Eigen::Index>(interior.size());
  DenseMatrix Kbb(nb, nb), Kbi(nb, ni), Kib(ni, nb), Kii(ni, ni);
  for (Eigen::Index r = 0; r < nb; ++r) {
    for (Eigen::Index c = 0; c < nb; ++c) Kbb(r, c) = A(boundary[r], boundary[c]);
    for (Eigen::Index c = 0; c < ni; ++c) Kbi(r, c) = A(boundary[r], interior[c]);
  }
  for (Eigen::Index r = 0; r < ni; ++r) {
    for (Eigen::Index c = 0; c < nb; ++c) Kib(r, c) = A(interior[r], boundary[c]);
    for (Eigen::Index c = 0; c < ni; ++c) Kii(r, c) = A(interior[r], interior[c]);
  }
  if (ni == 0) return Kbb;
  Eigen::FullPivLU<DenseMatrix> lu(Kii);
  if (!lu.isInvertible()) throw SolverError("dense_schur_dtn: interior block is singular");
  return Kbb - Kbi * lu.solve(Kib);
}

}  // namespace dynbc::oracle
