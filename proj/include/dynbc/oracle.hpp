#pragma once

#include <vector>

#include "dynbc/types.hpp"

namespace dynbc::oracle {

/// Modified Bessel function I_k(x) by its power series; x in [0, 30].
double bessel_I(int k, double x);

/// Eigenvalue of the disk DtN map for -Delta - lambda on mode k:
/// mu_k = kappa I_k'(kappa) / I_k(kappa), kappa = sqrt(-lambda).
double disk_dtn_eigenvalue(double lambda, int k);

/// e^{-mu_k t}: decay of mode k under du/dt + A u = 0.
double exact_mode_decay(double lambda, int k, double t);

/// Brute-force Schur complement K_bb - K_bi K_ii^{-1} K_ib with dense
/// factorization. `boundary` lists the boundary indices in output order;
/// every other index is interior. Total size capped at 2000.
DenseMatrix dense_schur_dtn(const SparseMatrix& K, const std::vector<int>& boundary);

}  // namespace dynbc::oracle
