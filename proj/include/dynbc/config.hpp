#pragma once

#include <cstddef>

namespace dynbc::config {

// Residual tolerances shared by solvers and their tests.
inline constexpr double kResidualTol = 1e-10;
inline constexpr double kCgRelativeTol = 1e-12;
inline constexpr double kCgIterationFactor = 10.0;  // max iterations = factor * sqrt(DOF)

// Largest boundary DOF count for which DtN matrices are materialized.
inline constexpr std::size_t kDenseBoundaryCap = 4096;
// Largest bulk DOF count for dense brute-force work.
inline constexpr std::size_t kDenseBulkCap = 2000;
// Above this bulk size coercivity falls back to inverse iteration.
inline constexpr std::size_t kDenseCoercivityCap = 2500;
inline constexpr int kInversePowerIterations = 200;
inline constexpr double kInversePowerTol = 1e-8;

// Balakrishnan quadrature: rho = e^s, composite Gauss-Legendre on [s_min, s_max].
inline constexpr double kBalakrishnanSMin = -12.0;
inline constexpr double kBalakrishnanSMax = 12.0;
inline constexpr int kBalakrishnanPointsPerUnit = 32;
inline constexpr int kBalakrishnanTailTerms = 3;

// Stability thresholds for refinement / pair-spacing comparisons.
inline constexpr double kSectorialityRefinementTol = 0.10;
inline constexpr double kHolderSpacingTol = 0.20;
inline constexpr double kYagiSpacingTol = 0.50;

// Motion checks.
inline constexpr double kNormalSpeedResidualTol = 1e-8;
inline constexpr double kMaxNormalSpeed = 0.5;

}  // namespace dynbc::config
