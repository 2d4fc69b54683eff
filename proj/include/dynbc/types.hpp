#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dynbc {

using Complex = std::complex<double>;
using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXd;
using CDenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using CSparseMatrix = Eigen::SparseMatrix<Complex>;

template <class Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// The t = infinity snapshot of a time-indexed family.
inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

inline bool is_infinite_time(double t) { return t == kInfiniteTime; }

/// Nodal values indexed by the mesh boundary vertices (an H^{1/2} or
/// L^2(boundary) representative).
template <class Scalar = double>
struct BasicBoundaryField {
  VectorT<Scalar> values;

  BasicBoundaryField() = default;
  explicit BasicBoundaryField(VectorT<Scalar> v) : values(std::move(v)) {}
  Eigen::Index size() const { return values.size(); }
};

/// Coefficients <F, phi_b> against the boundary nodal basis (an H^{-1/2}
/// representative). Kept distinct from BoundaryField so that every
/// conversion through the boundary mass matrix is explicit.
template <class Scalar = double>
struct BasicBoundaryDual {
  VectorT<Scalar> values;

  BasicBoundaryDual() = default;
  explicit BasicBoundaryDual(VectorT<Scalar> v) : values(std::move(v)) {}
  Eigen::Index size() const { return values.size(); }
};

using BoundaryField = BasicBoundaryField<double>;
using BoundaryDual = BasicBoundaryDual<double>;
using ComplexBoundaryField = BasicBoundaryField<Complex>;
using ComplexBoundaryDual = BasicBoundaryDual<Complex>;

}  // namespace dynbc
