#pragma once

#include <Eigen/Dense>
#include <utility>

#include "mdt/errors.hpp"

namespace mdt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest accepted condition number for "invertible" inputs.
inline constexpr double kMaxCondition = 1e12;

// Throws if m is not square, empty, or has non-finite entries.
void check_square(const Matrix& m);

/// Symmetric positive definite matrix, an element of P_n^+.
/// Symmetrized on construction; positive definiteness is checked.
class SpdMatrix {
 public:
  explicit SpdMatrix(Matrix m);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Lower triangular matrix with strictly positive diagonal, an element
/// of L_n^+ (the Cholesky-factor group).
class LowerTriangularPD {
 public:
  explicit LowerTriangularPD(Matrix m);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Orthogonal matrix together with the sign of its determinant.
class OrthogonalMatrix {
 public:
  explicit OrthogonalMatrix(Matrix m);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  int determinant_sign() const { return det_sign_; }

 private:
  Matrix m_;
  int det_sign_;
};

/// Unique factorization A = L Q with L in L_n^+ and Q orthogonal.
/// Computed from a Householder QR of A^t with the diagonal signs of L
/// fixed to be positive.
std::pair<LowerTriangularPD, OrthogonalMatrix> lq_decompose(const Matrix& a);

/// Cholesky factor: the unique L in L_n^+ with L L^t = p.
LowerTriangularPD cholesky_factor(const SpdMatrix& p);

/// The map L -> L L^t from L_n^+ onto P_n^+.
SpdMatrix cholesky_map(const LowerTriangularPD& l);

struct SpdEigen {
  Vector values;  // ascending, all > 0
  OrthogonalMatrix vectors;
};

SpdEigen spd_eigen(const SpdMatrix& p);

/// Matrix logarithm of an SPD matrix (symmetric result).
Matrix spd_log(const SpdMatrix& p);

/// Matrix exponential of a symmetric matrix (SPD result).
SpdMatrix spd_exp(const Matrix& sym);

/// Principal SPD square root.
SpdMatrix spd_sqrt(const SpdMatrix& p);

/// Singular values of an invertible matrix, descending.
Vector singular_values(const Matrix& a);

/// Principal logarithm of a rotation, dim 2 or 3 only. Skew-symmetric;
/// the 2D angle lies in (-pi, pi].
Matrix so_log(const OrthogonalMatrix& q);

/// Exponential of a skew-symmetric matrix, dim 2 or 3 only.
OrthogonalMatrix so_exp(const Matrix& skew);

}  // namespace mdt
