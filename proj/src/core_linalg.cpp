#include "mdt/core_linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace mdt {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

void check_square(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch("matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw Error("matrix has non-finite entries");
  }
}

SpdMatrix::SpdMatrix(Matrix m) {
  check_square(m);
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw NotPositiveDefinite("matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("eigensolver failed on SPD check");
  }
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw NotPositiveDefinite("smallest eigenvalue is not positive");
  }
}

LowerTriangularPD::LowerTriangularPD(Matrix m) {
  check_square(m);
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (m(i, i) <= 0.0) {
      throw NotPositiveDefinite("diagonal entry must be positive");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (m(i, j) != 0.0) {
        throw Error("entry above the diagonal must be exactly zero");
      }
    }
  }
  m_ = std::move(m);
}

OrthogonalMatrix::OrthogonalMatrix(Matrix m) {
  check_square(m);
  const Eigen::Index n = m.rows();
  if ((m * m.transpose() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error("matrix is not orthogonal");
  }
  det_sign_ = m.determinant() > 0.0 ? 1 : -1;
  m_ = std::move(m);
}

Vector singular_values(const Matrix& a) {
  check_square(a);
  Eigen::JacobiSVD<Matrix> svd(a);
  Vector sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (smin <= static_cast<double>(a.rows()) * kEps * smax ||
      smax > kMaxCondition * smin) {
    throw SingularMatrix("matrix is singular or too ill-conditioned");
  }
  return sigma;
}

std::pair<LowerTriangularPD, OrthogonalMatrix> lq_decompose(const Matrix& a) {
  singular_values(a);  // invertibility gate
  const Eigen::Index n = a.rows();
  // A^t = Q_r R  =>  A = R^t Q_r^t, with R^t lower triangular.
  Eigen::HouseholderQR<Matrix> qr(a.transpose());
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix q = qr.householderQ();
  Matrix l = r.transpose();
  Matrix qt = q.transpose();
  // Fix signs so every diagonal entry of L is positive: A = (L D)(D Q).
  for (Eigen::Index i = 0; i < n; ++i) {
    if (l(i, i) < 0.0) {
      l.col(i) = -l.col(i);
      qt.row(i) = -qt.row(i);
    }
  }
  // Scrub rounding noise above the diagonal.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) l(i, j) = 0.0;
  }
  return {LowerTriangularPD(std::move(l)), OrthogonalMatrix(std::move(qt))};
}

LowerTriangularPD cholesky_factor(const SpdMatrix& p) {
  Eigen::LLT<Matrix> llt(p.mat());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky pivot not positive");
  }
  Matrix l = llt.matrixL();
  return LowerTriangularPD(std::move(l));
}

SpdMatrix cholesky_map(const LowerTriangularPD& l) {
  return SpdMatrix(l.mat() * l.mat().transpose());
}

SpdEigen spd_eigen(const SpdMatrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.mat());
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("self-adjoint eigensolver did not converge");
  }
  Matrix v = es.eigenvectors();
  if (v.determinant() < 0.0) v.col(0) = -v.col(0);
  return {es.eigenvalues(), OrthogonalMatrix(std::move(v))};
}

Matrix spd_log(const SpdMatrix& p) {
  SpdEigen eig = spd_eigen(p);
  const Matrix& v = eig.vectors.mat();
  Matrix s = v * eig.values.array().log().matrix().asDiagonal() * v.transpose();
  return 0.5 * (s + s.transpose());
}

SpdMatrix spd_exp(const Matrix& sym) {
  check_square(sym);
  const double scale = std::max(sym.cwiseAbs().maxCoeff(), 1.0);
  if ((sym - sym.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error("spd_exp requires a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sym + sym.transpose()));
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("self-adjoint eigensolver did not converge");
  }
  if (es.eigenvalues().maxCoeff() > 700.0) {
    throw OverflowError("eigenvalue exceeds the exponent range");
  }
  const Matrix& v = es.eigenvectors();
  return SpdMatrix(v * es.eigenvalues().array().exp().matrix().asDiagonal() *
                   v.transpose());
}

SpdMatrix spd_sqrt(const SpdMatrix& p) {
  SpdEigen eig = spd_eigen(p);
  const Matrix& v = eig.vectors.mat();
  return SpdMatrix(v * eig.values.array().sqrt().matrix().asDiagonal() *
                   v.transpose());
}

Matrix so_log(const OrthogonalMatrix& q) {
  if (q.determinant_sign() < 0) {
    throw ReflectionNotSupported("logarithm of a reflection is undefined");
  }
  const Eigen::Index n = q.dim();
  const Matrix& m = q.mat();
  if (n == 2) {
    const double theta = std::atan2(m(1, 0), m(0, 0));
    Matrix s(2, 2);
    s << 0.0, -theta, theta, 0.0;
    return s;
  }
  if (n == 3) {
    // Rodrigues inverse: axis from the skew part, angle from the trace.
    const double c = std::clamp((m.trace() - 1.0) / 2.0, -1.0, 1.0);
    const double theta = std::acos(c);
    Matrix s = Matrix::Zero(3, 3);
    if (theta < 1e-12) {
      return 0.5 * (m - m.transpose());  // first-order near identity
    }
    if (theta > M_PI - 1e-7) {
      // Near a half-turn the skew part degenerates; recover the axis
      // from (R + I)/2 = aa^t at theta = pi.
      Eigen::Vector3d a;
      Matrix b = 0.5 * (m + Matrix::Identity(3, 3));
      int k;
      b.diagonal().maxCoeff(&k);
      a = b.col(k) / std::sqrt(b(k, k));
      s << 0.0, -a(2), a(1), a(2), 0.0, -a(0), -a(1), a(0), 0.0;
      return theta * s;
    }
    s = theta / (2.0 * std::sin(theta)) * (m - m.transpose());
    return s;
  }
  throw UnsupportedDimension("so_log supports dimensions 2 and 3 only");
}

OrthogonalMatrix so_exp(const Matrix& skew) {
  check_square(skew);
  const double scale = std::max(skew.cwiseAbs().maxCoeff(), 1.0);
  if ((skew + skew.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error("so_exp requires a skew-symmetric matrix");
  }
  const Eigen::Index n = skew.rows();
  if (n == 2) {
    const double theta = skew(1, 0);
    Matrix m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return OrthogonalMatrix(std::move(m));
  }
  if (n == 3) {
    const double theta =
        Eigen::Vector3d(skew(2, 1), skew(0, 2), skew(1, 0)).norm();
    Matrix i = Matrix::Identity(3, 3);
    if (theta < 1e-12) {
      Eigen::HouseholderQR<Matrix> qr(i + skew);  // re-orthogonalize
      Matrix m = qr.householderQ();
      Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int k = 0; k < 3; ++k) {
        if (r(k, k) < 0.0) m.col(k) = -m.col(k);
      }
      return OrthogonalMatrix(std::move(m));
    }
    Matrix m = i + std::sin(theta) / theta * skew +
               (1.0 - std::cos(theta)) / (theta * theta) * (skew * skew);
    return OrthogonalMatrix(std::move(m));
  }
  throw UnsupportedDimension("so_exp supports dimensions 2 and 3 only");
}

}  // namespace mdt
