#include "mdt/distortion.hpp"

#include <cmath>

namespace mdt {

double fisher_distortion(const Matrix& a) {
  Vector sigma = singular_values(a);
  return std::sqrt(sigma.array().log().square().sum());
}

double fisher_distance(const SpdMatrix& p, const SpdMatrix& q) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch("fisher_distance: dimensions differ");
  }
  // With p = Lp Lp^t and q = Lq Lq^t, the congruence p^{-1/2} q p^{-1/2}
  // is similar to (Lp^{-1} Lq)(Lp^{-1} Lq)^t, so its eigenvalues are the
  // squared singular values of Lp^{-1} Lq.  Working on the factors keeps
  // the accuracy at cond(L) rather than cond(p).
  Eigen::LLT<Matrix> llt_p(p.mat());
  Eigen::LLT<Matrix> llt_q(q.mat());
  if (llt_p.info() != Eigen::Success || llt_q.info() != Eigen::Success) {
    throw NotPositiveDefinite("fisher_distance: Cholesky failed");
  }
  Matrix lp = llt_p.matrixL();
  Matrix m = lp.triangularView<Eigen::Lower>().solve(Matrix(llt_q.matrixL()));
  Eigen::JacobiSVD<Matrix> svd(m);
  return 2.0 * std::sqrt(svd.singularValues().array().log().square().sum());
}

double pullback_distance(const LowerTriangularPD& l1,
                         const LowerTriangularPD& l2) {
  if (l1.dim() != l2.dim()) {
    throw DimensionMismatch("pullback_distance: dimensions differ");
  }
  return fisher_distance(cholesky_map(l1), cholesky_map(l2));
}

DistortionBreakdown distortion_breakdown_2d(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw UnsupportedDimension("distortion breakdown is defined for dim 2");
  }
  Vector sigma = singular_values(a);  // descending, so sigma(0) >= sigma(1)
  DistortionBreakdown out;
  out.total = std::sqrt(sigma.array().log().square().sum());
  out.angular = std::abs(std::log(sigma(0) / sigma(1)));
  out.areal = std::abs(std::log(sigma(0) * sigma(1)));
  return out;
}

}  // namespace mdt
