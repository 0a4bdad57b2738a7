#include "mdt/frechet.hpp"

#include "mdt/distortion.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mdt {

namespace {

struct SqrtPair {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SqrtPair sqrt_pair(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  if (es.info() != Eigen::Success) {
    throw ConvergenceFailure("eigensolver failed inside the Karcher solver");
  }
  const Matrix& v = es.eigenvectors();
  return {v * es.eigenvalues().array().sqrt().matrix().asDiagonal() * v.transpose(),
          v * es.eigenvalues().array().rsqrt().matrix().asDiagonal() * v.transpose()};
}

// Sum of logs of X^{-1/2} P_i X^{-1/2} (the negative Karcher gradient up
// to a factor) and the objective sum d_F^2(X, P_i), in one pass.
void tangent_stats(const Matrix& inv_sqrt, const std::vector<SpdMatrix>& points,
                   Matrix* tangent_sum, double* objective) {
  tangent_sum->setZero();
  *objective = 0.0;
  for (const SpdMatrix& p : points) {
    Matrix log_m = spd_log(SpdMatrix(inv_sqrt * p.mat() * inv_sqrt));
    *tangent_sum += log_m;
    *objective += log_m.squaredNorm();
  }
}

}  // namespace

MeanResult karcher_mean(const std::vector<SpdMatrix>& points,
                        const KarcherConfig& config) {
  if (points.empty()) {
    throw EmptyInput("karcher_mean: no input points");
  }
  const Eigen::Index n = points.front().dim();
  Matrix x = Matrix::Zero(n, n);
  for (const SpdMatrix& p : points) {
    if (p.dim() != n) {
      throw DimensionMismatch("karcher_mean: mixed dimensions");
    }
    x += p.mat();
  }
  x /= static_cast<double>(points.size());

  const double num = static_cast<double>(points.size());
  Matrix tangent_sum(n, n);
  double objective = 0.0;
  SqrtPair sp = sqrt_pair(x);
  tangent_stats(sp.inv_sqrt, points, &tangent_sum, &objective);

  int iterations = 0;
  double grad_norm = tangent_sum.norm();
  while (grad_norm > config.gradient_tolerance * std::max(1.0, x.norm())) {
    if (iterations >= config.max_iterations) {
      throw NoConvergence("karcher_mean: iteration cap reached", iterations,
                          grad_norm);
    }
    struct Candidate {
      Matrix x;
      SqrtPair sp;
      Matrix tangent_sum;
      double objective;
      double grad_norm;
    };
    auto evaluate = [&](double step) {
      Candidate c;
      Matrix update = spd_exp((step / num) * tangent_sum).mat();
      c.x = sp.sqrt * update * sp.sqrt;
      c.x = 0.5 * (c.x + c.x.transpose());
      c.sp = sqrt_pair(c.x);
      c.tangent_sum.resize(n, n);
      tangent_stats(c.sp.inv_sqrt, points, &c.tangent_sum, &c.objective);
      c.grad_norm = c.tangent_sum.norm();
      return c;
    };
    // slack so candidates tied at rounding level compare by gradient instead
    const double slack = 1e-12 * (1.0 + objective);
    // The plain unit step zigzags on spread-out inputs; probing a short
    // bracket of step lengths each iteration restores a fast linear rate.
    Candidate best = evaluate(config.initial_step);
    for (double factor : {0.5, 2.0}) {
      Candidate c = evaluate(factor * config.initial_step);
      const bool clearly_better = c.objective < best.objective - slack;
      const bool tied = std::abs(c.objective - best.objective) <= slack;
      if (clearly_better || (tied && c.grad_norm < best.grad_norm)) {
        best = std::move(c);
      }
    }
    if (best.objective > objective + slack) {
      // none of the probes descends: fall back to plain backtracking
      double step = config.initial_step * config.backtrack_factor;
      for (int backtrack = 0; backtrack < 40; ++backtrack) {
        best = evaluate(step);
        if (best.objective <= objective + slack) break;
        step *= config.backtrack_factor;
      }
    }
    x = std::move(best.x);
    sp = std::move(best.sp);
    tangent_sum = std::move(best.tangent_sum);
    objective = best.objective;
    grad_norm = best.grad_norm;
    ++iterations;
  }
  return {SpdMatrix(x), iterations, grad_norm, objective};
}

SpdMatrix geodesic_midpoint(const SpdMatrix& p, const SpdMatrix& q) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch("geodesic_midpoint: dimensions differ");
  }
  SqrtPair sp = sqrt_pair(p.mat());
  Matrix inner = spd_sqrt(SpdMatrix(sp.inv_sqrt * q.mat() * sp.inv_sqrt)).mat();
  return SpdMatrix(sp.sqrt * inner * sp.sqrt);
}

double frechet_objective(const SpdMatrix& candidate,
                         const std::vector<SpdMatrix>& points) {
  double sum = 0.0;
  for (const SpdMatrix& p : points) {
    const double d = fisher_distance(candidate, p);
    sum += d * d;
  }
  return sum;
}

}  // namespace mdt
