#pragma once

#include <vector>

#include "mdt/frechet.hpp"

namespace mdt {

struct MdtResult {
  LowerTriangularPD transform;  // canonical lower-triangular representative
  double objective = 0.0;       // sum of Dist_F^2(T^{-1} A_i)
  std::vector<double> baseline_objectives;  // objective with each A_j as reference
  MeanResult solver;
};

/// Mean Distorting Transformation of a set of invertible linear maps:
/// the reference frame minimizing the total squared Fisher distortion.
/// Any T Q with Q orthogonal attains the same objective; the returned
/// representative is the lower-triangular one.
MdtResult compute_mdt(const std::vector<Matrix>& transforms,
                      const KarcherConfig& config = {});

/// Total squared Fisher distortion of the set seen from a fixed reference.
double total_distortion(const Matrix& reference,
                        const std::vector<Matrix>& transforms);

}  // namespace mdt
