#pragma once

#include "mdt/core_linalg.hpp"

namespace mdt {

/// Affine map x -> A x + b.
struct AffineTransform {
  Matrix linear;
  Vector translation;
};

/// Fisher distortion split into its 2D angular and areal components.
struct DistortionBreakdown {
  double total = 0.0;
  double angular = 0.0;
  double areal = 0.0;
};

/// sqrt(sum log^2 sigma_i) over the singular values of a; zero exactly
/// on orthogonal maps.
double fisher_distortion(const Matrix& a);

/// Affine-invariant (Fisher) distance on P_n^+, computed through the
/// symmetric congruence p^{-1/2} q p^{-1/2}.
double fisher_distance(const SpdMatrix& p, const SpdMatrix& q);

/// Pullback of the Fisher metric onto L_n^+ through the Cholesky map.
double pullback_distance(const LowerTriangularPD& l1,
                         const LowerTriangularPD& l2);

/// Angular/areal split of the distortion of a 2D map. With singular
/// values s1 >= s2: angular = |log(s1/s2)|, areal = |log(s1 s2)|.
DistortionBreakdown distortion_breakdown_2d(const Matrix& a);

}  // namespace mdt
