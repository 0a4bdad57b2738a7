#pragma once

#include <vector>

#include "mdt/core_linalg.hpp"

namespace mdt {

struct KarcherConfig {
  int max_iterations = 200;
  double gradient_tolerance = 1e-12;  // relative to the iterate's scale
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
};

struct MeanResult {
  SpdMatrix mean;
  int iterations = 0;
  double final_gradient_norm = 0.0;
  double objective = 0.0;  // sum of squared Fisher distances to the inputs
};

/// Frechet (Karcher) mean of SPD matrices under the Fisher metric.
/// Fixed-point iteration with monotone-descent backtracking, started
/// from the arithmetic mean.
MeanResult karcher_mean(const std::vector<SpdMatrix>& points,
                        const KarcherConfig& config = {});

/// Closed-form geodesic midpoint p^{1/2}(p^{-1/2} q p^{-1/2})^{1/2} p^{1/2};
/// the two-point Frechet mean.
SpdMatrix geodesic_midpoint(const SpdMatrix& p, const SpdMatrix& q);

/// Sum of squared Fisher distances from candidate to every point.
double frechet_objective(const SpdMatrix& candidate,
                         const std::vector<SpdMatrix>& points);

}  // namespace mdt
