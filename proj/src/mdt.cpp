#include "mdt/mdt.hpp"

#include "mdt/distortion.hpp"

namespace mdt {

double total_distortion(const Matrix& reference,
                        const std::vector<Matrix>& transforms) {
  check_square(reference);
  Matrix ref_inv = reference.inverse();
  double sum = 0.0;
  for (const Matrix& a : transforms) {
    if (a.rows() != reference.rows()) {
      throw DimensionMismatch("total_distortion: mixed dimensions");
    }
    const double d = fisher_distortion(ref_inv * a);
    sum += d * d;
  }
  return sum;
}

MdtResult compute_mdt(const std::vector<Matrix>& transforms,
                      const KarcherConfig& config) {
  if (transforms.empty()) {
    throw EmptyInput("mdt: no input transforms");
  }
  std::vector<SpdMatrix> gram;
  gram.reserve(transforms.size());
  for (const Matrix& a : transforms) {
    singular_values(a);  // invertibility gate
    gram.emplace_back(a * a.transpose());
  }
  MeanResult solved = karcher_mean(gram, config);
  LowerTriangularPD t = cholesky_factor(solved.mean);

  MdtResult out{std::move(t), 0.0, {}, std::move(solved)};
  out.objective = total_distortion(out.transform.mat(), transforms);
  out.baseline_objectives.reserve(transforms.size());
  for (const Matrix& a : transforms) {
    out.baseline_objectives.push_back(total_distortion(a, transforms));
  }
  return out;
}

}  // namespace mdt
