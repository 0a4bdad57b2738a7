#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdt/distortion.hpp"
#include "mdt/frechet.hpp"
#include "mdt/mdt.hpp"
#include "mdt/panorama.hpp"

namespace py = pybind11;

namespace {

mdt::KarcherConfig make_config(int max_iterations, double tolerance) {
  mdt::KarcherConfig cfg;
  cfg.max_iterations = max_iterations;
  cfg.gradient_tolerance = tolerance;
  return cfg;
}

std::vector<mdt::SpdMatrix> to_spd(const std::vector<mdt::Matrix>& points) {
  std::vector<mdt::SpdMatrix> out;
  out.reserve(points.size());
  for (const mdt::Matrix& p : points) out.emplace_back(p);
  return out;
}

}  // namespace

PYBIND11_MODULE(pymdt, m) {
  m.doc() = "Mean distorting transformation of affine transform sets";

  py::register_exception<mdt::Error>(m, "MdtError");

  m.def("fisher_distortion", &mdt::fisher_distortion, py::arg("a"),
        "sqrt(sum log^2 sigma_i) over the singular values of a");

  m.def(
      "fisher_distance",
      [](const mdt::Matrix& p, const mdt::Matrix& q) {
        return mdt::fisher_distance(mdt::SpdMatrix(p), mdt::SpdMatrix(q));
      },
      py::arg("p"), py::arg("q"),
      "affine-invariant distance between SPD matrices");

  m.def(
      "pullback_distance",
      [](const mdt::Matrix& l1, const mdt::Matrix& l2) {
        return mdt::pullback_distance(mdt::LowerTriangularPD(l1),
                                      mdt::LowerTriangularPD(l2));
      },
      py::arg("l1"), py::arg("l2"));

  m.def(
      "distortion_breakdown_2d",
      [](const mdt::Matrix& a) {
        mdt::DistortionBreakdown b = mdt::distortion_breakdown_2d(a);
        return py::dict(py::arg("total") = b.total, py::arg("angular") = b.angular,
                        py::arg("areal") = b.areal);
      },
      py::arg("a"));

  m.def(
      "lq_decompose",
      [](const mdt::Matrix& a) {
        auto [l, q] = mdt::lq_decompose(a);
        return py::make_tuple(l.mat(), q.mat());
      },
      py::arg("a"), "unique A = L Q with positive-diagonal lower-triangular L");

  m.def(
      "cholesky_factor",
      [](const mdt::Matrix& p) {
        return mdt::cholesky_factor(mdt::SpdMatrix(p)).mat();
      },
      py::arg("p"));

  m.def(
      "karcher_mean",
      [](const std::vector<mdt::Matrix>& points, int max_iterations,
         double tolerance) {
        mdt::MeanResult r =
            mdt::karcher_mean(to_spd(points), make_config(max_iterations, tolerance));
        return py::dict(py::arg("mean") = r.mean.mat(),
                        py::arg("iterations") = r.iterations,
                        py::arg("final_gradient_norm") = r.final_gradient_norm,
                        py::arg("objective") = r.objective);
      },
      py::arg("points"), py::arg("max_iterations") = 200,
      py::arg("tolerance") = 1e-12,
      "Frechet mean of SPD matrices under the Fisher metric");

  m.def(
      "geodesic_midpoint",
      [](const mdt::Matrix& p, const mdt::Matrix& q) {
        return mdt::geodesic_midpoint(mdt::SpdMatrix(p), mdt::SpdMatrix(q)).mat();
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "mdt",
      [](const std::vector<mdt::Matrix>& transforms, int max_iterations,
         double tolerance) {
        mdt::MdtResult r =
            mdt::compute_mdt(transforms, make_config(max_iterations, tolerance));
        return py::dict(py::arg("transform") = r.transform.mat(),
                        py::arg("objective") = r.objective,
                        py::arg("baseline_objectives") = r.baseline_objectives,
                        py::arg("iterations") = r.solver.iterations);
      },
      py::arg("transforms"), py::arg("max_iterations") = 200,
      py::arg("tolerance") = 1e-12,
      "mean distorting transformation of invertible linear maps");

  m.def("total_distortion", &mdt::total_distortion, py::arg("reference"),
        py::arg("transforms"));

  m.def(
      "rotation_average",
      [](const std::vector<mdt::Matrix>& rotations) {
        std::vector<mdt::OrthogonalMatrix> qs;
        qs.reserve(rotations.size());
        for (const mdt::Matrix& q : rotations) qs.emplace_back(q);
        return mdt::rotation_average(qs).mat();
      },
      py::arg("rotations"), "exp(-mean of rotation logs), dims 2 and 3");

  m.def(
      "estimate_affine",
      [](const std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>>& pairs) {
        mdt::AffineFit fit = mdt::estimate_affine(pairs);
        return py::dict(py::arg("linear") = fit.transform.linear,
                        py::arg("translation") = fit.transform.translation,
                        py::arg("rms") = fit.rms);
      },
      py::arg("correspondences"));

  m.def(
      "rereference",
      [](const std::vector<mdt::Matrix>& linears,
         const std::vector<Eigen::Vector2d>& translations, int max_iterations,
         double tolerance) {
        if (linears.size() != translations.size()) {
          throw mdt::DimensionMismatch("one translation per linear part");
        }
        mdt::PanoramaInput input;
        for (std::size_t i = 0; i < linears.size(); ++i) {
          input.images.push_back(
              {"img" + std::to_string(i), 1, 1, std::nullopt});
          input.transforms.push_back({linears[i], translations[i]});
        }
        mdt::CorrectionResult r =
            mdt::rereference(input, make_config(max_iterations, tolerance));
        std::vector<mdt::Matrix> out_lin;
        std::vector<Eigen::Vector2d> out_tr;
        for (const mdt::AffineTransform& t : r.corrected_transforms) {
          out_lin.push_back(t.linear);
          out_tr.push_back(t.translation);
        }
        return py::dict(py::arg("linears") = out_lin,
                        py::arg("translations") = out_tr,
                        py::arg("mdt") = r.mdt.transform.mat(),
                        py::arg("global_rotation") = r.global_rotation.mat(),
                        py::arg("global_shift") = r.global_shift,
                        py::arg("total_after") = r.report.total_after,
                        py::arg("total_before_best_fixed") =
                            r.report.total_before_best_fixed);
      },
      py::arg("linears"), py::arg("translations"),
      py::arg("max_iterations") = 200, py::arg("tolerance") = 1e-12,
      "re-reference a set of 2D affine transforms with the MDT");
}
