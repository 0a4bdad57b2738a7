#include "mdt/panorama.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace mdt {

namespace {

Matrix rot2(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

// Mean principal angle of the rotation factors of {R(phi) M_i}.
double mean_residual_angle(double phi, const std::vector<Matrix>& parts) {
  const Matrix r = rot2(phi);
  double sum = 0.0;
  for (const Matrix& m : parts) {
    auto [l, q] = lq_decompose(r * m);
    sum += std::atan2(q.mat()(1, 0), q.mat()(0, 0));
  }
  return sum / static_cast<double>(parts.size());
}

// Rotation that zeroes the mean residual rotation of the corrected
// parts, so that re-referencing is idempotent.  g(phi) is piecewise
// smooth with jumps where an individual angle wraps, so locate roots by
// a grid scan plus bisection and keep the root closest to the one-shot
// estimate exp(-mean log q_i); on an already corrected set that
// estimate is ~0 and the chosen root stays at 0.
double solve_global_rotation(const std::vector<Matrix>& parts) {
  const double pi = std::acos(-1.0);
  const double phi0 = -mean_residual_angle(0.0, parts);
  if (std::abs(mean_residual_angle(phi0, parts)) < 1e-14) {
    return phi0;
  }
  const int grid = 2048;
  const double step = 2.0 * pi / grid;
  // the jump magnitude is 2*pi/N; anything smaller separates a genuine
  // sign change from a wrap
  const double jump_guard = pi / static_cast<double>(parts.size());

  double best_phi = phi0;
  double best_dist = std::numeric_limits<double>::infinity();
  double prev_phi = phi0 - pi;
  double prev_g = mean_residual_angle(prev_phi, parts);
  for (int i = 1; i <= grid; ++i) {
    const double cur_phi = phi0 - pi + i * step;
    const double cur_g = mean_residual_angle(cur_phi, parts);
    const bool sign_change = (prev_g <= 0.0) != (cur_g <= 0.0);
    if (sign_change && std::abs(cur_g - prev_g) < jump_guard) {
      double a = prev_phi, fa = prev_g, b = cur_phi;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = mean_residual_angle(mid, parts);
        if ((fm <= 0.0) == (fa <= 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      if (std::abs(mean_residual_angle(root, parts)) < 1e-10 &&
          std::abs(root - phi0) < best_dist) {
        best_dist = std::abs(root - phi0);
        best_phi = root;
      }
    }
    prev_phi = cur_phi;
    prev_g = cur_g;
  }
  return best_phi;
}

std::array<Eigen::Vector2d, 4> image_corners(const PanoramaImage& img) {
  const double w = static_cast<double>(img.width - 1);
  const double h = static_cast<double>(img.height - 1);
  return {Eigen::Vector2d(0, 0), Eigen::Vector2d(w, 0), Eigen::Vector2d(0, h),
          Eigen::Vector2d(w, h)};
}

}  // namespace

OrthogonalMatrix rotation_average(
    const std::vector<OrthogonalMatrix>& rotations) {
  if (rotations.empty()) {
    throw EmptyInput("rotation_average: no rotations");
  }
  const Eigen::Index n = rotations.front().dim();
  if (n != 2 && n != 3) {
    throw UnsupportedDimension("rotation_average supports dims 2 and 3");
  }
  Matrix sum = Matrix::Zero(n, n);
  for (const OrthogonalMatrix& q : rotations) {
    if (q.dim() != n) {
      throw DimensionMismatch("rotation_average: mixed dimensions");
    }
    sum += so_log(q);  // rejects reflections
  }
  return so_exp(-sum / static_cast<double>(rotations.size()));
}

CorrectionResult rereference(const PanoramaInput& input,
                             const KarcherConfig& config) {
  const std::size_t n = input.transforms.size();
  if (n == 0 || input.images.size() != n) {
    throw EmptyInput("rereference: need one transform per image, N >= 1");
  }
  std::vector<Matrix> linears;
  linears.reserve(n);
  for (const AffineTransform& t : input.transforms) {
    if (t.linear.rows() != 2 || t.linear.cols() != 2 ||
        t.translation.size() != 2) {
      throw UnsupportedDimension("rereference operates on 2D transforms");
    }
    if (t.linear.determinant() <= 0.0) {
      throw ReflectionNotSupported("transform with non-positive determinant");
    }
    linears.push_back(t.linear);
  }

  MdtResult solved = compute_mdt(linears, config);
  Matrix t_inv = solved.transform.mat().inverse();

  std::vector<Matrix> parts(n);
  for (std::size_t i = 0; i < n; ++i) parts[i] = t_inv * linears[i];

  const double phi = solve_global_rotation(parts);
  Matrix q = rot2(phi);

  std::vector<AffineTransform> corrected(n);
  for (std::size_t i = 0; i < n; ++i) {
    corrected[i].linear = q * parts[i];
    corrected[i].translation = q * (t_inv * input.transforms[i].translation);
  }

  // Shift so the bounding box of all transformed image corners starts
  // at the origin.
  Eigen::Vector2d lo(std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (const Eigen::Vector2d& c : image_corners(input.images[i])) {
      lo = lo.cwiseMin(corrected[i].linear * c + corrected[i].translation);
    }
  }
  Eigen::Vector2d shift = -lo;
  for (AffineTransform& t : corrected) t.translation += shift;

  DistortionReport report;
  report.per_image.reserve(n);
  report.total_after = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    DistortionReport::Entry e;
    e.id = input.images[i].id;
    e.before = distortion_breakdown_2d(linears[i]);
    e.after = distortion_breakdown_2d(corrected[i].linear);
    report.total_after += e.after.total * e.after.total;
    report.per_image.push_back(std::move(e));
  }
  const auto best = std::min_element(solved.baseline_objectives.begin(),
                                     solved.baseline_objectives.end());
  report.total_before_best_fixed = *best;
  report.chosen_fixed_baseline =
      input.images[best - solved.baseline_objectives.begin()].id;

  return {std::move(corrected), std::move(solved),
          OrthogonalMatrix(std::move(q)), shift, std::move(report)};
}

AffineFit estimate_affine(
    const std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>>&
        correspondences) {
  const std::size_t n = correspondences.size();
  if (n < 3) {
    throw DegenerateConfiguration("need at least 3 correspondences");
  }
  Matrix a(2 * n, 6);
  Vector rhs(2 * n);
  a.setZero();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& [p, q] = correspondences[k];
    a(2 * k, 0) = p.x();
    a(2 * k, 1) = p.y();
    a(2 * k, 2) = 1.0;
    a(2 * k + 1, 3) = p.x();
    a(2 * k + 1, 4) = p.y();
    a(2 * k + 1, 5) = 1.0;
    rhs(2 * k) = q.x();
    rhs(2 * k + 1) = q.y();
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  if (qr.rank() < 6) {
    throw DegenerateConfiguration("correspondences are collinear or repeated");
  }
  Vector x = qr.solve(rhs);
  AffineFit fit;
  fit.transform.linear = Matrix(2, 2);
  fit.transform.linear << x(0), x(1), x(3), x(4);
  fit.transform.translation = Eigen::Vector2d(x(2), x(5));
  fit.rms = std::sqrt((a * x - rhs).squaredNorm() / static_cast<double>(n));
  return fit;
}

CompositeResult composite(const PanoramaInput& input,
                          const CorrectionResult& corrected) {
  const std::size_t n = input.images.size();
  if (n == 0 || corrected.corrected_transforms.size() != n) {
    throw EmptyInput("composite: need one corrected transform per image");
  }
  int channels = 0;
  for (const PanoramaImage& img : input.images) {
    if (!img.pixels) throw Error("composite: image pixels missing");
    if (channels == 0) channels = img.pixels->channels;
    if (img.pixels->channels != channels) {
      throw Error("composite: mixed channel counts");
    }
  }

  Eigen::Vector2d lo(std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const AffineTransform& t = corrected.corrected_transforms[i];
    for (const Eigen::Vector2d& c : image_corners(input.images[i])) {
      Eigen::Vector2d p = t.linear * c + t.translation;
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  if (!lo.allFinite() || !hi.allFinite() || (hi - lo).minCoeff() < 0.0) {
    throw EmptyCanvas("composite: degenerate canvas bounds");
  }
  const int width = static_cast<int>(std::ceil(hi.x() - lo.x())) + 1;
  const int height = static_cast<int>(std::ceil(hi.y() - lo.y())) + 1;
  if (width <= 0 || height <= 0 || width > 1 << 15 || height > 1 << 15) {
    throw EmptyCanvas("composite: canvas size out of range");
  }

  CompositeResult out;
  out.origin = lo;
  out.canvas = {width, height, channels,
                std::vector<std::uint8_t>(
                    static_cast<std::size_t>(width) * height * channels, 0)};

  for (std::size_t i = 0; i < n; ++i) {
    const ImageBuffer& src = *input.images[i].pixels;
    const AffineTransform& t = corrected.corrected_transforms[i];
    Matrix inv = t.linear.inverse();
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        Eigen::Vector2d p(lo.x() + x, lo.y() + y);
        Eigen::Vector2d s = inv * (p - t.translation);
        if (s.x() < 0.0 || s.y() < 0.0 || s.x() > src.width - 1 ||
            s.y() > src.height - 1) {
          continue;
        }
        const int x0 = static_cast<int>(std::floor(s.x()));
        const int y0 = static_cast<int>(std::floor(s.y()));
        const int x1 = std::min(x0 + 1, src.width - 1);
        const int y1 = std::min(y0 + 1, src.height - 1);
        const double fx = s.x() - x0;
        const double fy = s.y() - y0;
        std::uint8_t* dst =
            &out.canvas.pixels[(static_cast<std::size_t>(y) * width + x) *
                               channels];
        for (int c = 0; c < channels; ++c) {
          auto at = [&](int sx, int sy) {
            return static_cast<double>(
                src.pixels[(static_cast<std::size_t>(sy) * src.width + sx) *
                               channels +
                           c]);
          };
          const double v = (1 - fy) * ((1 - fx) * at(x0, y0) + fx * at(x1, y0)) +
                           fy * ((1 - fx) * at(x0, y1) + fx * at(x1, y1));
          dst[c] = static_cast<std::uint8_t>(std::lround(v));
        }
      }
    }
  }
  return out;
}

}  // namespace mdt
