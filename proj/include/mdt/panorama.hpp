#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdt/distortion.hpp"
#include "mdt/mdt.hpp"

namespace mdt {

/// 8-bit interleaved pixel buffer (RGB or RGBA).
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

struct PanoramaImage {
  std::string id;
  int width = 0;
  int height = 0;
  std::optional<ImageBuffer> pixels;
};

/// One 2D affine transform per image, mapping image i to the common plane.
struct PanoramaInput {
  std::vector<PanoramaImage> images;
  std::vector<AffineTransform> transforms;
};

struct DistortionReport {
  struct Entry {
    std::string id;
    DistortionBreakdown before;
    DistortionBreakdown after;
  };
  std::vector<Entry> per_image;
  double total_before_best_fixed = 0.0;
  double total_after = 0.0;
  std::string chosen_fixed_baseline;
};

struct CorrectionResult {
  std::vector<AffineTransform> corrected_transforms;  // S . q . T^{-1} . T_i
  MdtResult mdt;
  OrthogonalMatrix global_rotation;  // q, special orthogonal
  Eigen::Vector2d global_shift;  // S
  DistortionReport report;
};

/// Re-reference a panorama: replace each transform by T^{-1} T_i with T
/// the MDT of the linear parts, undo the residual mean rotation, and
/// shift the panorama bounding box to the origin.
CorrectionResult rereference(const PanoramaInput& input,
                             const KarcherConfig& config = {});

/// exp(-mean of rotation logs); dims 2 and 3.
OrthogonalMatrix rotation_average(const std::vector<OrthogonalMatrix>& rotations);

struct AffineFit {
  AffineTransform transform;
  double rms = 0.0;  // residual RMS over the correspondences
};

/// Least-squares 2D affine map source -> target from point pairs.
AffineFit estimate_affine(
    const std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>>& correspondences);

struct CompositeResult {
  ImageBuffer canvas;
  Eigen::Vector2d origin;  // canvas pixel (0,0) in panorama-plane coordinates
};

/// Warp every image through its corrected transform onto a canvas sized
/// to the union of the transformed image corners. Bilinear resampling,
/// last image on top, out-of-source samples left at zero.
CompositeResult composite(const PanoramaInput& input,
                          const CorrectionResult& corrected);

}  // namespace mdt
