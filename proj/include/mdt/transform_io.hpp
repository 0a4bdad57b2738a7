#pragma once

#include <string>
#include <vector>

#include "mdt/panorama.hpp"

namespace mdt {

struct TransformEntry {
  std::string id;
  AffineTransform transform;
};

/// Contents of a transform set file: {version, dim, transforms:[{id,A,b}]}.
struct TransformSet {
  int dim = 0;
  std::vector<TransformEntry> entries;
};

TransformSet parse_transform_set(const std::string& json_text);
TransformSet load_transform_set(const std::string& path);
std::string serialize_transform_set(const TransformSet& set);
void save_transform_set(const TransformSet& set, const std::string& path);

struct CorrespondenceEntry {
  std::string from_id;
  std::string to_id;
  std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> pairs;
};

std::vector<CorrespondenceEntry> load_correspondences(const std::string& path);

std::string serialize_report(const DistortionReport& report);
std::string format_report_table(const DistortionReport& report);

}  // namespace mdt
