#pragma once

#include <string>

#include "mdt/panorama.hpp"

namespace mdt {

/// Reads an 8-bit PNG; palette/gray inputs are expanded to RGB,
/// 16-bit depth is rejected.
ImageBuffer read_png(const std::string& path);

void write_png(const ImageBuffer& image, const std::string& path);

}  // namespace mdt
