#pragma once

#include <string>

#include "squarea/raster.hpp"

namespace squarea {

/// 8-bit PNG, 1-4 channels; values map to [0, 1].
RasterImage read_png(const std::string& path);
void write_png(const std::string& path, const RasterImage& img);

/// PFM (portable float map), 1 or 3 channels, native float range. Used for
/// sky-map inputs.
RasterImage read_pfm(const std::string& path);
void write_pfm(const std::string& path, const RasterImage& img);

/// Dispatch on the file extension (.png, .pfm). Throws std::runtime_error for
/// unknown extensions or I/O failures.
RasterImage read_image(const std::string& path);
void write_image(const std::string& path, const RasterImage& img);

}  // namespace squarea
