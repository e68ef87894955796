#pragma once

#include <cstddef>
#include <vector>

#include "squarea/geo.hpp"
#include "squarea/projection.hpp"

namespace squarea {

/// Row-major pixel grid, 1-4 channels. Samples are stored as 32-bit floats;
/// 8-bit image files are mapped to [0, 1] on load and quantized on save.
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<float> pixels;

  RasterImage() = default;
  RasterImage(int w, int h, int ch, float fill = 0.0f);

  float& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

enum class SamplingMethod { Nearest, Bilinear };

/// Reduce an arbitrary plane point into [-1,1]^2 under the map's p2 tiling:
/// crossing an edge composes a half-turn about that edge's midpoint. Identity
/// for in-square input.
MapPoint wrap_map_point(double x, double y);

/// Resample an equirectangular image (longitude across width over [0,2*pi),
/// latitude down height over [pi/2,-pi/2]) onto the square projection.
/// Output is out_size x out_size. Pixel (i,j) is sampled at its center,
/// (i+0.5)/N; map y runs down the image so the prime meridian meets the
/// equator at the bottom center.
RasterImage equirect_to_square(const RasterImage& src, int out_size,
                               const ProjectionConstants& k, SamplingMethod s);

/// Resample a square projected image back to equirectangular. out_width must
/// be even; the output is out_width x out_width/2. Bilinear taps that fall
/// past a square edge are fetched through the p2 tiling so seams blend.
RasterImage square_to_equirect(const RasterImage& src, int out_width,
                               const ProjectionConstants& k, SamplingMethod s);

/// PSNR between two equirectangular images of identical shape, restricted to
/// rows with |latitude| below phi_limit_rad. Unit signal range.
double psnr_equirect(const RasterImage& a, const RasterImage& b, double phi_limit_rad);

}  // namespace squarea
