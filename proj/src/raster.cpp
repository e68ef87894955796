#include "squarea/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace squarea {

RasterImage::RasterImage(int w, int h, int ch, float fill) {
  if (w < 1 || h < 1 || ch < 1 || ch > 4)
    throw std::invalid_argument("RasterImage: bad dimensions");
  width = w;
  height = h;
  channels = ch;
  pixels.assign(static_cast<std::size_t>(w) * h * ch, fill);
}

MapPoint wrap_map_point(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("wrap_map_point: non-finite input");
  // pre-reduce with the tiling's translation lattice (period 4 on each axis)
  x -= 4.0 * std::floor((x + 1.0) / 4.0);
  y -= 4.0 * std::floor((y + 1.0) / 4.0);
  while (x < -1.0 || x > 1.0 || y < -1.0 || y > 1.0) {
    if (x > 1.0) {
      x = 2.0 - x;
      y = -y;
    } else if (x < -1.0) {
      x = -2.0 - x;
      y = -y;
    } else if (y > 1.0) {
      y = 2.0 - y;
      x = -x;
    } else {
      y = -2.0 - y;
      x = -x;
    }
  }
  return {x, y};
}

namespace {

// p2 wrap of an integer pixel index into an N x N grid; exact counterpart of
// wrap_map_point under the (i+0.5)/N pixel-center convention.
void wrap_pixel(int& i, int& j, int n) {
  while (i < 0 || i >= n || j < 0 || j >= n) {
    if (i < 0) {
      i = -1 - i;
      j = n - 1 - j;
    } else if (i >= n) {
      i = 2 * n - 1 - i;
      j = n - 1 - j;
    } else if (j < 0) {
      j = -1 - j;
      i = n - 1 - i;
    } else {
      j = 2 * n - 1 - j;
      i = n - 1 - i;
    }
  }
}

void fetch_square(const RasterImage& img, int i, int j, float* out) {
  wrap_pixel(i, j, img.width);
  for (int c = 0; c < img.channels; ++c) out[c] = img.at(i, j, c);
}

// sample a square image at continuous pixel coordinates (u, v), p2-wrapped
void sample_square(const RasterImage& img, double u, double v, SamplingMethod s, float* out) {
  if (s == SamplingMethod::Nearest) {
    fetch_square(img, static_cast<int>(std::lround(u)), static_cast<int>(std::lround(v)), out);
    return;
  }
  const double fu = std::floor(u), fv = std::floor(v);
  const int i0 = static_cast<int>(fu), j0 = static_cast<int>(fv);
  const double a = u - fu, b = v - fv;
  float p00[4], p10[4], p01[4], p11[4];
  fetch_square(img, i0, j0, p00);
  fetch_square(img, i0 + 1, j0, p10);
  fetch_square(img, i0, j0 + 1, p01);
  fetch_square(img, i0 + 1, j0 + 1, p11);
  for (int c = 0; c < img.channels; ++c) {
    const double top = p00[c] * (1.0 - a) + p10[c] * a;
    const double bot = p01[c] * (1.0 - a) + p11[c] * a;
    out[c] = static_cast<float>(top * (1.0 - b) + bot * b);
  }
}

void fetch_equirect(const RasterImage& img, int i, int j, float* out) {
  i %= img.width;  // longitude wraps
  if (i < 0) i += img.width;
  j = std::clamp(j, 0, img.height - 1);  // latitude clamps
  for (int c = 0; c < img.channels; ++c) out[c] = img.at(i, j, c);
}

void sample_equirect(const RasterImage& img, double u, double v, SamplingMethod s, float* out) {
  if (s == SamplingMethod::Nearest) {
    fetch_equirect(img, static_cast<int>(std::lround(u)), static_cast<int>(std::lround(v)), out);
    return;
  }
  const double fu = std::floor(u), fv = std::floor(v);
  const int i0 = static_cast<int>(fu), j0 = static_cast<int>(fv);
  const double a = u - fu, b = v - fv;
  float p00[4], p10[4], p01[4], p11[4];
  fetch_equirect(img, i0, j0, p00);
  fetch_equirect(img, i0 + 1, j0, p10);
  fetch_equirect(img, i0, j0 + 1, p01);
  fetch_equirect(img, i0 + 1, j0 + 1, p11);
  for (int c = 0; c < img.channels; ++c) {
    const double top = p00[c] * (1.0 - a) + p10[c] * a;
    const double bot = p01[c] * (1.0 - a) + p11[c] * a;
    out[c] = static_cast<float>(top * (1.0 - b) + bot * b);
  }
}

}  // namespace

RasterImage equirect_to_square(const RasterImage& src, int out_size,
                               const ProjectionConstants& k, SamplingMethod s) {
  if (src.width < 1 || src.height < 1 ||
      src.pixels.size() != static_cast<std::size_t>(src.width) * src.height * src.channels)
    throw std::invalid_argument("equirect_to_square: invalid source image");
  if (out_size < 1) throw std::invalid_argument("equirect_to_square: out_size must be >= 1");

  RasterImage out(out_size, out_size, src.channels);
  const double inv_n = 1.0 / out_size;
  float px[4];
  for (int j = 0; j < out_size; ++j) {
    const double y = -1.0 + 2.0 * (j + 0.5) * inv_n;
    for (int i = 0; i < out_size; ++i) {
      const double x = -1.0 + 2.0 * (i + 0.5) * inv_n;
      const GeoCoord g = inverse({x, y}, k);
      const double u = g.lambda / kTwoPi * src.width - 0.5;
      const double v = (kHalfPi - g.phi) / kPi * src.height - 0.5;
      sample_equirect(src, u, v, s, px);
      for (int c = 0; c < src.channels; ++c) out.at(i, j, c) = px[c];
    }
  }
  return out;
}

RasterImage square_to_equirect(const RasterImage& src, int out_width,
                               const ProjectionConstants& k, SamplingMethod s) {
  if (src.width < 1 || src.width != src.height ||
      src.pixels.size() != static_cast<std::size_t>(src.width) * src.height * src.channels)
    throw std::invalid_argument("square_to_equirect: source must be a valid square image");
  if (out_width < 2 || out_width % 2 != 0)
    throw std::invalid_argument("square_to_equirect: out_width must be even and >= 2");

  const int out_height = out_width / 2;
  RasterImage out(out_width, out_height, src.channels);
  const int n = src.width;
  float px[4];
  for (int j = 0; j < out_height; ++j) {
    const double phi = kHalfPi - kPi * (j + 0.5) / out_height;
    for (int i = 0; i < out_width; ++i) {
      const double lam = kTwoPi * (i + 0.5) / out_width;
      const MapPoint m = forward(GeoCoord(phi, lam), k);
      const double u = (m.x + 1.0) * 0.5 * n - 0.5;
      const double v = (m.y + 1.0) * 0.5 * n - 0.5;
      sample_square(src, u, v, s, px);
      for (int c = 0; c < src.channels; ++c) out.at(i, j, c) = px[c];
    }
  }
  return out;
}

double psnr_equirect(const RasterImage& a, const RasterImage& b, double phi_limit_rad) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels)
    throw std::invalid_argument("psnr_equirect: image shapes differ");
  double se = 0.0;
  std::size_t count = 0;
  for (int j = 0; j < a.height; ++j) {
    const double phi = kHalfPi - kPi * (j + 0.5) / a.height;
    if (std::fabs(phi) >= phi_limit_rad) continue;
    for (int i = 0; i < a.width; ++i)
      for (int c = 0; c < a.channels; ++c) {
        const double d = static_cast<double>(a.at(i, j, c)) - b.at(i, j, c);
        se += d * d;
        ++count;
      }
  }
  if (count == 0) throw std::invalid_argument("psnr_equirect: no rows inside the latitude limit");
  const double mse = se / static_cast<double>(count);
  return mse <= 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
}

}  // namespace squarea
