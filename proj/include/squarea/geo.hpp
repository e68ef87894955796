#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace squarea {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kHalfPi = 0.5 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

/// Mathematical sign: -1, 0, or +1.
inline double sgn(double v) { return static_cast<double>((v > 0) - (v < 0)); }

/// Reduce a longitude to [0, 2*pi).
inline double normalize_longitude(double lambda) {
  double l = std::fmod(lambda, kTwoPi);
  if (l < 0.0) l += kTwoPi;
  return l;
}

/// Wrap an angle difference to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::fmod(a + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w - kPi;
}

/// Geographic coordinate. Latitude is validated, longitude is reduced to
/// [0, 2*pi) on construction so octant indexing is always well defined.
struct GeoCoord {
  double phi = 0.0;     // latitude, radians, in [-pi/2, pi/2]
  double lambda = 0.0;  // longitude, radians, in [0, 2*pi)

  GeoCoord() = default;
  GeoCoord(double phi_, double lambda_) {
    if (!std::isfinite(phi_) || !std::isfinite(lambda_))
      throw std::domain_error("GeoCoord: non-finite coordinate");
    if (std::fabs(phi_) > kHalfPi + 1e-9)
      throw std::domain_error("GeoCoord: latitude outside [-pi/2, pi/2]");
    phi = std::clamp(phi_, -kHalfPi, kHalfPi);
    lambda = normalize_longitude(lambda_);
  }
};

/// Square map coordinate; forward projections emit values in [-1, 1]^2.
struct MapPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Great-circle distance between two points, radians.
inline double angular_distance(const GeoCoord& a, const GeoCoord& b) {
  const double sdphi = std::sin(0.5 * (b.phi - a.phi));
  const double sdlam = std::sin(0.5 * wrap_angle(b.lambda - a.lambda));
  const double h = sdphi * sdphi + std::cos(a.phi) * std::cos(b.phi) * sdlam * sdlam;
  return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace squarea
