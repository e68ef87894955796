#include "squarea/collignon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "squarea/detail/collignon_math.hpp"

namespace squarea {

using detail::kCollignonXScale;
using detail::kInvSqrt2;

MapPoint collignon_forward(const GeoCoord& p) {
  MapPoint m;
  detail::collignon_core(p.phi, p.lambda, m.x, m.y);
  return m;
}

GeoCoord collignon_inverse(const MapPoint& m) {
  if (!std::isfinite(m.x) || !std::isfinite(m.y) || std::fabs(m.x) > 1.0 + 1e-9 ||
      std::fabs(m.y) > 1.0 + 1e-9)
    throw std::domain_error("collignon_inverse: map point outside [-1,1]^2");

  // same half-open quadrant partition as the main projection
  int q;
  if (m.x <= 0.0 && m.y > 0.0)
    q = 0;
  else if (m.x < 0.0 && m.y <= 0.0)
    q = 1;
  else if (m.x >= 0.0 && m.y < 0.0)
    q = 2;
  else if (m.x > 0.0 && m.y >= 0.0)
    q = 3;
  else
    return GeoCoord(kHalfPi, kPi / 4.0);

  // the per-octant step is a rotation by zeta composed with a sqrt(2) scale
  const double zeta = kPi / 4.0 + kHalfPi * q;
  const double cz = std::cos(zeta), sz = std::sin(zeta);
  const double x = (m.x * cz + m.y * sz) * kInvSqrt2;
  const double y = (m.y * cz - m.x * sz) * kInvSqrt2;

  double w, phi;
  if (y <= 0.5) {  // northern branch: y = w/sqrt(2)
    w = std::clamp(y * std::sqrt(2.0), 0.0, kInvSqrt2);
    phi = 2.0 * std::acos(w) - kHalfPi;
  } else {  // southern branch: y = 1 - w/sqrt(2)
    w = std::clamp((1.0 - y) * std::sqrt(2.0), 0.0, kInvSqrt2);
    phi = -(2.0 * std::acos(w) - kHalfPi);
  }
  // lam0 * w is what the forward encodes in x; at the poles (w = 0) the
  // longitude is indeterminate and the octant center is reported
  const double lam_off = w < 1e-15 ? 0.0 : -x / (kCollignonXScale * w);
  return GeoCoord(phi, kPi / 4.0 + kHalfPi * q + lam_off);
}

}  // namespace squarea
