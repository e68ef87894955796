#pragma once

#include <cmath>

#include "squarea/dual.hpp"
#include "squarea/geo.hpp"

namespace squarea::detail {

inline constexpr double kCollignonXScale = 0.90031631615710606956;  // 2*sqrt(2)/pi
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

template <class T>
inline void collignon_core(T phi, T lambda, T& xt, T& yt) {
  using std::cos;
  using std::fabs;

  const double lam_v = val(lambda);  // in [0, 2*pi)
  int q = static_cast<int>(lam_v * (2.0 / kPi));
  if (q > 3) q = 3;
  if (q < 0) q = 0;
  const T lam0 = lambda - (0.5 * kPi * q + 0.25 * kPi);

  const T w = cos(fabs(phi) * 0.5 + 0.25 * kPi);
  const T x = -kCollignonXScale * (lam0 * w);
  const T y = val(phi) < 0.0 ? T(1.0) - w * kInvSqrt2 : w * kInvSqrt2;

  switch (q) {
    case 0:
      xt = x - y;
      yt = x + y;
      break;
    case 1:
      xt = -x - y;
      yt = x - y;
      break;
    case 2:
      xt = -x + y;
      yt = -x - y;
      break;
    default:
      xt = x + y;
      yt = -x + y;
      break;
  }
}

}  // namespace squarea::detail
