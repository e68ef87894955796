#pragma once

#include <cmath>

#include "squarea/dual.hpp"
#include "squarea/projection.hpp"

// Templated core of the forward transform, shared by the double-precision
// entry point and the dual-number differentiator. Branch decisions are made
// on values only, so the dual instantiation differentiates exactly the branch
// the point falls in.

namespace squarea::detail {

inline constexpr double kSingularEps = 1e-12;
inline constexpr double kInvSqrt6 = 0.40824829046386301636621401245098;  // sqrt(3)/(3*sqrt(2))
inline constexpr double kSqrt3 = 1.7320508075688772935274463415059;
inline constexpr double kSqrt6 = 2.4494897427831780981972840747059;
inline constexpr double kSqrt2 = 1.4142135623730950488016887242097;

inline double with_value(double, double v) { return v; }
inline Dual with_value(const Dual& d, double v) { return {v, d.dp, d.dl}; }

// Clamp the value into [lo, hi]. Overshoot within numerical drift keeps the
// derivative (a boundary sample still has a valid one-sided derivative);
// anything farther out is a guarded degenerate configuration and saturates.
template <class T>
inline T clamp_to(T x, double lo, double hi) {
  constexpr double kSlack = 1e-9;
  const double v = val(x);
  if (v > hi) return v > hi + kSlack ? T(hi) : with_value(x, hi);
  if (v < lo) return v < lo - kSlack ? T(lo) : with_value(x, lo);
  return x;
}

template <class T>
inline T clamp_unit(T x) {
  return clamp_to(x, -1.0, 1.0);
}

// sqrt(max(0, x)); absorbs the 1-ulp negatives of 1 - cos^2 style operands
template <class T>
inline T sqrt0(T x) {
  using std::sqrt;
  if (val(x) <= 0.0) return T(0.0);
  return sqrt(x);
}

/// Equal-area mapping of one spherical sub-triangle point onto its planar
/// sub-triangle, in polar form (r', theta') around the dividing point.
/// Inputs: the branch, sin/cos of the ray angle beta from the hypotenuse, and
/// sin/cos of the distance r from the dividing point.
template <class T>
inline void face_map_branch(const ProjectionConstants& k, int tri_idx, T sin_beta, T cos_beta,
                            T sin_r, T cos_r, T& r_p, T& sin_tp, T& cos_tp) {
  using std::acos;
  using std::asin;
  using std::sqrt;
  const SubTriangleGeom& t = k.tri[static_cast<std::size_t>(tri_idx)];

  T r_out, cos_ap, sin_ap;
  const T cos_x = clamp_unit(cos_r * t.cos_c + sin_r * t.sin_c * cos_beta);
  const T sin_x = sqrt0(1.0 - cos_x * cos_x);
  if (val(sin_x) < kSingularEps && val(cos_x) > 0.0) {
    // target coincides with the octant corner
    r_out = T(t.c_prime);
    cos_ap = T(t.cos_G_prime);
    sin_ap = T(t.sin_G_prime);
  } else {
    const T sin_gamma = clamp_unit(sin_beta * sin_r / sin_x);
    const T gamma = asin(sin_gamma);
    const T cos_gamma = sqrt0(1.0 - sin_gamma * sin_gamma);
    const T cos_eps = clamp_unit(t.sin_G * sin_gamma * t.cos_c - t.cos_G * cos_gamma);
    const T eps = acos(cos_eps);
    const T sin_eps = sqrt0(1.0 - cos_eps * cos_eps);
    // slice: spherical area fraction of the corner-anchored wedge
    const T slice = clamp_to((gamma + t.G + eps - kPi) / t.excess, 0.0, 1.0);
    // dice: chord-ratio placement along the cut (x + y stays below pi/2)
    const T sin_fi = clamp_unit(t.sin_G * t.sin_c / sin_eps);
    const T cos_fi = sqrt0(1.0 - sin_fi * sin_fi);
    const T dice = clamp_to(sqrt0((1.0 - cos_x) / (1.0 - cos_fi)), 0.0, 1.0);

    // place the target in the frame with the dividing point at the origin and
    // the slicing side along +x: the corner sits at angle G', and the target
    // divides corner->cut-point by the dice ratio. This affine form avoids
    // the cancellation a law-of-cosines route suffers near the seams.
    const T u_p = t.a_prime * slice;
    const double fx = t.c_prime * t.cos_G_prime;
    const double fy = t.c_prime * t.sin_G_prime;
    const T px = fx + dice * (u_p - fx);
    const T py = fy * (1.0 - dice);
    r_out = sqrt(px * px + py * py);
    cos_ap = px / r_out;
    sin_ap = py / r_out;
  }

  // theta' = alpha' (lower), offset - alpha' (middle), offset + alpha' (upper)
  r_p = r_out;
  if (tri_idx == 0) {
    sin_tp = sin_ap;
    cos_tp = cos_ap;
  } else if (tri_idx == 1) {
    sin_tp = k.sin_offset * cos_ap - k.cos_offset * sin_ap;
    cos_tp = k.cos_offset * cos_ap + k.sin_offset * sin_ap;
  } else {
    sin_tp = k.sin_offset * cos_ap + k.cos_offset * sin_ap;
    cos_tp = k.cos_offset * cos_ap - k.sin_offset * sin_ap;
  }
}

template <class T>
inline void forward_core(T phi, T lambda, const ProjectionConstants& k, T& xm, T& ym) {
  using std::cos;
  using std::fabs;
  using std::sin;

  const double lam_v = val(lambda);  // in [0, 2*pi)
  int q = static_cast<int>(lam_v * (2.0 / kPi));
  if (q > 3) q = 3;
  if (q < 0) q = 0;
  const T dlam = lambda - (0.25 * kPi + 0.5 * kPi * q);

  const double mirror = sgn(val(dlam));
  const double hemi = sgn(val(phi));

  T r_p, sin_tp, cos_tp;
  if (fabs(val(phi)) >= kHalfPi) {
    // pole: the octant-corner image, taken exactly
    r_p = T(k.tri[2].c_prime);
    sin_tp = T(0.0);
    cos_tp = T(-1.0);
  } else {
    const T phic = fabs(phi);
    const T sin_pc = sin(phic), cos_pc = cos(phic);
    const T sin_dl = sin(dlam), cos_dl = cos(dlam);
    const T cos_r = clamp_unit(k.sin_phi0 * sin_pc + k.cos_phi0 * cos_pc * cos_dl);
    const T sin_r = sqrt0(1.0 - cos_r * cos_r);
    if (val(sin_r) < kSingularEps && val(cos_r) > 0.0) {
      r_p = T(0.0);  // dividing point maps to planar height h'
      sin_tp = T(0.0);
      cos_tp = T(1.0);
    } else {
      // bearing around the dividing point, folded onto [0, pi]
      const T ty = cos_pc * sin_dl;                              // sin(theta) sin(r), signed
      const T tx = k.sin_phi0 * cos_pc * cos_dl - k.cos_phi0 * sin_pc;  // cos(theta) sin(r)
      const T sin_th = clamp_unit(fabs(ty) / sin_r);
      const T cos_th = clamp_unit(tx / sin_r);
      // theta <= psi0 | theta <= psi0+psi1 (= pi-psi0) | otherwise
      const int tri_idx =
          val(cos_th) >= k.cos_psi0 ? 0 : (val(cos_th) >= -k.cos_psi0 ? 1 : 2);
      T sin_beta, cos_beta;
      if (tri_idx == 0) {  // beta = psi0 - theta
        sin_beta = k.sin_psi0 * cos_th - k.cos_psi0 * sin_th;
        cos_beta = k.cos_psi0 * cos_th + k.sin_psi0 * sin_th;
      } else if (tri_idx == 1) {  // beta = theta - psi0
        sin_beta = sin_th * k.cos_psi0 - cos_th * k.sin_psi0;
        cos_beta = k.cos_psi0 * cos_th + k.sin_psi0 * sin_th;
      } else {  // beta = pi - theta
        sin_beta = sin_th;
        cos_beta = -cos_th;
      }
      face_map_branch(k, tri_idx, sin_beta, cos_beta, sin_r, cos_r, r_p, sin_tp, cos_tp);
    }
  }

  const T x_c = mirror * (r_p * sin_tp);
  const T y_c = k.h_prime - r_p * cos_tp;
  const T y_h = hemi * y_c - 3.0;
  // squish the face triangle, rotate into place, and scale onto [-1,1]^2
  xm = (x_c * k.cos_zeta[static_cast<std::size_t>(q)] -
        y_h * (k.sin_zeta[static_cast<std::size_t>(q)] / kSqrt3)) *
       kInvSqrt6;
  ym = (x_c * k.sin_zeta[static_cast<std::size_t>(q)] +
        y_h * (k.cos_zeta[static_cast<std::size_t>(q)] / kSqrt3)) *
       kInvSqrt6;
}

}  // namespace squarea::detail
