#include "squarea/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "squarea/detail/projection_math.hpp"

namespace squarea {

using detail::kSingularEps;
using detail::kSqrt2;
using detail::kSqrt3;
using detail::kSqrt6;

ProjectionConstants derive_constants(double phi0) {
  if (!std::isfinite(phi0) || phi0 <= 0.0 || phi0 >= kHalfPi)
    throw std::domain_error("derive_constants: phi0 must lie in (0, pi/2)");

  ProjectionConstants k;
  k.phi0 = phi0;
  k.sin_phi0 = std::sin(phi0);
  k.cos_phi0 = std::cos(phi0);

  // spherical sub-triangle angles
  k.psi0 = std::asin(1.0 / std::sqrt(2.0 - k.cos_phi0 * k.cos_phi0));
  k.psi1 = kPi - 2.0 * k.psi0;
  k.rho = std::asin(2.0 * k.sin_phi0 / std::sqrt(3.0 - std::cos(2.0 * phi0)));

  // planar dividing-point height from the lower area-ratio relation
  const double hp = (12.0 / kPi) * (k.psi0 + k.rho - kHalfPi);
  k.h_prime = hp;
  // planar side-vertex angle from the middle area-ratio relation; atan2 keeps
  // the solution in (0, pi) when the denominator flips sign at small phi0
  k.xi_prime = std::atan2(kPi * (hp - 3.0) * (hp - 3.0),
                          kSqrt3 * (kPi * (hp * hp - 2.0 * hp + 45.0) - 96.0 * k.psi0 -
                                    48.0 * k.rho));

  // planar sub-triangle angles
  k.psi0_prime = std::atan(kSqrt3 / hp);
  k.psi1_prime = 7.0 * kPi / 6.0 - k.psi0_prime - k.xi_prime;
  k.psi2_prime = k.xi_prime - kPi / 6.0;
  k.rho_prime = std::atan(hp / kSqrt3);

  if (!std::isfinite(k.psi0) || !std::isfinite(k.rho) || !std::isfinite(k.xi_prime) ||
      hp <= 0.0 || hp >= 3.0 || k.psi1_prime <= 0.0 || k.psi2_prime <= 0.0)
    throw std::domain_error("derive_constants: constants left their domain");

  k.sin_psi0 = std::sin(k.psi0);
  k.cos_psi0 = std::cos(k.psi0);
  k.psi01_prime = k.psi0_prime + k.psi1_prime;
  k.theta_prime_offset = 7.0 * kPi / 6.0 - k.xi_prime;  // = psi0' + psi1'
  k.sin_offset = std::sin(k.theta_prime_offset);
  k.cos_offset = std::cos(k.theta_prime_offset);

  const double cp = std::sqrt(hp * hp + 3.0);  // planar dividing point to base corner
  const double a_side = cp * std::sin(kPi / 3.0 - k.rho_prime) / std::sin(k.xi_prime);
  const double b_mid = std::atan(kSqrt2 * std::tan(phi0));  // corner to right-angle vertex

  auto fill = [](SubTriangleGeom& t, SubTriangleId id, double c, double b, double G, double F,
                 double Gp, double ap, double cprime) {
    t.id = id;
    t.c = c;
    t.b = b;
    t.G = G;
    t.F = F;
    t.G_prime = Gp;
    t.a_prime = ap;
    t.c_prime = cprime;
    t.excess = F + G - kHalfPi;
    t.sin_c = std::sin(c);
    t.cos_c = std::cos(c);
    t.sin_G = std::sin(G);
    t.cos_G = std::cos(G);
    t.sin_G_prime = std::sin(Gp);
    t.cos_G_prime = std::cos(Gp);
    t.tan_b = std::tan(b);
    t.cos_b = std::cos(b);
  };
  const double c_low = std::acos(k.cos_phi0 / kSqrt2);
  fill(k.tri[0], SubTriangleId::Lower, c_low, kPi / 4.0, k.psi0, k.rho, k.psi0_prime, hp, cp);
  fill(k.tri[1], SubTriangleId::Middle, c_low, b_mid, k.psi1, kHalfPi - k.rho, k.psi1_prime,
       a_side, cp);
  fill(k.tri[2], SubTriangleId::Upper, kHalfPi - phi0, kHalfPi - b_mid, k.psi0, kPi / 4.0,
       k.psi2_prime, a_side, 3.0 - hp);

  // map-plane rotation per octant; the extra half-turn anchors the prime
  // meridian's equator crossing at (0, 1)
  for (int q = 0; q < 4; ++q) {
    const double zeta = kPi / 4.0 + kHalfPi * q + kPi;
    k.sin_zeta[static_cast<std::size_t>(q)] = std::sin(zeta);
    k.cos_zeta[static_cast<std::size_t>(q)] = std::cos(zeta);
  }
  return k;
}

MapPoint forward(const GeoCoord& p, const ProjectionConstants& k) {
  MapPoint m;
  detail::forward_core(p.phi, p.lambda, k, m.x, m.y);
  return m;
}

namespace {

double clamp1(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

GeoCoord inverse(const MapPoint& m, const ProjectionConstants& k) {
  if (!std::isfinite(m.x) || !std::isfinite(m.y) || std::fabs(m.x) > 1.0 + 1e-9 ||
      std::fabs(m.y) > 1.0 + 1e-9)
    throw std::domain_error("inverse: map point outside [-1,1]^2");

  // half-open quadrant partition, consistent with the forward rotation
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
    return GeoCoord(kHalfPi, kPi / 4.0);  // origin: the pole
  const std::size_t qi = static_cast<std::size_t>(q);
  const double lam0 = kPi / 4.0 + kHalfPi * q;

  // un-rotate onto the face triangle
  const double x_c = kSqrt6 * (m.x * k.cos_zeta[qi] + m.y * k.sin_zeta[qi]);
  const double y_c = 3.0 * kSqrt2 * (m.y * k.cos_zeta[qi] - m.x * k.sin_zeta[qi]);

  // hemisphere split at y_c = -3
  const double phi_sgn = y_c >= -3.0 ? 1.0 : -1.0;
  const double y_hemi = y_c >= -3.0 ? y_c : -6.0 - y_c;

  const double dy = k.h_prime - 3.0 - y_hemi;
  const double r_p = std::hypot(x_c, dy);
  if (r_p < kSingularEps) return GeoCoord(phi_sgn * k.phi0, lam0);
  const double theta_p = std::fabs(std::atan2(x_c, dy));

  const int tri_idx =
      theta_p <= k.psi0_prime ? 0 : (theta_p <= k.psi01_prime ? 1 : 2);
  const SubTriangleGeom& t = k.tri[static_cast<std::size_t>(tri_idx)];
  double alpha_p;
  if (tri_idx == 0)
    alpha_p = theta_p;
  else if (tri_idx == 1)
    alpha_p = kPi - k.psi2_prime - theta_p;
  else
    alpha_p = theta_p + k.psi2_prime - kPi;

  const double beta_p = t.G_prime - alpha_p;
  const double x_p =
      std::sqrt(std::max(0.0, r_p * r_p + t.c_prime * t.c_prime -
                                  2.0 * r_p * t.c_prime * std::cos(beta_p)));
  if (x_p < kSingularEps) {
    // at the octant corner: the pole for the upper triangle, the equatorial
    // corner for the other two
    if (tri_idx == 2) return GeoCoord(phi_sgn * kHalfPi, lam0);
    return GeoCoord(0.0, lam0 + sgn(x_c) * kPi / 4.0);
  }
  const double gamma_p =
      std::acos(clamp1((r_p * r_p - x_p * x_p - t.c_prime * t.c_prime) / (-2.0 * x_p * t.c_prime)));
  const double eps_p = kPi - t.G_prime - gamma_p;
  const double y_p = r_p * std::sin(alpha_p) / std::sin(eps_p);
  const double u_p =
      std::sqrt(std::max(0.0, t.c_prime * t.c_prime + (x_p + y_p) * (x_p + y_p) -
                                  2.0 * t.c_prime * (x_p + y_p) * std::cos(gamma_p)));
  const double v_p = std::clamp(t.a_prime - u_p, 0.0, t.a_prime);

  // slice in reverse: recover the wedge angle at the corner
  const double ev = v_p * t.excess / t.a_prime;
  const double delta = std::atan2(std::sin(ev), std::cos(ev) - t.cos_b);
  const double gamma = t.F - delta;
  const double cos_fi = 1.0 / std::sqrt(1.0 + (t.tan_b / std::cos(delta)) * (t.tan_b / std::cos(delta)));

  // dice in reverse: recover the distance from the corner
  const double dice = x_p / (x_p + y_p);
  const double cos_x = clamp1(1.0 - dice * dice * (1.0 - cos_fi));
  const double sin_x = std::sqrt(std::max(0.0, 1.0 - cos_x * cos_x));

  const double cos_r = clamp1(cos_x * t.cos_c + sin_x * t.sin_c * std::cos(gamma));
  const double sin_r = std::sqrt(std::max(0.0, 1.0 - cos_r * cos_r));
  if (sin_r < kSingularEps && cos_r > 0.0) return GeoCoord(phi_sgn * k.phi0, lam0);
  const double beta = std::asin(clamp1(sin_x * std::sin(gamma) / sin_r));

  double alpha;  // bearing from due south at the dividing point
  if (tri_idx == 0)
    alpha = k.psi0 - beta;
  else if (tri_idx == 1)
    alpha = k.psi0 + beta;
  else
    alpha = kPi - beta;

  const double sin_phi_h = clamp1(k.sin_phi0 * cos_r - k.cos_phi0 * sin_r * std::cos(alpha));
  const double phi_h = std::asin(sin_phi_h);
  const double dlam = std::atan2(std::sin(alpha) * sin_r * k.cos_phi0,
                                 cos_r - k.sin_phi0 * sin_phi_h);
  return GeoCoord(phi_sgn * phi_h, lam0 + sgn(x_c) * dlam);
}

namespace detail {

MapPoint face_point(SubTriangleId id, double theta, double r, const ProjectionConstants& k) {
  const int tri_idx = static_cast<int>(id);
  double beta;
  if (id == SubTriangleId::Lower)
    beta = k.psi0 - theta;
  else if (id == SubTriangleId::Middle)
    beta = theta - k.psi0;
  else
    beta = kPi - theta;
  double r_p, sin_tp, cos_tp;
  if (r < kSingularEps) {
    r_p = 0.0;
    sin_tp = 0.0;
    cos_tp = 1.0;
  } else {
    face_map_branch(k, tri_idx, std::sin(beta), std::cos(beta), std::sin(r), std::cos(r), r_p,
                    sin_tp, cos_tp);
  }
  const double x_c = r_p * sin_tp;
  const double y_c = k.h_prime - r_p * cos_tp;
  const double y_h = y_c - 3.0;
  return {(x_c * k.cos_zeta[0] - y_h * (k.sin_zeta[0] / kSqrt3)) * kInvSqrt6,
          (x_c * k.sin_zeta[0] + y_h * (k.cos_zeta[0] / kSqrt3)) * kInvSqrt6};
}

GeoCoord from_octant_polar(double theta, double r, int q, double mirror, double hemi,
                           const ProjectionConstants& k) {
  const double sin_phi =
      clamp1(k.sin_phi0 * std::cos(r) - k.cos_phi0 * std::sin(r) * std::cos(theta));
  const double phi = std::asin(sin_phi);
  const double dlam = std::atan2(std::sin(theta) * std::sin(r) * k.cos_phi0,
                                 std::cos(r) - k.sin_phi0 * sin_phi);
  const double lam = kPi / 4.0 + kHalfPi * q + (mirror < 0 ? -dlam : dlam);
  return GeoCoord(hemi < 0 ? -phi : phi, lam);
}

}  // namespace detail

}  // namespace squarea
