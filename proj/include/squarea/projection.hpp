#pragma once

#include <array>

#include "squarea/geo.hpp"

namespace squarea {

/// Default dividing-point latitude, the value that minimizes mean angular
/// distortion of the projection.
inline constexpr double kDefaultPhi0 = 3.0 * kPi / 8.0;

/// Selects one of the three sub-triangles a hexadecant is divided into,
/// ordered by increasing polar angle around the dividing point (Lower starts
/// at the equator, Upper ends at the pole).
enum class SubTriangleId { Lower = 0, Middle = 1, Upper = 2 };

/// Fixed spherical and planar geometry of one sub-triangle. Everything here
/// is a pure function of (id, phi0); the per-point quantities (the ray angle
/// beta in the forward pass, alpha' in the inverse) are locals of the
/// transforms, not state.
struct SubTriangleGeom {
  SubTriangleId id = SubTriangleId::Lower;
  double c = 0.0;        // spherical hypotenuse: dividing point to octant corner
  double b = 0.0;        // spherical side: octant corner to right-angle vertex
  double G = 0.0;        // spherical angle at the dividing point
  double F = 0.0;        // spherical angle at the octant corner
  double G_prime = 0.0;  // planar angle at the dividing point
  double a_prime = 0.0;  // planar side: right-angle vertex to dividing point
  double c_prime = 0.0;  // planar hypotenuse
  double excess = 0.0;   // F + G - pi/2, the sub-triangle's spherical area
  // cached trigonometry of the above
  double sin_c = 0.0, cos_c = 0.0;
  double sin_G = 0.0, cos_G = 0.0;
  double sin_G_prime = 0.0, cos_G_prime = 0.0;
  double tan_b = 0.0, cos_b = 0.0;
};

/// All phi0-derived constants shared by the forward and inverse transforms.
/// Immutable after derive_constants(); safe to share across threads.
struct ProjectionConstants {
  double phi0 = 0.0;
  double psi0 = 0.0, psi1 = 0.0, rho = 0.0;          // spherical sub-triangle angles
  double h_prime = 0.0;                               // planar dividing-point height
  double xi_prime = 0.0;                              // planar angle at the side vertex
  double psi0_prime = 0.0, psi1_prime = 0.0, psi2_prime = 0.0, rho_prime = 0.0;

  // cached values used on the hot paths
  double sin_phi0 = 0.0, cos_phi0 = 0.0;
  double cos_psi0 = 0.0, sin_psi0 = 0.0;   // case thresholds; cos(psi0+psi1) = -cos(psi0)
  double psi01_prime = 0.0;                // psi0' + psi1', inverse case threshold
  double theta_prime_offset = 0.0;         // 7*pi/6 - xi'
  double sin_offset = 0.0, cos_offset = 0.0;
  std::array<SubTriangleGeom, 3> tri{};
  std::array<double, 4> sin_zeta{}, cos_zeta{};  // per-octant map rotation
};

/// Compute all projection constants for a dividing-point latitude in
/// (0, pi/2). Throws std::domain_error outside that interval.
ProjectionConstants derive_constants(double phi0 = kDefaultPhi0);

/// Forward transform: sphere to the unit square [-1,1]^2. The north pole maps
/// to the origin, the prime meridian meets the equator at (0, 1), and the
/// south pole is split among the four corners. Never returns non-finite
/// values for a valid GeoCoord.
MapPoint forward(const GeoCoord& p, const ProjectionConstants& k);

/// Inverse transform. Throws std::domain_error if m lies outside the square
/// (beyond a 1e-9 slack). The map center returns the north pole with
/// lambda = pi/4; the corners return the south pole.
GeoCoord inverse(const MapPoint& m, const ProjectionConstants& k);

namespace detail {

/// Map a point given by octant-polar coordinates (theta, r) around the
/// dividing point through an explicitly chosen sub-triangle branch, assembled
/// in octant q = 0, eastern mirror, northern hemisphere. Exposed so tests can
/// compare adjoining branches exactly on a case boundary.
MapPoint face_point(SubTriangleId id, double theta, double r, const ProjectionConstants& k);

/// Destination point at great-circle distance r and bearing theta (measured
/// from due south, toward the octant's eastern half when mirror = +1) from
/// the dividing point of octant q. Test/diagnostic helper: the inverse of the
/// octant polar decomposition, independent of the projection pipeline.
GeoCoord from_octant_polar(double theta, double r, int q, double mirror,
                           double hemi, const ProjectionConstants& k);

}  // namespace detail

}  // namespace squarea
