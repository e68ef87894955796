#pragma once

#include "squarea/geo.hpp"

namespace squarea {

/// Collignon quincuncial reference projection: one interrupted triangular
/// Collignon face per octant, arranged in the same quincuncial square as the
/// main projection, with the same 1/pi area scale. Closed-form both ways.
MapPoint collignon_forward(const GeoCoord& p);

/// Algebraic inverse of collignon_forward. Throws std::domain_error for
/// points outside [-1,1]^2 (beyond a 1e-9 slack). The center returns the
/// north pole with lambda = pi/4.
GeoCoord collignon_inverse(const MapPoint& m);

}  // namespace squarea
