#pragma once

#include <string>
#include <vector>

#include "squarea/vector_render.hpp"

namespace squarea {

/// Load Polygon/MultiPolygon/LineString geometries (RFC 7946, [lon, lat]
/// degrees) from a GeoJSON file into densified GeoPaths. Rings become closed
/// paths. Throws std::runtime_error on I/O or parse failure.
std::vector<GeoPath> load_geojson(const std::string& path, double densify_deg = 0.25);

}  // namespace squarea
