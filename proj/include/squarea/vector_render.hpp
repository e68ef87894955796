#pragma once

#include <string>
#include <vector>

#include "squarea/geo.hpp"
#include "squarea/projection.hpp"

namespace squarea {

/// Ordered polyline (or ring, when closed) on the sphere. Consecutive
/// vertices must be less than pi radians apart.
struct GeoPath {
  std::vector<GeoCoord> vertices;
  bool closed = false;
};

/// Projected path: one or more map-space polylines (a single GeoPath splits
/// wherever it crosses an interruption).
struct MapPath {
  std::vector<std::vector<MapPoint>> segments;
};

/// Insert intermediate vertices so no gap exceeds max_step_deg (linear
/// interpolation in latitude/longitude, short way around in longitude).
GeoPath densify_path(const GeoPath& p, double max_step_deg);

/// Parallels at multiples of spacing_deg (poles excluded) and meridians at
/// multiples of spacing_deg, densified to at most densify_deg between
/// vertices. spacing_deg must divide 90 and densify_deg must be in
/// (0, spacing_deg].
std::vector<GeoPath> graticule(double spacing_deg, double densify_deg);

/// Project a densified path (vertex gaps <= 0.5 degrees), splitting it into
/// separate polylines wherever a segment crosses an interruption (detected in
/// geographic space: southern-hemisphere crossings of the quadrant
/// meridians), with an 8x-median-jump heuristic as a safety net. A run of
/// vertices lying exactly on an interrupted meridian is emitted twice, once
/// nudged to each side, so both map-edge images appear.
MapPath project_path(const GeoPath& p, const ProjectionConstants& k);

struct SvgStyle {
  std::string stroke = "#555555";
  double stroke_width = 1.0;
  std::string fill = "none";
};

struct SvgLayer {
  std::vector<MapPath> paths;
  SvgStyle style;
};

/// Standalone SVG document: [-1,1]^2 mapped onto a size_px viewport with a
/// square frame; one path element per MapPath. Byte-stable for fixed inputs.
std::string render_svg(const std::vector<MapPath>& paths, const SvgStyle& style, int size_px);

/// Multi-layer variant (e.g. land fill beneath graticule strokes).
std::string render_svg_layers(const std::vector<SvgLayer>& layers, int size_px);

}  // namespace squarea
