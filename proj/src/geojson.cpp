#include "squarea/geojson.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace squarea {

namespace {

using nlohmann::json;

GeoPath ring_to_path(const json& ring, bool closed) {
  GeoPath p;
  p.closed = closed;
  for (const auto& pos : ring) {
    if (!pos.is_array() || pos.size() < 2) throw std::runtime_error("geojson: bad position");
    const double lon = pos[0].get<double>();
    const double lat = std::clamp(pos[1].get<double>(), -90.0, 90.0);
    p.vertices.emplace_back(lat * kDegToRad, lon * kDegToRad);
  }
  // drop an explicit closing vertex; the closed flag re-adds the segment
  if (closed && p.vertices.size() > 1) {
    const GeoCoord& a = p.vertices.front();
    const GeoCoord& b = p.vertices.back();
    if (angular_distance(a, b) < 1e-12) p.vertices.pop_back();
  }
  return p;
}

void collect_geometry(const json& geom, std::vector<GeoPath>& out) {
  if (!geom.is_object() || !geom.contains("type")) return;
  const std::string type = geom["type"].get<std::string>();
  if (type == "Polygon") {
    for (const auto& ring : geom["coordinates"]) out.push_back(ring_to_path(ring, true));
  } else if (type == "MultiPolygon") {
    for (const auto& poly : geom["coordinates"])
      for (const auto& ring : poly) out.push_back(ring_to_path(ring, true));
  } else if (type == "LineString") {
    out.push_back(ring_to_path(geom["coordinates"], false));
  } else if (type == "MultiLineString") {
    for (const auto& line : geom["coordinates"]) out.push_back(ring_to_path(line, false));
  } else if (type == "GeometryCollection") {
    for (const auto& g : geom["geometries"]) collect_geometry(g, out);
  }
  // points and unknown types are ignored
}

}  // namespace

std::vector<GeoPath> load_geojson(const std::string& path, double densify_deg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_geojson: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("load_geojson: parse error in " + path + ": " + e.what());
  }

  std::vector<GeoPath> raw;
  if (doc.contains("type") && doc["type"] == "FeatureCollection") {
    for (const auto& f : doc["features"])
      if (f.contains("geometry")) collect_geometry(f["geometry"], raw);
  } else if (doc.contains("type") && doc["type"] == "Feature") {
    if (doc.contains("geometry")) collect_geometry(doc["geometry"], raw);
  } else {
    collect_geometry(doc, raw);
  }

  std::vector<GeoPath> out;
  out.reserve(raw.size());
  for (const GeoPath& p : raw)
    if (p.vertices.size() >= 2) out.push_back(densify_path(p, densify_deg));
  return out;
}

}  // namespace squarea
