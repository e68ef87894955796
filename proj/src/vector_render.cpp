#include "squarea/vector_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace squarea {

namespace {

constexpr double kMeridianEps = 1e-12;  // "exactly on an interrupted meridian"
constexpr double kNudge = 1e-9;         // radians, duplicate-path offset
constexpr double kMaxGapDeg = 0.5;

// offset of lambda from the nearest quadrant meridian, in [-pi/4, pi/4]
double meridian_offset(double lambda, int& which) {
  const double q = std::round(lambda / kHalfPi);
  which = static_cast<int>(std::fmod(q + 4.0, 4.0));
  return lambda - q * kHalfPi;
}

}  // namespace

GeoPath densify_path(const GeoPath& p, double max_step_deg) {
  if (p.vertices.size() < 2) throw std::invalid_argument("densify_path: need >= 2 vertices");
  if (!(max_step_deg > 0.0)) throw std::invalid_argument("densify_path: step must be positive");
  const double max_step = max_step_deg * kDegToRad;

  GeoPath out;
  out.closed = p.closed;
  const std::size_t n = p.vertices.size();
  const std::size_t segs = p.closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const GeoCoord& a = p.vertices[i];
    const GeoCoord& b = p.vertices[(i + 1) % n];
    const double dphi = b.phi - a.phi;
    const double dlam = wrap_angle(b.lambda - a.lambda);
    // bound the on-sphere speed of the interpolation path: cos(phi) peaks at
    // an endpoint unless the segment crosses the equator
    const double cmax = a.phi * b.phi < 0.0
                            ? 1.0
                            : std::max(std::cos(a.phi), std::cos(b.phi));
    const double span = std::hypot(dphi, dlam * cmax);
    const int steps = std::max(1, static_cast<int>(std::ceil(span / (0.99 * max_step))));
    for (int s = 0; s < steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      out.vertices.emplace_back(a.phi + t * dphi, a.lambda + t * dlam);
    }
  }
  if (!p.closed) out.vertices.push_back(p.vertices.back());
  return out;
}

std::vector<GeoPath> graticule(double spacing_deg, double densify_deg) {
  if (!(spacing_deg > 0.0) || std::fabs(std::remainder(90.0, spacing_deg)) > 1e-9)
    throw std::invalid_argument("graticule: spacing must divide 90 degrees");
  if (!(densify_deg > 0.0) || densify_deg > spacing_deg + 1e-9)
    throw std::invalid_argument("graticule: densify must be in (0, spacing]");

  std::vector<GeoPath> paths;
  const int lat_steps = static_cast<int>(std::round(180.0 / spacing_deg));
  for (int i = 1; i < lat_steps; ++i) {  // parallels, poles excluded
    const double phi = (-90.0 + i * spacing_deg) * kDegToRad;
    GeoPath ring;
    ring.closed = true;
    ring.vertices.emplace_back(phi, 0.0);
    ring.vertices.emplace_back(phi, kTwoPi / 3.0);
    ring.vertices.emplace_back(phi, 2.0 * kTwoPi / 3.0);
    paths.push_back(densify_path(ring, densify_deg));
  }
  const int lon_steps = static_cast<int>(std::round(360.0 / spacing_deg));
  for (int i = 0; i < lon_steps; ++i) {  // meridians, pole to pole
    const double lam = i * spacing_deg * kDegToRad;
    GeoPath mer;
    mer.vertices.emplace_back(-kHalfPi, lam);
    mer.vertices.emplace_back(0.0, lam);
    mer.vertices.emplace_back(kHalfPi, lam);
    paths.push_back(densify_path(mer, densify_deg));
  }
  return paths;
}

namespace {

// A path that touches an interrupted meridian needs per-side images. The
// vertex walk below resolves every vertex to a concrete longitude first:
// regular vertices pass through, runs of vertices lying on an interrupted
// meridian are emitted twice (nudged to each side), and an isolated on-
// meridian vertex is spliced, nudged, onto both neighbouring pieces.
struct Piece {
  std::vector<GeoCoord> vertices;
};

// strict southern on-meridian test; equator vertices act only as terminals
int strict_meridian(const GeoCoord& g) {
  int which;
  const double off = meridian_offset(g.lambda, which);
  if (std::fabs(off) < kMeridianEps && g.phi < -kMeridianEps) return which;
  return -1;
}

bool equator_terminal(const GeoCoord& g, int meridian) {
  int which;
  const double off = meridian_offset(g.lambda, which);
  return std::fabs(off) < kMeridianEps && which == meridian && std::fabs(g.phi) <= kMeridianEps;
}

std::vector<Piece> split_boundary_runs(const std::vector<GeoCoord>& v) {
  const std::size_t n = v.size();
  std::vector<Piece> pieces;
  Piece cur;
  auto flush = [&]() {
    if (cur.vertices.size() >= 2) pieces.push_back(std::move(cur));
    cur = Piece{};
  };
  auto side_of = [](const GeoCoord& g, int meridian) {
    return sgn(wrap_angle(g.lambda - meridian * kHalfPi));
  };

  std::size_t i = 0;
  while (i < n) {
    const int mer = strict_meridian(v[i]);
    if (mer < 0) {
      cur.vertices.push_back(v[i]);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && strict_meridian(v[j + 1]) == mer) ++j;

    // equator vertices adjoining the run join it as shared terminals
    const bool start_term = i > 0 && equator_terminal(v[i - 1], mer);
    const bool end_term = j + 1 < n && equator_terminal(v[j + 1], mer);
    std::vector<GeoCoord> run;
    if (start_term) run.push_back(v[i - 1]);
    run.insert(run.end(), v.begin() + static_cast<std::ptrdiff_t>(i),
               v.begin() + static_cast<std::ptrdiff_t>(j + 1));
    if (end_term) run.push_back(v[j + 1]);

    if (run.size() >= 2) {
      flush();
      const double lm = mer * kHalfPi;
      for (const double nudge : {+kNudge, -kNudge}) {
        Piece copy;
        copy.vertices.reserve(run.size());
        for (const GeoCoord& g : run) copy.vertices.emplace_back(g.phi, lm + nudge);
        pieces.push_back(std::move(copy));
      }
    } else {
      // isolated southern vertex on the meridian (e.g. a parallel passing
      // through it): give each neighbouring piece its own nudged copy
      const double lm = mer * kHalfPi;
      if (!cur.vertices.empty()) {
        const double side = side_of(cur.vertices.back(), mer);
        if (side != 0.0) cur.vertices.emplace_back(v[i].phi, lm + side * kNudge);
      }
      flush();
      if (j + 1 < n) {
        const double side = side_of(v[j + 1], mer);
        if (side != 0.0) cur.vertices.emplace_back(v[i].phi, lm + side * kNudge);
      }
    }
    i = j + 1;
  }
  flush();
  return pieces;
}

// true when segment a-b crosses a quadrant meridian below the equator
bool crosses_interruption(const GeoCoord& a, const GeoCoord& b) {
  for (int m = 0; m < 4; ++m) {
    const double lm = m * kHalfPi;
    const double da = wrap_angle(a.lambda - lm);
    const double db = wrap_angle(b.lambda - lm);
    if (std::fabs(da) < kMeridianEps || std::fabs(db) < kMeridianEps) continue;  // endpoint on it
    if (da * db < 0.0 && std::fabs(da) + std::fabs(db) < kHalfPi) {
      const double t = da / (da - db);
      const double phi_x = a.phi + t * (b.phi - a.phi);
      if (phi_x < -kMeridianEps) return true;
    }
  }
  return false;
}

void append_projected(std::vector<std::vector<MapPoint>>& out, const std::vector<GeoCoord>& verts,
                      const ProjectionConstants& k) {
  std::vector<MapPoint> seg;
  seg.reserve(verts.size());
  auto flush = [&out, &seg]() {
    if (seg.size() >= 2) out.push_back(std::move(seg));
    seg = {};
  };
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i > 0 && crosses_interruption(verts[i - 1], verts[i])) flush();
    seg.push_back(forward(verts[i], k));
  }
  flush();
}

// safety net: split where a projected step jumps past 8x the median step
void split_jumps(std::vector<std::vector<MapPoint>>& segments) {
  std::vector<std::vector<MapPoint>> out;
  for (auto& seg : segments) {
    if (seg.size() < 5) {
      out.push_back(std::move(seg));
      continue;
    }
    std::vector<double> steps(seg.size() - 1);
    for (std::size_t i = 0; i + 1 < seg.size(); ++i)
      steps[i] = std::hypot(seg[i + 1].x - seg[i].x, seg[i + 1].y - seg[i].y);
    std::vector<double> sorted = steps;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                     sorted.end());
    const double median = sorted[sorted.size() / 2];
    if (median <= 0.0) {
      out.push_back(std::move(seg));
      continue;
    }
    std::vector<MapPoint> cur;
    cur.push_back(seg[0]);
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      if (steps[i] > 8.0 * median) {
        if (cur.size() >= 2) out.push_back(std::move(cur));
        cur = {};
      }
      cur.push_back(seg[i + 1]);
    }
    if (cur.size() >= 2) out.push_back(std::move(cur));
  }
  segments = std::move(out);
}

}  // namespace

MapPath project_path(const GeoPath& p, const ProjectionConstants& k) {
  if (p.vertices.size() < 2) throw std::invalid_argument("project_path: need >= 2 vertices");
  std::vector<GeoCoord> verts = p.vertices;
  if (p.closed) verts.push_back(verts.front());
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    if (angular_distance(verts[i], verts[i + 1]) > kMaxGapDeg * kDegToRad * (1.0 + 1e-9))
      throw std::invalid_argument(
          "project_path: input not densified; resample to 0.5 degree vertex gaps or finer");
  }

  MapPath out;
  for (const Piece& piece : split_boundary_runs(verts))
    append_projected(out.segments, piece.vertices, k);
  split_jumps(out.segments);
  // a ring split mid-way leaves its first and last pieces meeting at the
  // start vertex; rejoin them so splits only happen at interruptions
  if (p.closed && out.segments.size() >= 2) {
    auto& first = out.segments.front();
    auto& last = out.segments.back();
    const MapPoint a = last.back(), b = first.front();
    if (std::hypot(a.x - b.x, a.y - b.y) < 1e-15) {
      last.insert(last.end(), first.begin() + 1, first.end());
      out.segments.erase(out.segments.begin());
    }
  }
  return out;
}

namespace {

void append_svg_path(std::string& svg, const MapPath& path, const SvgStyle& style, int size_px) {
  if (path.segments.empty()) return;
  svg += "  <path d=\"";
  char buf[64];
  for (const auto& seg : path.segments) {
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const double sx = (seg[i].x + 1.0) * 0.5 * size_px;
      const double sy = (seg[i].y + 1.0) * 0.5 * size_px;
      std::snprintf(buf, sizeof(buf), "%c%.4f %.4f", i == 0 ? 'M' : 'L', sx, sy);
      svg += buf;
      if (i + 1 < seg.size()) svg += ' ';
    }
  }
  svg += "\" fill=\"" + style.fill + "\" stroke=\"" + style.stroke + "\" stroke-width=\"";
  char wbuf[32];
  std::snprintf(wbuf, sizeof(wbuf), "%.3f", style.stroke_width);
  svg += wbuf;
  svg += "\"/>\n";
}

}  // namespace

std::string render_svg_layers(const std::vector<SvgLayer>& layers, int size_px) {
  if (size_px < 1) throw std::invalid_argument("render_svg: size must be >= 1");
  std::string svg;
  char buf[160];
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                size_px, size_px, size_px, size_px);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "  <rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\" "
                "stroke=\"black\" stroke-width=\"1\"/>\n",
                size_px, size_px);
  svg += buf;
  for (const SvgLayer& layer : layers)
    for (const MapPath& path : layer.paths) append_svg_path(svg, path, layer.style, size_px);
  svg += "</svg>\n";
  return svg;
}

std::string render_svg(const std::vector<MapPath>& paths, const SvgStyle& style, int size_px) {
  return render_svg_layers({SvgLayer{paths, style}}, size_px);
}

}  // namespace squarea
