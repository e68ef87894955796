// squarea command-line tool: project/invert coordinate streams, distortion
// statistics, phi0 optimization, raster reprojection, and graticule/SVG maps.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "squarea/collignon.hpp"
#include "squarea/distortion.hpp"
#include "squarea/geojson.hpp"
#include "squarea/image_io.hpp"
#include "squarea/projection.hpp"
#include "squarea/raster.hpp"
#include "squarea/vector_render.hpp"

namespace {

using namespace squarea;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOpts {
  std::string projection = "new";  // new | collignon
  double phi0 = kDefaultPhi0;
  std::string format = "csv";  // csv | json | text
  std::string in_path, out_path;
};

void add_projection_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--projection,-p", o.projection, "Projection: new or collignon")
      ->check(CLI::IsMember({"new", "collignon"}));
  cmd->add_option("--phi0", o.phi0, "Dividing-point latitude, radians (default 3*pi/8)")
      ->check(CLI::Range(1e-9, kHalfPi - 1e-9));
}

ProjectionKind kind_of(const CommonOpts& o) {
  return o.projection == "collignon" ? ProjectionKind::Collignon : ProjectionKind::New;
}

// read "a,b" lines from positional args, a file, or stdin
std::vector<std::string> gather_lines(const std::vector<std::string>& args,
                                      const std::string& in_path) {
  std::vector<std::string> lines;
  if (!args.empty()) {
    lines = args;
  } else if (!in_path.empty()) {
    std::ifstream f(in_path);
    if (!f) throw std::runtime_error("cannot open " + in_path);
    std::string s;
    while (std::getline(f, s)) lines.push_back(s);
  } else {
    std::string s;
    while (std::getline(std::cin, s)) lines.push_back(s);
  }
  return lines;
}

bool parse_pair(const std::string& line, double& a, double& b) {
  std::string t = line;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream ss(t);
  return static_cast<bool>(ss >> a >> b) && (ss >> std::ws).eof();
}

int cmd_project(const CommonOpts& o, const std::vector<std::string>& args, bool invert) {
  std::vector<std::string> lines;
  try {
    lines = gather_lines(args, o.in_path);
  } catch (const std::exception& e) {
    std::cerr << "squarea: " << e.what() << "\n";
    return kExitData;
  }
  const ProjectionConstants k = derive_constants(o.phi0);
  const bool collignon = kind_of(o) == ProjectionKind::Collignon;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    if (lines[i].rfind("--", 0) == 0) {  // a mistyped flag, not a coordinate
      std::cerr << "squarea: unknown option " << lines[i] << "\n";
      return kExitUsage;
    }
    double a, b;
    if (!parse_pair(lines[i], a, b)) {
      std::cerr << "squarea: line " << i + 1 << ": expected two comma-separated numbers\n";
      return kExitData;
    }
    try {
      if (!invert) {
        const GeoCoord g(a * kDegToRad, b * kDegToRad);
        const MapPoint m = collignon ? collignon_forward(g) : forward(g, k);
        std::printf("%.12g,%.12g\n", m.x, m.y);
      } else {
        const GeoCoord g = collignon ? collignon_inverse({a, b}) : inverse({a, b}, k);
        std::printf("%.12g,%.12g\n", g.phi * kRadToDeg, g.lambda * kRadToDeg);
      }
    } catch (const std::exception& e) {
      std::cerr << "squarea: line " << i + 1 << ": " << e.what() << "\n";
      return kExitData;
    }
  }
  return kExitOk;
}

int cmd_stats(const CommonOpts& o, std::size_t n, double step, const std::string& diff) {
  const ProjectionConstants k = derive_constants(o.phi0);
  const DiffMethod method = diff == "central" ? DiffMethod::CentralDiff : DiffMethod::Analytic;
  const DistortionStats st = stats(kind_of(o), k, n, step, method);
  if (o.format == "json") {
    nlohmann::json j{{"projection", o.projection}, {"n", st.n},           {"mean", st.mean},
                     {"stddev", st.stddev},        {"max", st.max},       {"dropped", st.dropped}};
    std::printf("%s\n", j.dump().c_str());
  } else if (o.format == "text") {
    std::printf("projection: %s\nn: %zu\nmean: %.12g\nstddev: %.12g\nmax: %.12g\ndropped: %zu\n",
                o.projection.c_str(), st.n, st.mean, st.stddev, st.max, st.dropped);
  } else {
    std::printf("projection,n,mean,stddev,max,dropped\n");
    std::printf("%s,%zu,%.12g,%.12g,%.12g,%zu\n", o.projection.c_str(), st.n, st.mean, st.stddev,
                st.max, st.dropped);
  }
  return kExitOk;
}

int cmd_optimize(const CommonOpts& o, double lo, double hi, std::size_t n, double tol) {
  OptimizeResult res;
  try {
    res = optimize_phi0(lo, hi, n, tol);
  } catch (const std::exception& e) {
    std::cerr << "squarea: " << e.what() << "\n";
    return kExitData;
  }
  if (o.format == "json") {
    nlohmann::json j{{"phi0", res.phi0},
                     {"objective", res.objective},
                     {"evaluations", res.evaluations},
                     {"bracket_ok", res.bracket_ok}};
    std::printf("%s\n", j.dump().c_str());
  } else if (o.format == "csv") {
    std::printf("phi0,objective,evaluations,bracket_ok\n%.12g,%.12g,%d,%d\n", res.phi0,
                res.objective, res.evaluations, res.bracket_ok ? 1 : 0);
  } else {
    std::printf("phi0* = %.12g rad (mean omega %.12g, %d evaluations%s)\n", res.phi0,
                res.objective, res.evaluations,
                res.bracket_ok ? "" : "; bracket failure, best-seen argmin reported");
  }
  if (!res.bracket_ok) std::cerr << "squarea: warning: objective not unimodal on the bracket\n";
  return kExitOk;
}

int cmd_reproject(const CommonOpts& o, const std::string& direction, int size,
                  const std::string& sampling) {
  if (o.in_path.empty() || o.out_path.empty()) {
    std::cerr << "squarea: reproject requires --in and --out\n";
    return kExitUsage;
  }
  const SamplingMethod method =
      sampling == "nearest" ? SamplingMethod::Nearest : SamplingMethod::Bilinear;
  try {
    const ProjectionConstants k = derive_constants(o.phi0);
    const RasterImage src = read_image(o.in_path);
    RasterImage out;
    if (direction == "to-square")
      out = equirect_to_square(src, size, k, method);
    else
      out = square_to_equirect(src, size, k, method);
    write_image(o.out_path, out);
  } catch (const std::exception& e) {
    std::cerr << "squarea: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_graticule(const CommonOpts& o, double spacing, double densify, int size,
                  const std::string& stroke, double stroke_width, const std::string& land_path) {
  try {
    const ProjectionConstants k = derive_constants(o.phi0);
    std::vector<SvgLayer> layers;
    if (!land_path.empty()) {
      SvgLayer land;
      land.style.stroke = "#000000";
      land.style.stroke_width = stroke_width;
      for (const GeoPath& p : load_geojson(land_path, std::min(densify, 0.25)))
        land.paths.push_back(project_path(p, k));
      layers.push_back(std::move(land));
    }
    SvgLayer grid;
    grid.style.stroke = stroke;
    grid.style.stroke_width = stroke_width;
    for (const GeoPath& p : graticule(spacing, densify)) grid.paths.push_back(project_path(p, k));
    layers.push_back(std::move(grid));
    const std::string svg = render_svg_layers(layers, size);
    if (o.out_path.empty()) {
      std::fwrite(svg.data(), 1, svg.size(), stdout);
    } else {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + o.out_path);
      f << svg;
    }
  } catch (const std::exception& e) {
    std::cerr << "squarea: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"square equal-area quincuncial projection toolkit"};
  app.require_subcommand(1);

  CommonOpts po, io, so, oo, ro, go;
  std::vector<std::string> project_coords, invert_coords;

  CLI::App* project = app.add_subcommand("project", "Project phi_deg,lambda_deg lines to x,y");
  add_projection_flags(project, po);
  project->add_option("--in", po.in_path, "Read coordinate lines from a file");
  project->add_option("coords", project_coords, "Coordinate pairs, e.g. 45.0,120.5");
  project->allow_extras();  // tolerate leading-minus pairs like -35.5,220

  CLI::App* invert = app.add_subcommand("invert", "Invert x,y lines to phi_deg,lambda_deg");
  add_projection_flags(invert, io);
  invert->add_option("--in", io.in_path, "Read point lines from a file");
  invert->add_option("points", invert_coords, "Map points, e.g. 0.25,-0.5");
  invert->allow_extras();

  std::size_t stats_n = 10000;
  double stats_step = 1e-5;
  std::string stats_diff = "analytic";
  CLI::App* stats_cmd = app.add_subcommand("stats", "Angular-distortion statistics");
  add_projection_flags(stats_cmd, so);
  stats_cmd->add_option("--n", stats_n, "Fibonacci lattice size")->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
  stats_cmd->add_option("--step", stats_step, "Finite-difference step, radians");
  stats_cmd->add_option("--diff", stats_diff, "Derivative method: analytic or central")
      ->check(CLI::IsMember({"analytic", "central"}));
  stats_cmd->add_option("--format", so.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));

  double opt_lo = 1.0, opt_hi = 1.35, opt_tol = 1e-3;
  std::size_t opt_n = 2000;
  CLI::App* optimize = app.add_subcommand("optimize", "Find the phi0 minimizing mean distortion");
  optimize->add_option("--lo", opt_lo, "Bracket lower bound, radians");
  optimize->add_option("--hi", opt_hi, "Bracket upper bound, radians");
  optimize->add_option("--n", opt_n, "Lattice size per evaluation");
  optimize->add_option("--tol", opt_tol, "Bracket tolerance, radians");
  optimize->add_option("--format", oo.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));

  std::string repro_direction = "to-square", repro_sampling = "bilinear";
  int repro_size = 1024;
  CLI::App* reproject = app.add_subcommand("reproject", "Reproject raster images");
  reproject->add_option("--direction", repro_direction, "to-square or to-equirect")
      ->check(CLI::IsMember({"to-square", "to-equirect"}));
  reproject->add_option("--size", repro_size, "Output size (square side / equirect width)")
      ->check(CLI::Range(1, 1 << 16));
  reproject->add_option("--sampling", repro_sampling, "nearest or bilinear")
      ->check(CLI::IsMember({"nearest", "bilinear"}));
  reproject->add_option("--in", ro.in_path, "Input image (.png or .pfm)")->required();
  reproject->add_option("--out", ro.out_path, "Output image (.png or .pfm)")->required();
  reproject->add_option("--phi0", ro.phi0, "Dividing-point latitude, radians")
      ->check(CLI::Range(1e-9, kHalfPi - 1e-9));

  double grat_spacing = 10.0, grat_densify = 0.25, grat_stroke_width = 1.0;
  int grat_size = 1024;
  std::string grat_stroke = "#555555", grat_land;
  CLI::App* grat = app.add_subcommand("graticule", "Render a graticule (and land) SVG map");
  grat->add_option("--spacing", grat_spacing, "Graticule spacing, degrees (divides 90)");
  grat->add_option("--densify", grat_densify, "Vertex spacing, degrees");
  grat->add_option("--size", grat_size, "SVG viewport size, pixels")->check(CLI::Range(16, 1 << 14));
  grat->add_option("--stroke", grat_stroke, "Graticule stroke color");
  grat->add_option("--stroke-width", grat_stroke_width, "Stroke width, pixels");
  grat->add_option("--land", grat_land, "GeoJSON polygon layer to draw beneath the graticule");
  grat->add_option("--out", go.out_path, "Output SVG path (stdout when omitted)");
  grat->add_option("--phi0", go.phi0, "Dividing-point latitude, radians")
      ->check(CLI::Range(1e-9, kHalfPi - 1e-9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (project->parsed()) {
    for (const std::string& s : project->remaining()) project_coords.push_back(s);
    return cmd_project(po, project_coords, false);
  }
  if (invert->parsed()) {
    for (const std::string& s : invert->remaining()) invert_coords.push_back(s);
    return cmd_project(io, invert_coords, true);
  }
  if (stats_cmd->parsed()) return cmd_stats(so, stats_n, stats_step, stats_diff);
  if (optimize->parsed()) return cmd_optimize(oo, opt_lo, opt_hi, opt_n, opt_tol);
  if (reproject->parsed()) return cmd_reproject(ro, repro_direction, repro_size, repro_sampling);
  if (grat->parsed())
    return cmd_graticule(go, grat_spacing, grat_densify, grat_size, grat_stroke,
                         grat_stroke_width, grat_land);
  return kExitUsage;
}
