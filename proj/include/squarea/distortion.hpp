#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "squarea/geo.hpp"
#include "squarea/projection.hpp"

namespace squarea {

/// Local linearization of a projection at one point: meridian and parallel
/// scale factors, the sine of their intersection angle, the maximum angular
/// distortion, and the area scale s = h*k*sin_eta.
struct TissotSample {
  double h = 0.0;
  double k = 0.0;
  double sin_eta = 0.0;
  double omega = 0.0;
  double s = 0.0;
};

/// Thrown by tissot() when a finite-difference stencil straddles an
/// interruption and yields non-finite derivatives; callers may skip the
/// sample.
struct FlaggedSampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ProjectFn = std::function<MapPoint(const GeoCoord&)>;

/// Tissot indicatrix by central differences with the given step. The caller
/// guarantees p is at least `step` away from interruptions (the equator, and
/// quadrant meridians below it) and from the poles.
TissotSample tissot(const ProjectFn& project, const GeoCoord& p, double step = 1e-5);

enum class ProjectionKind { New, Collignon };

/// Tissot indicatrix from exact per-branch derivatives (forward-mode duals)
/// of one of the built-in projections. No stencil, no interruption handling.
TissotSample tissot_analytic(ProjectionKind kind, const GeoCoord& p,
                             const ProjectionConstants& k);

/// n points of the area-uniform spherical Fibonacci lattice:
/// phi_i = asin(1 - 2(i+0.5)/n), lambda_i = 2*pi*i/golden_ratio mod 2*pi.
std::vector<GeoCoord> fibonacci_lattice(std::size_t n);

/// Aggregate angular-distortion statistics over the lattice.
struct DistortionStats {
  std::size_t n = 0;        // retained sample count
  double mean = 0.0;        // radians
  double stddev = 0.0;      // population standard deviation, radians
  double max = 0.0;         // radians
  std::size_t dropped = 0;  // samples discarded as non-finite
};

enum class DiffMethod { Analytic, CentralDiff };

/// Distortion statistics for a built-in projection over an n-point Fibonacci
/// lattice. The finite-difference route falls back to one-sided stencils next
/// to the equator and, below it, next to the interrupted quadrant meridians;
/// samples that still come out non-finite are dropped and counted. Requires
/// n >= 100. Deterministic: identical inputs give identical bytes.
DistortionStats stats(ProjectionKind kind, const ProjectionConstants& k, std::size_t n,
                      double step = 1e-5, DiffMethod method = DiffMethod::Analytic);

/// Overload for an arbitrary projection function; always the
/// finite-difference route.
DistortionStats stats(const ProjectFn& project, std::size_t n, double step = 1e-5);

struct OptimizeResult {
  double phi0 = 0.0;       // argmin (bracket midpoint at convergence)
  double objective = 0.0;  // mean omega there
  int evaluations = 0;
  bool bracket_ok = true;  // false when the objective failed the unimodal check
};

/// Golden-section minimization of the mean angular distortion over phi0,
/// evaluated on a fixed n-point lattice. Requires 0 < lo < hi < pi/2. A
/// bracket already within 2*tol returns its midpoint immediately. If the
/// final midpoint is worse than the best evaluation seen (non-unimodal
/// objective), the best-seen argmin is reported and bracket_ok is cleared.
OptimizeResult optimize_phi0(double lo, double hi, std::size_t n_samples, double tol);

}  // namespace squarea
