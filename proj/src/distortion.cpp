#include "squarea/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "squarea/collignon.hpp"
#include "squarea/detail/collignon_math.hpp"
#include "squarea/detail/projection_math.hpp"
#include "squarea/dual.hpp"

namespace squarea {

namespace {

// Assemble the indicatrix from the four partials. k carries the parallel
// scale's 1/cos(phi); sin_eta and s then follow the standard forms.
TissotSample from_partials(double dxdphi, double dydphi, double dxdlam, double dydlam,
                           double phi) {
  const double cphi = std::cos(phi);
  TissotSample t;
  t.h = std::hypot(dxdphi, dydphi);
  t.k = std::hypot(dxdlam, dydlam) / cphi;
  t.sin_eta = (dydphi * dxdlam - dxdphi * dydlam) / (t.h * t.k * cphi);
  t.s = t.h * t.k * t.sin_eta;
  const double num = t.h * t.h + t.k * t.k - 2.0 * t.h * t.k * t.sin_eta;
  const double den = t.h * t.h + t.k * t.k + 2.0 * t.h * t.k * t.sin_eta;
  t.omega = 2.0 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, num) / den)));
  return t;
}

bool finite(const TissotSample& t) {
  return std::isfinite(t.h) && std::isfinite(t.k) && std::isfinite(t.sin_eta) &&
         std::isfinite(t.omega) && std::isfinite(t.s);
}

// FD stencil with optional one-sided evaluation: side 0 = central, +1 =
// forward difference, -1 = backward difference.
TissotSample tissot_fd(const ProjectFn& project, const GeoCoord& p, double step, int phi_side,
                       int lam_side) {
  double dxdphi, dydphi, dxdlam, dydlam;
  if (phi_side == 0) {
    const MapPoint a = project(GeoCoord(p.phi + step, p.lambda));
    const MapPoint b = project(GeoCoord(p.phi - step, p.lambda));
    dxdphi = (a.x - b.x) / (2.0 * step);
    dydphi = (a.y - b.y) / (2.0 * step);
  } else {
    const MapPoint a = project(GeoCoord(p.phi + phi_side * step, p.lambda));
    const MapPoint c = project(p);
    dxdphi = phi_side * (a.x - c.x) / step;
    dydphi = phi_side * (a.y - c.y) / step;
  }
  if (lam_side == 0) {
    const MapPoint a = project(GeoCoord(p.phi, p.lambda + step));
    const MapPoint b = project(GeoCoord(p.phi, p.lambda - step));
    dxdlam = (a.x - b.x) / (2.0 * step);
    dydlam = (a.y - b.y) / (2.0 * step);
  } else {
    const MapPoint a = project(GeoCoord(p.phi, p.lambda + lam_side * step));
    const MapPoint c = project(p);
    dxdlam = lam_side * (a.x - c.x) / step;
    dydlam = lam_side * (a.y - c.y) / step;
  }
  return from_partials(dxdphi, dydphi, dxdlam, dydlam, p.phi);
}

// One-sided stencil sides for a point near the projection's derivative
// discontinuities: the equator, and quadrant meridians below it.
void stencil_sides(const GeoCoord& p, double step, int& phi_side, int& lam_side) {
  phi_side = 0;
  lam_side = 0;
  if (std::fabs(p.phi) <= step) phi_side = p.phi >= 0.0 ? 1 : -1;
  if (p.phi + step > kHalfPi) phi_side = -1;
  if (p.phi - step < -kHalfPi) phi_side = 1;
  if (p.phi < 0.0) {
    const double m = std::fmod(p.lambda, kHalfPi);
    if (m <= step)
      lam_side = 1;  // just east of an interrupted meridian
    else if (kHalfPi - m <= step)
      lam_side = -1;  // just west of one
  }
}

}  // namespace

TissotSample tissot(const ProjectFn& project, const GeoCoord& p, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("tissot: step must be positive");
  const TissotSample t = tissot_fd(project, p, step, 0, 0);
  if (!finite(t))
    throw FlaggedSampleError("tissot: non-finite derivative (stencil crossed an interruption)");
  return t;
}

TissotSample tissot_analytic(ProjectionKind kind, const GeoCoord& p,
                             const ProjectionConstants& k) {
  const Dual phi(p.phi, 1.0, 0.0);
  const Dual lam(p.lambda, 0.0, 1.0);
  Dual x, y;
  if (kind == ProjectionKind::New)
    detail::forward_core(phi, lam, k, x, y);
  else
    detail::collignon_core(phi, lam, x, y);
  return from_partials(x.dp, y.dp, x.dl, y.dl, p.phi);
}

std::vector<GeoCoord> fibonacci_lattice(std::size_t n) {
  if (n < 1) throw std::invalid_argument("fibonacci_lattice: n must be >= 1");
  static const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<GeoCoord> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double phi = std::asin(std::clamp(z, -1.0, 1.0));
    const double lam = std::fmod(kTwoPi * static_cast<double>(i) / kGolden, kTwoPi);
    pts.emplace_back(phi, lam);
  }
  return pts;
}

namespace {

double kahan_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

DistortionStats reduce_omegas(std::vector<double>& omegas, std::size_t dropped) {
  DistortionStats st;
  st.n = omegas.size();
  st.dropped = dropped;
  if (omegas.empty()) return st;
  st.mean = kahan_sum(omegas) / static_cast<double>(omegas.size());
  std::vector<double> sq(omegas.size());
  double mx = 0.0;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const double d = omegas[i] - st.mean;
    sq[i] = d * d;
    mx = std::max(mx, omegas[i]);
  }
  st.stddev = std::sqrt(kahan_sum(sq) / static_cast<double>(omegas.size()));
  st.max = mx;
  return st;
}

}  // namespace

DistortionStats stats(ProjectionKind kind, const ProjectionConstants& k, std::size_t n,
                      double step, DiffMethod method) {
  if (n < 100) throw std::invalid_argument("stats: n must be >= 100");
  const std::vector<GeoCoord> pts = fibonacci_lattice(n);
  std::vector<double> omegas;
  omegas.reserve(n);
  std::size_t dropped = 0;
  const ProjectFn project = kind == ProjectionKind::New
                                ? ProjectFn([&k](const GeoCoord& p) { return forward(p, k); })
                                : ProjectFn([](const GeoCoord& p) { return collignon_forward(p); });
  for (const GeoCoord& p : pts) {
    TissotSample t;
    if (method == DiffMethod::Analytic) {
      t = tissot_analytic(kind, p, k);
    } else {
      int phi_side, lam_side;
      stencil_sides(p, step, phi_side, lam_side);
      t = tissot_fd(project, p, step, phi_side, lam_side);
    }
    if (!finite(t)) {
      ++dropped;
      continue;
    }
    omegas.push_back(t.omega);
  }
  return reduce_omegas(omegas, dropped);
}

DistortionStats stats(const ProjectFn& project, std::size_t n, double step) {
  if (n < 100) throw std::invalid_argument("stats: n must be >= 100");
  const std::vector<GeoCoord> pts = fibonacci_lattice(n);
  std::vector<double> omegas;
  omegas.reserve(n);
  std::size_t dropped = 0;
  for (const GeoCoord& p : pts) {
    int phi_side, lam_side;
    stencil_sides(p, step, phi_side, lam_side);
    const TissotSample t = tissot_fd(project, p, step, phi_side, lam_side);
    if (!finite(t)) {
      ++dropped;
      continue;
    }
    omegas.push_back(t.omega);
  }
  return reduce_omegas(omegas, dropped);
}

OptimizeResult optimize_phi0(double lo, double hi, std::size_t n_samples, double tol) {
  if (!(0.0 < lo && lo < hi && hi < kHalfPi))
    throw std::invalid_argument("optimize_phi0: need 0 < lo < hi < pi/2");
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_phi0: tol must be positive");

  const std::vector<GeoCoord> pts = fibonacci_lattice(n_samples);
  int evals = 0;
  double best_x = lo, best_f = std::numeric_limits<double>::infinity();
  auto objective = [&](double phi0) {
    const ProjectionConstants k = derive_constants(phi0);
    double sum = 0.0, comp = 0.0;
    for (const GeoCoord& p : pts) {
      const double w = tissot_analytic(ProjectionKind::New, p, k).omega;
      const double y = w - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    const double f = sum / static_cast<double>(pts.size());
    ++evals;
    if (f < best_f) {
      best_f = f;
      best_x = phi0;
    }
    return f;
  };

  OptimizeResult res;
  if (hi - lo <= 2.0 * tol) {
    res.phi0 = 0.5 * (lo + hi);
    res.objective = objective(res.phi0);
    res.evaluations = evals;
    return res;
  }

  static const double kInvGolden = 2.0 / (1.0 + std::sqrt(5.0));
  double a = lo, b = hi;
  double c = b - (b - a) * kInvGolden;
  double d = a + (b - a) * kInvGolden;
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > 2.0 * tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvGolden;
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvGolden;
      fd = objective(d);
    }
  }
  res.phi0 = 0.5 * (a + b);
  res.objective = objective(res.phi0);
  res.evaluations = evals;
  // A midpoint clearly worse than the best evaluation means the bracket
  // failed to isolate the minimum. The slack covers the objective's inherent
  // micro-steps (lattice points switching case branches as phi0 moves).
  if (res.objective > best_f + 1e-4) {
    res.bracket_ok = false;
    res.phi0 = best_x;
    res.objective = best_f;
  }
  return res;
}

}  // namespace squarea
