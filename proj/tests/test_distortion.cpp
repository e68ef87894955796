#include "squarea/distortion.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "squarea/collignon.hpp"

using namespace squarea;

namespace {

const ProjectionConstants& constants() {
  static const ProjectionConstants k = derive_constants();
  return k;
}

// points safely away from every derivative discontinuity (equator, quadrant
// meridians, poles, and the sub-triangle seams) so finite differences see a
// smooth neighborhood
GeoCoord guarded_sample(std::mt19937_64& rng, double band) {
  std::uniform_real_distribution<double> uz(-1.0, 1.0), ul(0.0, kTwoPi);
  const ProjectionConstants& k = constants();
  for (;;) {
    const double phi = std::asin(uz(rng));
    const double lam = ul(rng);
    if (std::fabs(phi) < band || kHalfPi - std::fabs(phi) < band) continue;
    const double m = std::fmod(lam, kHalfPi);
    if (m < band || kHalfPi - m < band) continue;
    // distance of the bearing around the dividing point from the seams
    const double phic = std::fabs(phi);
    const double dl = std::fmod(lam, kHalfPi) - kPi / 4.0;
    const double theta = std::fabs(std::atan2(
        std::cos(phic) * std::sin(dl),
        k.sin_phi0 * std::cos(phic) * std::cos(dl) - k.cos_phi0 * std::sin(phic)));
    if (std::fabs(theta - k.psi0) < band) continue;
    if (std::fabs(theta - k.psi0 - k.psi1) < band) continue;
    return GeoCoord(phi, lam);
  }
}

}  // namespace

TEST_CASE("fibonacci lattice") {
  SUBCASE("n = 1 sits on the equator") {
    const auto pts = fibonacci_lattice(1);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].phi == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("latitudes decrease monotonically") {
    const auto pts = fibonacci_lattice(4);
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].phi < pts[i - 1].phi);
  }
  SUBCASE("area balance: mean sin(phi) vanishes") {
    const auto pts = fibonacci_lattice(10000);
    double s = 0.0;
    for (const auto& p : pts) s += std::sin(p.phi);
    CHECK(std::fabs(s / 10000.0) < 1e-3);
  }
  SUBCASE("n = 0 is rejected") { CHECK_THROWS_AS(fibonacci_lattice(0), std::invalid_argument); }
}

TEST_CASE("tissot area scale is 1/pi for both projections") {
  const ProjectionConstants& k = constants();
  const ProjectFn new_fn = [&](const GeoCoord& p) { return forward(p, k); };
  const ProjectFn col_fn = [](const GeoCoord& p) { return collignon_forward(p); };

  SUBCASE("finite differences at the worked example point") {
    const TissotSample t = tissot(new_fn, GeoCoord(0.5, 0.8));
    CHECK(t.s == doctest::Approx(1.0 / kPi).epsilon(1e-6));
    const TissotSample c = tissot(col_fn, GeoCoord(0.5, 0.8));
    CHECK(c.s == doctest::Approx(1.0 / kPi).epsilon(1e-6));
  }
  SUBCASE("finite differences at guarded random points") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
      const GeoCoord p = guarded_sample(rng, 1e-3);
      CHECK(tissot(new_fn, p).s == doctest::Approx(1.0 / kPi).epsilon(1e-5));
      CHECK(tissot(col_fn, p).s == doctest::Approx(1.0 / kPi).epsilon(1e-5));
    }
  }
  SUBCASE("analytic derivatives agree with finite differences") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
      const GeoCoord p = guarded_sample(rng, 1e-3);
      const TissotSample fd = tissot(new_fn, p);
      const TissotSample an = tissot_analytic(ProjectionKind::New, p, constants());
      CHECK(std::fabs(fd.omega - an.omega) < 1e-6);
      CHECK(std::fabs(fd.h - an.h) < 1e-6);
      CHECK(std::fabs(fd.k - an.k) < 1e-6);
      CHECK(an.s == doctest::Approx(1.0 / kPi).epsilon(1e-9));
    }
  }
  SUBCASE("sample invariants") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 200; ++i) {
      const GeoCoord p = guarded_sample(rng, 1e-3);
      const TissotSample t = tissot_analytic(ProjectionKind::New, p, constants());
      CHECK(t.h > 0.0);
      CHECK(t.k > 0.0);
      CHECK(std::fabs(t.sin_eta) <= 1.0);
      CHECK(t.omega >= 0.0);
      CHECK(t.omega <= kPi);
      CHECK(t.s == doctest::Approx(t.h * t.k * t.sin_eta).epsilon(1e-14));
    }
  }
}

TEST_CASE("pointwise omega stays under the distortion ceiling") {
  // the maximum angular distortion of this projection is just below 0.95 rad
  std::mt19937_64 rng(97);
  for (int i = 0; i < 2000; ++i) {
    const GeoCoord p = guarded_sample(rng, 1e-3);
    CHECK(tissot_analytic(ProjectionKind::New, p, constants()).omega <= 0.98);
  }
  for (const GeoCoord& p : fibonacci_lattice(2000))
    CHECK(tissot_analytic(ProjectionKind::New, p, constants()).omega <= 0.98);
}

TEST_CASE("omega is invariant under the 90-degree longitude symmetry") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const GeoCoord p = guarded_sample(rng, 1e-3);
    const double w0 = tissot_analytic(ProjectionKind::New, p, constants()).omega;
    const double w1 =
        tissot_analytic(ProjectionKind::New, GeoCoord(p.phi, p.lambda + kHalfPi), constants())
            .omega;
    CHECK(std::fabs(w0 - w1) < 1e-6);
  }
}

TEST_CASE("stats reproduces the distortion summary") {
  const ProjectionConstants& k = constants();
  SUBCASE("new projection") {
    const DistortionStats st = stats(ProjectionKind::New, k, 10000);
    CHECK(st.mean == doctest::Approx(0.54).epsilon(0.04));
    CHECK(st.stddev == doctest::Approx(0.27).epsilon(0.08));
    CHECK(st.max == doctest::Approx(0.95).epsilon(0.06));
    CHECK(st.dropped == 0);
    CHECK(st.n == 10000);
  }
  SUBCASE("collignon quincuncial") {
    const DistortionStats st = stats(ProjectionKind::Collignon, k, 10000);
    CHECK(st.mean == doctest::Approx(0.68).epsilon(0.03));
    CHECK(st.stddev == doctest::Approx(0.18).epsilon(0.12));
    CHECK(st.max == doctest::Approx(1.05).epsilon(0.05));
  }
  SUBCASE("finite-difference route agrees with the analytic route") {
    const DistortionStats a = stats(ProjectionKind::New, k, 2000);
    const DistortionStats b = stats(ProjectionKind::New, k, 2000, 1e-5, DiffMethod::CentralDiff);
    CHECK(std::fabs(a.mean - b.mean) < 1e-4);
    CHECK(std::fabs(a.stddev - b.stddev) < 1e-3);
    CHECK(b.dropped == 0);
  }
  SUBCASE("step halving moves the finite-difference mean by less than 1e-4") {
    const DistortionStats a = stats(ProjectionKind::New, k, 2000, 1e-5, DiffMethod::CentralDiff);
    const DistortionStats b = stats(ProjectionKind::New, k, 2000, 5e-6, DiffMethod::CentralDiff);
    CHECK(std::fabs(a.mean - b.mean) < 1e-4);
  }
  SUBCASE("deterministic: identical inputs give identical bytes") {
    const DistortionStats a = stats(ProjectionKind::New, k, 1000);
    const DistortionStats b = stats(ProjectionKind::New, k, 1000);
    CHECK(a.mean == b.mean);
    CHECK(a.stddev == b.stddev);
    CHECK(a.max == b.max);
  }
  SUBCASE("per-sample area scale is constant across the lattice") {
    for (const auto kind : {ProjectionKind::New, ProjectionKind::Collignon}) {
      for (const GeoCoord& p : fibonacci_lattice(10000)) {
        const TissotSample t = tissot_analytic(kind, p, k);
        REQUIRE(t.s == doctest::Approx(1.0 / kPi).epsilon(1e-5));
      }
    }
  }
  SUBCASE("projection-function overload") {
    const DistortionStats st =
        stats([&](const GeoCoord& p) { return forward(p, k); }, 2000);
    CHECK(st.mean == doctest::Approx(0.54).epsilon(0.05));
  }
  SUBCASE("n below 100 is rejected") {
    CHECK_THROWS_AS(stats(ProjectionKind::New, k, 99), std::invalid_argument);
  }
}

TEST_CASE("optimize_phi0") {
  SUBCASE("degenerate bracket returns its midpoint immediately") {
    const OptimizeResult r = optimize_phi0(1.1, 1.1 + 1.9e-3, 500, 1e-3);
    CHECK(r.phi0 == doctest::Approx(1.1 + 0.95e-3).epsilon(1e-12));
    CHECK(r.bracket_ok);
    CHECK(r.evaluations == 1);
  }
  SUBCASE("3*pi/8 is a local minimum of the mean distortion") {
    const std::vector<GeoCoord> pts = fibonacci_lattice(2000);
    auto mean_omega = [&](double phi0) {
      const ProjectionConstants k = derive_constants(phi0);
      double s = 0.0;
      for (const auto& p : pts) s += tissot_analytic(ProjectionKind::New, p, k).omega;
      return s / static_cast<double>(pts.size());
    };
    const double at = mean_omega(kDefaultPhi0);
    CHECK(at <= mean_omega(kDefaultPhi0 - 0.1));
    CHECK(at <= mean_omega(kDefaultPhi0 + 0.1));
  }
  SUBCASE("search over [1.0, 1.35] lands near 3*pi/8") {
    const OptimizeResult r = optimize_phi0(1.0, 1.35, 2000, 1e-3);
    CHECK(std::fabs(r.phi0 - kDefaultPhi0) <= 0.02);
    CHECK(r.bracket_ok);
    CHECK(r.objective < 0.55);
  }
  SUBCASE("invalid brackets are rejected") {
    CHECK_THROWS_AS(optimize_phi0(1.35, 1.0, 500, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(optimize_phi0(0.0, 1.0, 500, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(optimize_phi0(1.0, 1.35, 500, 0.0), std::invalid_argument);
  }
}

TEST_CASE("tissot flags non-finite samples") {
  // a projection that blows up east of lambda = 1 poisons the stencil there
  const ProjectFn fn = [](const GeoCoord& p) {
    if (p.lambda > 1.0) return MapPoint{std::nan(""), 0.0};
    return MapPoint{p.lambda, std::sin(p.phi)};
  };
  CHECK_THROWS_AS(tissot(fn, GeoCoord(0.3, 1.0 - 1e-9)), FlaggedSampleError);
  CHECK_NOTHROW(tissot(fn, GeoCoord(0.3, 0.5)));
  CHECK_THROWS_AS(tissot(fn, GeoCoord(0.3, 0.5), 0.0), std::invalid_argument);
}
