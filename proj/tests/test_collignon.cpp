#include "squarea/collignon.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace squarea;

TEST_CASE("collignon anchors") {
  SUBCASE("poles") {
    for (const double lam : {0.0, 0.3, 2.2, 4.8}) {
      const MapPoint m = collignon_forward(GeoCoord(kHalfPi, lam));
      CHECK(std::fabs(m.x) < 1e-15);
      CHECK(std::fabs(m.y) < 1e-15);
    }
  }
  SUBCASE("equator at 45E maps to (-1/2, 1/2)") {
    const MapPoint m = collignon_forward(GeoCoord(0.0, kPi / 4.0));
    CHECK(std::fabs(m.x + 0.5) < 1e-15);
    CHECK(std::fabs(m.y - 0.5) < 1e-15);
  }
  SUBCASE("prime meridian equator anchor (0, 1)") {
    const MapPoint m = collignon_forward(GeoCoord(0.0, 0.0));
    CHECK(std::fabs(m.x) < 1e-15);
    CHECK(std::fabs(m.y - 1.0) < 1e-15);
  }
  SUBCASE("cross-implementation reference points") {
    const MapPoint a = collignon_forward(GeoCoord(0.4, 2.0));
    CHECK(std::fabs(a.x + 0.56788861900597263) < 1e-14);
    CHECK(std::fabs(a.y + 0.21350862804020778) < 1e-14);
    const MapPoint b = collignon_forward(GeoCoord(-0.8, 5.1));
    CHECK(std::fabs(b.x - 0.86881141318005088) < 1e-14);
    CHECK(std::fabs(b.y - 0.59954593512571453) < 1e-14);
  }
}

TEST_CASE("collignon equator lies on the inscribed diamond") {
  for (int i = 0; i < 1000; ++i) {
    const double lam = kTwoPi * (i + 0.5) / 1000.0;
    const MapPoint m = collignon_forward(GeoCoord(0.0, lam));
    CHECK(std::fabs(std::fabs(m.x) + std::fabs(m.y) - 1.0) < 1e-12);
  }
}

TEST_CASE("collignon four-fold symmetry") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uz(-1.0, 1.0), ul(0.0, kHalfPi - 1e-9);
  for (int i = 0; i < 2000; ++i) {
    const GeoCoord p(std::asin(uz(rng)), ul(rng) + 1e-12);
    const MapPoint a = collignon_forward(p);
    const MapPoint b = collignon_forward(GeoCoord(p.phi, p.lambda + kHalfPi));
    CHECK(std::fabs(b.x + a.y) < 1e-12);
    CHECK(std::fabs(b.y - a.x) < 1e-12);
  }
}

TEST_CASE("collignon round trips") {
  std::mt19937_64 rng(31);
  SUBCASE("sphere -> map -> sphere") {
    std::uniform_real_distribution<double> uz(-1.0, 1.0), ul(0.0, kTwoPi);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const GeoCoord p(std::asin(uz(rng)), ul(rng));
      if (kHalfPi - std::fabs(p.phi) < 1e-6) continue;
      const GeoCoord q = collignon_inverse(collignon_forward(p));
      worst = std::max(worst, angular_distance(p, q));
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("map -> sphere -> map, including the q=0 quadrant") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
      MapPoint m{u(rng), u(rng)};
      if (i % 4 == 0) m = MapPoint{-std::fabs(m.x), std::fabs(m.y)};  // bias into q=0
      const MapPoint m2 = collignon_forward(collignon_inverse(m));
      worst = std::max(worst, std::hypot(m2.x - m.x, m2.y - m.y));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("collignon inverse anchors and domain") {
  SUBCASE("center is the pole") {
    const GeoCoord g = collignon_inverse({0.0, 0.0});
    CHECK(g.phi == doctest::Approx(kHalfPi).epsilon(1e-15));
  }
  SUBCASE("(-1/2, 1/2) inverts to the 45E equator point") {
    const GeoCoord g = collignon_inverse({-0.5, 0.5});
    CHECK(std::fabs(g.phi) < 1e-12);
    CHECK(std::fabs(g.lambda - kPi / 4.0) < 1e-12);
  }
  SUBCASE("corners invert to the south pole") {
    for (const auto& c : {MapPoint{1, -1}, MapPoint{-1, -1}, MapPoint{-1, 1}, MapPoint{1, 1}})
      CHECK(collignon_inverse(c).phi == doctest::Approx(-kHalfPi).epsilon(1e-12));
  }
  SUBCASE("out-of-square input is a domain error") {
    CHECK_THROWS_AS(collignon_inverse({2.0, 2.0}), std::domain_error);
    CHECK_THROWS_AS(collignon_inverse({-1.1, 0.0}), std::domain_error);
  }
}

TEST_CASE("collignon numeric jacobian equals 1/pi") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uz(-0.95, 0.95), ul(0.0, kTwoPi);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double phi = std::asin(uz(rng));
    double lam = ul(rng);
    // keep the whole stencil inside one octant and hemisphere
    const double m = std::fmod(lam, kHalfPi);
    if (m < 1e-3 || kHalfPi - m < 1e-3 || std::fabs(phi) < 1e-3) {
      --i;
      continue;
    }
    const MapPoint pp = collignon_forward(GeoCoord(phi + h, lam));
    const MapPoint pm = collignon_forward(GeoCoord(phi - h, lam));
    const MapPoint lp = collignon_forward(GeoCoord(phi, lam + h));
    const MapPoint lm = collignon_forward(GeoCoord(phi, lam - h));
    const double det = ((pp.y - pm.y) * (lp.x - lm.x) - (pp.x - pm.x) * (lp.y - lm.y)) /
                       (4.0 * h * h) / std::cos(phi);
    CHECK(det * kPi == doctest::Approx(1.0).epsilon(1e-6));
  }
}
