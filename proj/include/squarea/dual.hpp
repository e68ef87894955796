#pragma once

#include <cmath>

namespace squarea {

/// First-order forward-mode dual number carrying partial derivatives with
/// respect to latitude and longitude. Lets the projection pipelines double as
/// their own analytic differentiators (exact per case branch), which is how
/// the distortion statistics are computed by default.
struct Dual {
  double v = 0.0;   // value
  double dp = 0.0;  // d/dphi
  double dl = 0.0;  // d/dlambda

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit for mixed arithmetic
  Dual(double value, double dphi, double dlambda) : v(value), dp(dphi), dl(dlambda) {}
};

inline double val(double x) { return x; }
inline double val(const Dual& x) { return x.v; }

inline Dual operator-(const Dual& a) { return {-a.v, -a.dp, -a.dl}; }
inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.dp + b.dp, a.dl + b.dl}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.dp - b.dp, a.dl - b.dl}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.dp * b.v + a.v * b.dp, a.dl * b.v + a.v * b.dl};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.dp - q * b.dp) * inv, (a.dl - q * b.dl) * inv};
}

inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  const double d = 0.5 / s;
  return {s, a.dp * d, a.dl * d};
}
inline Dual sin(const Dual& a) {
  const double c = std::cos(a.v);
  return {std::sin(a.v), a.dp * c, a.dl * c};
}
inline Dual cos(const Dual& a) {
  const double s = -std::sin(a.v);
  return {std::cos(a.v), a.dp * s, a.dl * s};
}
inline Dual asin(const Dual& a) {
  const double d = 1.0 / std::sqrt(1.0 - a.v * a.v);
  return {std::asin(a.v), a.dp * d, a.dl * d};
}
inline Dual acos(const Dual& a) {
  const double d = -1.0 / std::sqrt(1.0 - a.v * a.v);
  return {std::acos(a.v), a.dp * d, a.dl * d};
}
inline Dual atan(const Dual& a) {
  const double d = 1.0 / (1.0 + a.v * a.v);
  return {std::atan(a.v), a.dp * d, a.dl * d};
}
inline Dual atan2(const Dual& y, const Dual& x) {
  const double d = 1.0 / (x.v * x.v + y.v * y.v);
  return {std::atan2(y.v, x.v), (x.v * y.dp - y.v * x.dp) * d, (x.v * y.dl - y.v * x.dl) * d};
}
inline Dual fabs(const Dual& a) { return a.v < 0.0 ? -a : a; }

}  // namespace squarea
