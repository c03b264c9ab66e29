#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "brownsig/measure.hpp"

namespace testing {

using brownsig::Measure;

inline Measure semicircle(double s = 1.0) { return brownsig::validate(brownsig::SemicircleSpec{s}); }
inline Measure uniform(double lo = -1.0, double hi = 1.0) { return brownsig::validate(brownsig::UniformSpec{lo, hi}); }
inline Measure bernoulli(double alpha = 2.0 / 3.0) { return brownsig::validate(brownsig::BernoulliSpec{alpha}); }
inline Measure cubic_power() {
  return brownsig::validate(brownsig::PiecewisePolySpec{{brownsig::PolyPiece{0.0, 1.0, {0.0, 0.0, 3.0}}}});
}

// Plain trapezoid rule against a density on [lo, hi].
inline double trapezoid(const std::function<double(double)>& f, double lo, double hi, long n = 1000000) {
  const double h = (hi - lo) / n;
  double s = 0.5 * (f(lo) + f(hi));
  for (long i = 1; i < n; ++i) s += f(lo + i * h);
  return s * h;
}

inline double semicircle_density(double s, double x) {
  const double r2 = 4.0 * s - x * x;
  return r2 > 0.0 ? std::sqrt(r2) / (2.0 * std::numbers::pi * s) : 0.0;
}

}  // namespace testing

namespace testing {

// Closed forms for the uniform law on [-1, 1], parametrized by half the height v.
inline double uniform_A0(double t, double v) {
  if (v == 0.0) return std::sqrt(t + 1.0);
  return std::sqrt(2.0 * v / std::tan(2.0 * v / t) + 1.0 - v * v);
}
inline double uniform_A(double t, double v) {
  const double A0 = uniform_A0(t, v);
  return A0 + 0.25 * t * std::log(1.0 - 4.0 * A0 / ((A0 + 1.0) * (A0 + 1.0) + v * v));
}
inline double uniform_W(double t, double v) {
  const double c = std::cos(4.0 * v / t), s = std::sin(4.0 * v / t);
  const double num = t * t + 4.0 * (t + 2.0) * v * v - t * (t + 4.0 * v * v) * c - 4.0 * t * v * s;
  const double den = 4.0 * std::numbers::pi * t * (-t * t + 8.0 * v * v + t * t * c);
  return num / den;
}
inline double uniform_half_width(double t) {
  const double r = std::sqrt(t + 1.0);
  return r - 0.5 * t * std::log((r + 1.0) / (r - 1.0));
}
// smallest positive root of 1/v = tan(v/t)
inline double uniform_vmax(double t) {
  double lo = 1e-12, hi = 0.5 * std::numbers::pi * t * (1.0 - 1e-15);
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (1.0 / mid - std::tan(mid / t) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Bernoulli law with mass alpha at +1.
inline double bernoulli_quartic(double alpha, double t, double a) {
  const double d = 2.0 * alpha - 1.0;
  return -4.0 * a * a * a * a + 4.0 * t * d * a * a * a - (t * t + 4.0 * t - 8.0) * a * a + 2.0 * t * (t - 2.0) * d * a -
         d * d * t * t + 4.0 * t - 4.0;
}
inline double bernoulli_density(double alpha, double t, double a) {
  const double beta = 1.0 - alpha;
  return (-1.0 / t + beta / ((a - 1.0) * (a - 1.0)) + alpha / ((a + 1.0) * (a + 1.0))) / (4.0 * std::numbers::pi);
}

}  // namespace testing
