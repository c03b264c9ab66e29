#include "brownsig/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "brownsig/error.hpp"

namespace brownsig {

namespace {

constexpr double kPi = std::numbers::pi;

double require_inside_or_boundary(const BrownDomain& dom, std::complex<double> lambda) {
  if (dom.classify(lambda).tag == RegionVerdict::Tag::outside)
    fail(Errc::OutsideOmega, "point lies outside the closure of Omega_t");
  const double a = lambda.real();
  if (dom.omega_index(a, true)) return a;
  // boundary-tagged points just past an endpoint are snapped onto it
  double best = a, dist = std::numeric_limits<double>::infinity();
  for (const Interval& w : dom.omega())
    for (double e : {w.lo, w.hi})
      if (std::abs(e - a) < dist) {
        dist = std::abs(e - a);
        best = e;
      }
  return best;
}

}  // namespace

std::complex<double> U_t(const BrownDomain& dom, std::complex<double> lambda0) {
  const BoundaryPoint bp = boundary_point(dom.measure(), dom.t(), lambda0.real());
  const double b0 = lambda0.imag();
  if (std::abs(b0) > bp.v + 1e-9 * (1.0 + std::abs(lambda0)))
    fail(Errc::OutsideLambda, "point lies outside the closure of Lambda_t");
  return {bp.a, 2.0 * b0};
}

std::complex<double> u_t_inverse(const BrownDomain& dom, std::complex<double> lambda) {
  const double a = require_inside_or_boundary(dom, lambda);
  return {dom.a0_of_a(a), 0.5 * lambda.imag()};
}

double Q_t(const BrownDomain& dom, std::complex<double> lambda) {
  const double a = require_inside_or_boundary(dom, lambda);
  return 2.0 * dom.a0_of_a(a) - a;
}

double circular_density(const BrownDomain& dom, std::complex<double> lambda0) {
  const BoundaryPoint bp = boundary_point(dom.measure(), dom.t(), lambda0.real());
  if (!(std::abs(lambda0.imag()) < bp.v)) fail(Errc::OutsideLambda, "point is not inside Lambda_t");
  return (1.0 - 0.5 * bp.slope) / (kPi * dom.t());
}

double AdditiveLaw::cdf_at(double x) const {
  if (u.empty() || x <= u.front()) return 0.0;
  if (x >= u.back()) return cdf.back();
  const auto it = std::upper_bound(u.begin(), u.end(), x);
  const std::size_t j = it - u.begin();
  const double x0 = u[j - 1], x1 = u[j];
  if (!(x1 > x0)) return cdf[j];
  return cdf[j - 1] + (cdf[j] - cdf[j - 1]) * (x - x0) / (x1 - x0);
}

AdditiveLaw law_additive(const BrownProfile& prof) {
  AdditiveLaw law;
  const double scale = 1.0 / (2.0 * kPi * prof.t);
  double base = 0.0;
  for (std::size_t k = 0; k < prof.omega_intervals.size(); ++k) {
    const Interval& w = prof.omega_intervals[k];
    const Interval& l = prof.lambda_intervals[k];
    law.u.push_back(2.0 * l.lo - w.lo);
    law.f.push_back(0.0);
    law.cdf.push_back(base);
    for (std::size_t i = prof.offsets[k]; i < prof.offsets[k + 1]; ++i) {
      law.u.push_back(2.0 * prof.a0[i] - prof.a[i]);
      law.f.push_back(prof.halfheight[i] * scale);
      law.cdf.push_back(prof.cdf[i]);
    }
    base += prof.interval_mass[k];
    law.u.push_back(2.0 * l.hi - w.hi);
    law.f.push_back(0.0);
    law.cdf.push_back(base);
  }
  return law;
}

namespace {

double overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

// mass of w_t on the rectangle, integrated in a with a cosine substitution
double brown_side(const BrownDomain& dom, const Rectangle& r, const quad::Tolerance& tol) {
  const double c = 0.5 * (r.a1 + r.a2), h = 0.5 * (r.a2 - r.a1);
  const double t = dom.t();
  auto f = [&](double th) {
    const double a = c - h * std::cos(th);
    if (!dom.omega_index(a)) return 0.0;
    const double a0 = dom.a0_of_a(a);
    const BoundaryPoint bp = boundary_point(dom.measure(), t, a0);
    const double b = 2.0 * bp.v;
    const double w = (1.0 / bp.slope - 0.5) / (2.0 * kPi * t);
    return w * overlap(r.b1, r.b2, -b, b) * h * std::sin(th);
  };
  return quad::integrate_scalar(f, 0.0, kPi, tol);
}

// mass of the circular density on the preimage {a0 in [a0(a1), a0(a2)], 2 b0 in [b1, b2]}
double circular_side(const BrownDomain& dom, const Rectangle& r, const Interval& lam, const quad::Tolerance& tol) {
  const double lo = dom.omega_index(r.a1, true) ? dom.a0_of_a(r.a1) : lam.lo;
  const double hi = dom.omega_index(r.a2, true) ? dom.a0_of_a(r.a2) : lam.hi;
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double t = dom.t();
  auto f = [&](double th) {
    const double a0 = c - h * std::cos(th);
    const BoundaryPoint bp = boundary_point(dom.measure(), t, a0);
    if (bp.v <= 0.0) return 0.0;
    const double rho = (1.0 - 0.5 * bp.slope) / (kPi * t);
    return rho * overlap(0.5 * r.b1, 0.5 * r.b2, -bp.v, bp.v) * h * std::sin(th);
  };
  return quad::integrate_scalar(f, 0.0, kPi, tol);
}

}  // namespace

PushforwardReport pushforward_check(const BrownDomain& dom, int n_random, std::uint64_t seed) {
  PushforwardReport rep;
  quad::Tolerance tol;
  tol.abs = 1e-12;
  tol.rel = 1e-10;
  tol.max_depth = 30;
  const double H = 0.5 * dom.max_height() * 1.01;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<Rectangle, std::size_t>> rects;
  for (std::size_t k = 0; k < dom.omega().size(); ++k) {
    const Interval& w = dom.omega()[k];
    rects.push_back({{w.lo, w.hi, -2.0 * H, 2.0 * H}, k});
  }
  for (int i = 0; i < n_random; ++i) {
    const std::size_t k = static_cast<std::size_t>(unif(rng) * dom.omega().size()) % dom.omega().size();
    const Interval& w = dom.omega()[k];
    double x1 = w.lo + unif(rng) * w.length(), x2 = w.lo + unif(rng) * w.length();
    double y1 = (2.0 * unif(rng) - 1.0) * 2.0 * H, y2 = (2.0 * unif(rng) - 1.0) * 2.0 * H;
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    rects.push_back({{x1, x2, y1, y2}, k});
  }
  for (const auto& [r, k] : rects) {
    const double lhs = circular_side(dom, r, dom.lambda().intervals[k], tol);
    const double rhs = brown_side(dom, r, tol);
    rep.rectangles.push_back(r);
    rep.circular_side.push_back(lhs);
    rep.brown_side.push_back(rhs);
    rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(lhs - rhs));
  }
  return rep;
}

}  // namespace brownsig
