#include "brownsig/brown.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "brownsig/error.hpp"
#include "brownsig/parallel.hpp"

namespace brownsig {

namespace {

constexpr double kPi = std::numbers::pi;

double lerp(double x0, double y0, double x1, double y1, double x) {
  if (!(x1 > x0)) return y0;
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

// Piecewise-linear interpolation of y over interval k of the profile, padded
// with (lo, y_lo) and (hi, y_hi) at the interval ends.
double interp_interval(const BrownProfile& p, std::size_t k, double x, double y_lo, double y_hi,
                       const std::vector<double>& y) {
  const Interval& w = p.omega_intervals[k];
  const std::size_t b = p.offsets[k], e = p.offsets[k + 1];
  if (b == e) return lerp(w.lo, y_lo, w.hi, y_hi, x);
  if (x <= p.a[b]) return lerp(w.lo, y_lo, p.a[b], y[b], x);
  if (x >= p.a[e - 1]) return lerp(p.a[e - 1], y[e - 1], w.hi, y_hi, x);
  const auto it = std::upper_bound(p.a.begin() + b, p.a.begin() + e, x);
  const std::size_t j = it - p.a.begin();
  return lerp(p.a[j - 1], y[j - 1], p.a[j], y[j], x);
}

}  // namespace

double BrownProfile::marginal_cdf(double x) const {
  double base = 0.0;
  for (std::size_t k = 0; k < omega_intervals.size(); ++k) {
    const Interval& w = omega_intervals[k];
    if (x <= w.lo) return base;
    if (x < w.hi) return interp_interval(*this, k, x, base, base + interval_mass[k], cdf);
    base += interval_mass[k];
  }
  return base;
}

double BrownProfile::halfheight_at(double x) const {
  for (std::size_t k = 0; k < omega_intervals.size(); ++k)
    if (omega_intervals[k].contains(x)) return interp_interval(*this, k, x, 0.0, 0.0, halfheight);
  return 0.0;
}

double BrownProfile::marginal_quantile(double p) const {
  if (omega_intervals.empty()) fail(Errc::InvalidInput, "empty profile");
  const double target = std::clamp(p, 0.0, 1.0) * mass;
  double base = 0.0;
  for (std::size_t k = 0; k < omega_intervals.size(); ++k) {
    const double top = base + interval_mass[k];
    if (target <= top || k + 1 == omega_intervals.size()) {
      const Interval& w = omega_intervals[k];
      const std::size_t b = offsets[k], e = offsets[k + 1];
      std::vector<double> xs{w.lo}, ys{base};
      xs.insert(xs.end(), a.begin() + b, a.begin() + e);
      ys.insert(ys.end(), cdf.begin() + b, cdf.begin() + e);
      xs.push_back(w.hi);
      ys.push_back(top);
      const auto it = std::lower_bound(ys.begin(), ys.end(), target);
      if (it == ys.begin()) return xs.front();
      if (it == ys.end()) return xs.back();
      const std::size_t j = it - ys.begin();
      return lerp(ys[j - 1], xs[j - 1], ys[j], xs[j], target);
    }
    base = top;
  }
  return omega_intervals.back().hi;
}

double lambda_mass_integrand(const Measure& mu, double t, const Interval& lam, double theta) {
  const double c = 0.5 * (lam.lo + lam.hi), h = 0.5 * (lam.hi - lam.lo);
  const double a0 = c - h * std::cos(theta);
  const BoundaryPoint bp = boundary_point(mu, t, a0);
  if (bp.v <= 0.0) return 0.0;
  const double rho = (1.0 - 0.5 * bp.slope) / (kPi * t);
  return 2.0 * bp.v * rho * h * std::sin(theta);
}

BrownDomain::BrownDomain(Measure mu, double t, const DomainOptions& opts) : mu_(std::move(mu)), t_(t), opts_(opts) {
  require_time(t);
  lambda_ = lambda_region(mu_, t_, opts_.region);
  if (lambda_.intervals.empty()) fail(Errc::NoConvergence, "no Lambda_t interval found on the scan grid");
  for (const Interval& l : lambda_.intervals) omega_.push_back({a_t(mu_, t_, l.lo), a_t(mu_, t_, l.hi)});
}

std::optional<std::size_t> BrownDomain::omega_index(double a, bool closed) const {
  for (std::size_t k = 0; k < omega_.size(); ++k) {
    const Interval& w = omega_[k];
    if (w.contains(a) || (closed && (a == w.lo || a == w.hi))) return k;
  }
  return std::nullopt;
}

double BrownDomain::a0_of_a(double a, std::optional<double> guess) const {
  const auto k = omega_index(a, true);
  if (!k) fail(Errc::OutsideOmega, "a=" + std::to_string(a) + " is not in Omega_t");
  const Interval& w = omega_[*k];
  const Interval& l = lambda_.intervals[*k];
  if (a == w.lo) return l.lo;
  if (a == w.hi) return l.hi;
  double lo = l.lo, hi = l.hi;
  double x = (guess && *guess > lo && *guess < hi) ? *guess : lo + (a - w.lo) / (w.hi - w.lo) * (hi - lo);
  const double ftol = 1e-14 * (1.0 + std::abs(a));
  for (int it = 0; it < 200; ++it) {
    const BoundaryPoint bp = boundary_point(mu_, t_, x);
    const double f = bp.a - a;
    if (std::abs(f) <= ftol) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    double xn = x - f / bp.slope;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 1e-16 * (1.0 + std::abs(x)) || hi - lo <= 1e-16 * (1.0 + std::abs(x))) return xn;
    x = xn;
  }
  fail(Errc::NoConvergence, "a0_of_a did not converge at a=" + std::to_string(a));
}

double BrownDomain::b_t(double a) const {
  if (!omega_index(a)) return 0.0;
  return 2.0 * v_t(mu_, t_, a0_of_a(a));
}

double BrownDomain::w_t(double a) const {
  if (!omega_index(a)) fail(Errc::OutsideOmega, "w_t requested outside Omega_t");
  const BoundaryPoint bp = boundary_point(mu_, t_, a0_of_a(a));
  return (1.0 / bp.slope - 0.5) / (2.0 * kPi * t_);
}

RegionVerdict BrownDomain::classify(std::complex<double> lambda, double tol) const {
  if (tol < 0.0) tol = 1e-9 * (1.0 + std::abs(lambda));
  double margin = std::abs(lambda.imag()) - b_t(lambda.real());
  if (const auto k = omega_index(lambda.real())) {
    // the square-root edge makes b_t a poor distance near an endpoint
    const Interval& w = omega_[*k];
    margin = std::max(margin, -std::min(lambda.real() - w.lo, w.hi - lambda.real()));
  } else {
    // off the real trace of Omega the distance to the nearest endpoint matters too
    double d = std::numeric_limits<double>::infinity();
    for (const Interval& w : omega_) d = std::min({d, std::abs(lambda.real() - w.lo), std::abs(lambda.real() - w.hi)});
    margin = std::hypot(lambda.imag(), d);
  }
  RegionVerdict::Tag tag = RegionVerdict::Tag::outside;
  if (std::abs(margin) <= tol)
    tag = RegionVerdict::Tag::boundary;
  else if (margin < 0.0)
    tag = RegionVerdict::Tag::inside;
  return {tag, margin};
}

double BrownDomain::s_outside(std::complex<double> lambda) const {
  if (classify(lambda).tag != RegionVerdict::Tag::outside)
    fail(Errc::OutsideOnly, "s_outside needs a point outside the closure of Omega_t");
  const std::complex<double> z = j_t_inverse(mu_, t_, lambda);
  const std::complex<double> g = cauchy(mu_, z);
  return log_potential(mu_, z.real(), z.imag() * z.imag()) - t_ * (g * g).real();
}

double BrownDomain::mass() const {
  double total = 0.0;
  quad::Tolerance tol;
  tol.abs = 1e-13;
  for (const Interval& l : lambda_.intervals)
    total += quad::integrate_scalar([&](double th) { return lambda_mass_integrand(mu_, t_, l, th); }, 0.0, kPi, tol);
  return total;
}

double BrownDomain::max_height() const {
  double best = 0.0;
  constexpr int kScan = 200;
  for (const Interval& l : lambda_.intervals) {
    const double step = l.length() / kScan;
    int arg = 1;
    double vmax = -1.0;
    for (int i = 1; i < kScan; ++i) {
      const double v = v_t(mu_, t_, l.lo + i * step);
      if (v > vmax) {
        vmax = v;
        arg = i;
      }
    }
    // golden section on the bracketing cell pair
    constexpr double g = 0.6180339887498949;
    double lo = l.lo + (arg - 1) * step, hi = l.lo + (arg + 1) * step;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = v_t(mu_, t_, x1), f2 = v_t(mu_, t_, x2);
    while (hi - lo > 1e-10 * (1.0 + std::abs(lo))) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = v_t(mu_, t_, x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = v_t(mu_, t_, x1);
      }
    }
    best = std::max({best, vmax, f1, f2});
  }
  return 2.0 * best;
}

BrownProfile BrownDomain::profile(int n_grid) const {
  if (n_grid < 16) fail(Errc::InvalidInput, "profile needs at least 16 grid points per interval");
  BrownProfile p;
  p.t = t_;
  p.omega_intervals = omega_;
  p.lambda_intervals = lambda_.intervals;
  const std::size_t n = static_cast<std::size_t>(n_grid);
  const std::size_t total = n * omega_.size();
  p.a.resize(total);
  p.a0.resize(total);
  p.halfheight.resize(total);
  p.density.resize(total);
  p.cdf.resize(total);
  p.near_boundary.assign(total, 0);
  p.offsets.resize(omega_.size() + 1);
  for (std::size_t k = 0; k <= omega_.size(); ++k) p.offsets[k] = k * n;

  for (std::size_t k = 0; k < omega_.size(); ++k) {
    const Interval& w = omega_[k];
    const double c = 0.5 * (w.lo + w.hi), h = 0.5 * (w.hi - w.lo);
    for (std::size_t i = 0; i < n; ++i) {
      p.a[k * n + i] = c - h * std::cos(kPi * (i + 0.5) / n);
      p.near_boundary[k * n + i] = (i < 2 || i + 2 >= n) ? 1 : 0;
    }
  }

  // root solves are independent; warm-start within each chunk
  std::vector<double> theta(total);
  parallel_chunks(
      total,
      [&](std::size_t b, std::size_t e) {
        std::optional<double> guess;
        double prev_a = 0.0, prev_slope = 1.0;
        std::size_t prev_k = omega_.size();
        for (std::size_t i = b; i < e; ++i) {
          const std::size_t k = i / n;
          if (k != prev_k) guess.reset();
          const double a = p.a[i];
          if (guess) guess = *guess + (a - prev_a) / prev_slope;
          const double a0 = a0_of_a(a, guess);
          const BoundaryPoint bp = boundary_point(mu_, t_, a0);
          p.a0[i] = a0;
          p.halfheight[i] = 2.0 * bp.v;
          p.density[i] = (1.0 / bp.slope - 0.5) / (2.0 * kPi * t_);
          const Interval& l = lambda_.intervals[k];
          theta[i] = std::acos(std::clamp((0.5 * (l.lo + l.hi) - a0) / (0.5 * l.length()), -1.0, 1.0));
          guess = a0;
          prev_a = a;
          prev_slope = bp.slope;
          prev_k = k;
        }
      },
      opts_.threads);

  // Marginal mass between consecutive grid points, integrated in the angle
  // variable of the Lambda interval where the integrand is smooth.
  const quad::Rule& rule = quad::gauss_legendre();
  auto segment = [&](const Interval& l, double th0, double th1) {
    const double half = 0.5 * (th1 - th0), mid = 0.5 * (th1 + th0);
    double s = 0.0;
    for (int q = 0; q < quad::kOrder; ++q) s += rule.w[q] * lambda_mass_integrand(mu_, t_, l, mid + half * rule.x[q]);
    return s * half;
  };
  std::vector<double> seg(total + omega_.size());
  parallel_chunks(
      seg.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
          const std::size_t k = j / (n + 1), i = j % (n + 1);
          const Interval& l = lambda_.intervals[k];
          const double th0 = i == 0 ? 0.0 : theta[k * n + i - 1];
          const double th1 = i == n ? kPi : theta[k * n + i];
          seg[j] = segment(l, th0, th1);
        }
      },
      opts_.threads);

  double running = 0.0;
  p.interval_mass.assign(omega_.size(), 0.0);
  for (std::size_t k = 0; k < omega_.size(); ++k) {
    const double start = running;
    for (std::size_t i = 0; i < n; ++i) {
      running += seg[k * (n + 1) + i];
      p.cdf[k * n + i] = running;
    }
    running += seg[k * (n + 1) + n];
    p.interval_mass[k] = running - start;
  }
  p.mass = running;
  return p;
}

std::vector<std::complex<double>> sample_brown(const BrownProfile& prof, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = prof.marginal_quantile(unif(rng));
    const double b = prof.halfheight_at(a);
    out.emplace_back(a, (2.0 * unif(rng) - 1.0) * b);
  }
  return out;
}

}  // namespace brownsig
