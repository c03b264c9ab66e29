#include "brownsig/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "brownsig/error.hpp"

namespace brownsig {

void require_time(double t) {
  if (!std::isfinite(t) || !(t > 0.0)) fail(Errc::InvalidInput, "t must be a positive finite number");
}

namespace {

// Root of phi(u) = 1/p0(a0, sqrt u) - t on (0, t); phi is increasing with
// phi' = q0/p0^2, so Newton is safeguarded by the sign bracket.
BoundaryPoint solve_boundary(const Measure& mu, double t, double a0) {
  require_time(t);
  if (!std::isfinite(a0)) fail(Errc::InvalidInput, "a0 must be finite");
  BoundaryPoint bp;
  bp.a0 = a0;
  const RealAxisMoments ram = real_axis_moments(mu, a0);
  if (!(ram.p0 > 1.0 / t)) {
    bp.v = 0.0;
    bp.a = a0 * (1.0 - t * ram.p0) + t * ram.p1;  // = a0 - t G(a0)
    bp.slope = 1.0 + t * ram.p0;
    return bp;
  }
  double lo = 0.0, hi = t;
  double u = 0.5 * t;
  KernelMoments mom{};
  bool done = false;
  for (int it = 0; it < 200; ++it) {
    mom = kernel_moments(mu, a0, std::sqrt(u));
    const double phi = 1.0 / mom.p0 - t;
    if (phi == 0.0) {
      done = true;
      break;
    }
    if (phi < 0.0)
      lo = u;
    else
      hi = u;
    const double dphi = mom.q0 / (mom.p0 * mom.p0);
    double un = u - phi / dphi;
    if (!(un > lo && un < hi)) un = 0.5 * (lo + hi);
    const double step = std::abs(un - u);
    if (step <= 1e-15 * u || hi - lo <= 4e-16 * hi) {
      if (step > 1e-12 * u) {
        u = un;
        mom = kernel_moments(mu, a0, std::sqrt(u));
      }
      done = true;
      break;
    }
    u = un;
  }
  if (!done) fail(Errc::NoConvergence, "v_t root solve did not converge at a0=" + std::to_string(a0));
  bp.v = std::sqrt(u);
  bp.mom = mom;
  bp.a = t * mom.p1;
  if (!(mom.q0 > 0.0)) fail(Errc::DegenerateJacobian, "q0 not positive");
  bp.slope = 2.0 * t * (mom.q0 * mom.q2 - mom.q1 * mom.q1) / mom.q0;
  return bp;
}

bool in_lambda(const Measure& mu, double t, double a0) { return p0(mu, a0, 0.0) > 1.0 / t; }

}  // namespace

BoundaryPoint boundary_point(const Measure& mu, double t, double a0) { return solve_boundary(mu, t, a0); }

double v_t(const Measure& mu, double t, double a0) { return solve_boundary(mu, t, a0).v; }

double a_t(const Measure& mu, double t, double a0) { return solve_boundary(mu, t, a0).a; }

double da_t_da0(const Measure& mu, double t, double a0) { return solve_boundary(mu, t, a0).slope; }

LambdaRegion lambda_region(const Measure& mu, double t, const RegionOptions& opts) {
  require_time(t);
  const Support s = mu.support();
  const double rt = std::sqrt(t);
  const double lo = s.m - rt, hi = s.M + rt;
  const int n = std::max(opts.scan_points, 16);
  std::vector<double> grid;
  grid.reserve(n + mu.atoms().size() + mu.pieces().size() + 1);
  for (int i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * i / (n - 1));
  // points known to lie in Lambda, so no component is missed around them
  for (const Atom& a : mu.atoms()) grid.push_back(a.x);
  for (const PolyPiece& p : mu.pieces()) grid.push_back(0.5 * (p.lo + p.hi));
  if (mu.kind() == Measure::Kind::semicircle) grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<char> inside(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) inside[i] = in_lambda(mu, t, grid[i]);

  // returns a point on the outside of the transition
  auto refine = [&](double out, double in) {
    for (int k = 0; k < opts.refine_steps; ++k) {
      const double mid = 0.5 * (out + in);
      if (mid == out || mid == in) break;
      if (in_lambda(mu, t, mid))
        in = mid;
      else
        out = mid;
    }
    return out;
  };

  LambdaRegion region;
  region.t = t;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (!inside[i]) {
      ++i;
      continue;
    }
    const double left = i == 0 ? grid[0] : refine(grid[i - 1], grid[i]);
    std::size_t j = i;
    while (j + 1 < grid.size() && inside[j + 1]) ++j;
    const double right = j + 1 == grid.size() ? grid[j] : refine(grid[j + 1], grid[j]);
    region.intervals.push_back({left, right});
    i = j + 1;
  }
  return region;
}

std::complex<double> H_t(const Measure& mu, double t, std::complex<double> z) { return z + t * cauchy(mu, z); }

std::complex<double> J_t(const Measure& mu, double t, std::complex<double> z) { return z - t * cauchy(mu, z); }

namespace {

std::optional<std::complex<double>> newton_j(const Measure& mu, double t, std::complex<double> z,
                                             std::complex<double> target, double want, int max_iter) {
  auto residual = [&](std::complex<double> w) -> std::optional<std::complex<double>> {
    try {
      return J_t(mu, t, w) - target;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  auto F = residual(z);
  if (!F) return std::nullopt;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(*F) <= want) return z;
    std::complex<double> dJ;
    try {
      dJ = 1.0 - t * cauchy_prime(mu, z);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (dJ == 0.0) return std::nullopt;
    const std::complex<double> step = *F / dJ;
    double damp = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h, damp *= 0.5) {
      const auto zn = z - damp * step;
      const auto Fn = residual(zn);
      if (Fn && std::abs(*Fn) < std::abs(*F)) {
        z = zn;
        F = Fn;
        accepted = true;
        break;
      }
    }
    if (!accepted) return std::abs(*F) <= 10.0 * want ? std::optional(z) : std::nullopt;
  }
  return std::abs(*F) <= want ? std::optional(z) : std::nullopt;
}

bool outside_lambda(const Measure& mu, double t, std::complex<double> z) {
  const double v = std::abs(z.imag());
  return p0(mu, z.real(), v) <= (1.0 / t) * (1.0 + 1e-9);
}

}  // namespace

std::complex<double> j_t_inverse(const Measure& mu, double t, std::complex<double> lambda) {
  require_time(t);
  const double want = 1e-12 * (1.0 + std::abs(lambda));

  std::vector<std::complex<double>> starts;
  try {
    starts.push_back(lambda + t * cauchy(mu, lambda));
  } catch (const Error&) {
  }
  starts.push_back(lambda);
  for (const auto& z0 : starts) {
    const auto z = newton_j(mu, t, z0, lambda, want, 100);
    if (!z) continue;
    if (outside_lambda(mu, t, *z)) return *z;
  }

  // Continuation down a vertical ray; the ray from lambda away from the real
  // axis never enters Omega, which is vertically convex.
  const Support s = mu.support();
  const double sign = lambda.imag() < 0.0 ? -1.0 : 1.0;
  const double height = 10.0 * (1.0 + std::abs(lambda) + (s.M - s.m) + std::sqrt(t));
  constexpr int kSteps = 64;
  std::complex<double> target = lambda + std::complex<double>(0.0, sign * height);
  std::complex<double> z = target + t * cauchy(mu, target);
  for (int k = 0; k <= kSteps; ++k) {
    const double frac = 1.0 - double(k) / kSteps;
    target = lambda + std::complex<double>(0.0, sign * height * frac * frac);
    const double w = k == kSteps ? want : 1e-10 * (1.0 + std::abs(target));
    const auto next = newton_j(mu, t, z, target, w, 100);
    if (!next) fail(Errc::NoConvergence, "J_t inversion failed along continuation path");
    z = *next;
  }
  if (!outside_lambda(mu, t, z)) fail(Errc::WrongBasin, "J_t inverse landed inside Lambda_t");
  return z;
}

}  // namespace brownsig
