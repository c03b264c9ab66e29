#include "brownsig/jn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "brownsig/error.hpp"
#include "brownsig/subordination.hpp"

namespace brownsig {

namespace {

using cplx = std::complex<double>;

std::optional<cplx> residual(const Measure& mu, double t, double a, cplx g) {
  try {
    return g - cauchy(mu, a + t * std::conj(g));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Newton on the real 2-vector (Re g, Im g); the map is not holomorphic in g.
std::optional<cplx> newton_g(const Measure& mu, double t, double a, cplx g, int max_iter) {
  auto F = residual(mu, t, a, g);
  if (!F) return std::nullopt;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(*F) < 1e-14 * (1.0 + std::abs(g))) break;
    const cplx w = a + t * std::conj(g);
    cplx gp;
    try {
      gp = cauchy_prime(mu, w);
    } catch (const Error&) {
      return std::nullopt;
    }
    const cplx dx = 1.0 - t * gp;
    const cplx dy = cplx(0.0, 1.0) + cplx(0.0, t) * gp;
    Eigen::Matrix2d J;
    J << dx.real(), dy.real(), dx.imag(), dy.imag();
    const Eigen::Vector2d rhs(-F->real(), -F->imag());
    const Eigen::Vector2d step = J.fullPivLu().solve(rhs);
    if (!step.allFinite()) return std::nullopt;
    double damp = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h, damp *= 0.5) {
      const cplx gn = g + damp * cplx(step[0], step[1]);
      if (!(gn.imag() > 0.0)) continue;
      const auto Fn = residual(mu, t, a, gn);
      if (Fn && std::abs(*Fn) < std::abs(*F)) {
        g = gn;
        F = Fn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (std::abs(*F) >= 1e-11) return std::nullopt;
  return g;
}

}  // namespace

cplx solve_g(const Measure& mu, double t, double a, std::optional<cplx> seed, const JnOptions& opts) {
  require_time(t);
  // t Im g is v_t at a + t Re g, which is below sqrt(t); anything near zero has collapsed
  const double floor_im = 1e-9 / std::sqrt(t);
  if (seed && seed->imag() > 0.0) {
    const auto g = newton_g(mu, t, a, *seed, opts.max_iter);
    if (g && g->imag() > floor_im) return *g;
  }
  const Support s = mu.support();
  const double rt = std::sqrt(t);
  const double xlo = (s.m - rt - a) / t, xhi = (s.M + rt - a) / t;
  const double yhi = 1.0 / rt;
  const int n = std::max(opts.scan, 4);
  struct Cand {
    double err;
    cplx g;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx g(xlo + (xhi - xlo) * (i + 0.5) / n, yhi * (j + 0.5) / n);
      const auto F = residual(mu, t, a, g);
      if (F) cands.push_back({std::abs(*F), g});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) { return l.err < r.err; });
  const std::size_t tries = std::min<std::size_t>(cands.size(), 8);
  for (std::size_t k = 0; k < tries; ++k) {
    const auto g = newton_g(mu, t, a, cands[k].g, opts.max_iter);
    if (g && g->imag() > floor_im) return *g;
  }
  fail(Errc::NoComplexSolution, "no solution with Im g > 0 at a=" + std::to_string(a));
}

double jn_density(const Measure& mu, double t, double a, const JnOptions& opts, std::optional<cplx> seed) {
  const cplx g0 = solve_g(mu, t, a, seed, opts);
  auto re_g = [&](double x) { return solve_g(mu, t, x, g0, opts).real(); };
  auto central = [&](double h) { return (re_g(a + h) - re_g(a - h)) / (2.0 * h); };
  double h = opts.fd_step;
  for (int tries = 0;; ++tries) {
    try {
      const double d1 = central(h), d2 = central(0.5 * h);
      const double d = (4.0 * d2 - d1) / 3.0;
      return (1.0 / t + 2.0 * d) / (4.0 * std::numbers::pi);
    } catch (const Error& e) {
      // the stencil left Omega_t; shrink it
      if (e.code() != Errc::NoComplexSolution || tries >= 12) throw;
      h *= 0.25;
    }
  }
}

double jn_boundary_gap(const Measure& mu, double t, double a, double b, const JnOptions& opts) {
  const cplx g = solve_g(mu, t, a, std::nullopt, opts);
  const double r = b / (2.0 * t);
  return r * r - g.imag() * g.imag();
}

}  // namespace brownsig
