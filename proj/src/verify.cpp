#include "brownsig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "brownsig/characteristics.hpp"
#include "brownsig/error.hpp"
#include "brownsig/maps.hpp"
#include "brownsig/subordination.hpp"

namespace brownsig {

using cplx = std::complex<double>;

double subordination_defect(const BrownDomain& dom, int per_interval) {
  const Measure& mu = dom.measure();
  const double t = dom.t();
  double worst = 0.0;
  for (const Interval& lam : dom.lambda().intervals) {
    for (int k = 1; k <= per_interval; ++k) {
      const double a0 = lam.lo + lam.length() * k / (per_interval + 1.0);
      const BoundaryPoint bp = boundary_point(mu, t, a0);
      const cplx z(a0, bp.v);
      const double scale = 1.0 + std::abs(z);
      worst = std::max(worst, std::abs(t * p0(mu, a0, bp.v) - 1.0));
      worst = std::max(worst, std::abs(H_t(mu, t, z).imag()) / scale);
      worst = std::max(worst, std::abs(J_t(mu, t, z) - cplx(bp.a, 2.0 * bp.v)) / scale);
    }
  }
  return worst;
}

JnComparison jn_compare(const BrownDomain& dom, int per_interval, const JnOptions& opts) {
  const Measure& mu = dom.measure();
  const double t = dom.t();
  JnComparison out;
  for (const Interval& om : dom.omega()) {
    const double lo = om.lo + 0.01 * om.length(), hi = om.hi - 0.01 * om.length();
    std::optional<cplx> seed;
    for (int k = 0; k < per_interval; ++k) {
      const double a = per_interval == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (per_interval - 1.0);
      const cplx g = solve_g(mu, t, a, seed, opts);
      seed = g;
      const double a0 = dom.a0_of_a(a);
      out.shift_gap = std::max(out.shift_gap, std::abs(t * g.real() - (a0 - a)));
      out.density_gap = std::max(out.density_gap, std::abs(jn_density(mu, t, a, opts, g) - dom.w_t(a)));
      ++out.points;
    }
  }
  return out;
}

double max_pde_residual(const Measure& mu, double t, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Support s = mu.support();
  std::uniform_real_distribution<double> ua(s.m - 2.0, s.M + 2.0), ub(-2.0, 2.0), ue(0.1, 1.0);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const cplx lambda(ua(rng), ub(rng));
    const double eps = ue(rng);
    worst = std::max(worst, pde_residual(mu, t, lambda, eps));
  }
  return worst;
}

double motion_drift(const Measure& mu, double t, int paths, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Support s = mu.support();
  std::uniform_real_distribution<double> ua(s.m - 2.0, s.M + 2.0), ub(-2.0, 2.0), ue(0.1, 1.0);
  double worst = 0.0;
  for (int k = 0; k < paths; ++k) {
    const InitialData init{cplx(ua(rng), ub(rng)), ue(rng)};
    const Momenta mom = initial_momenta(mu, init);
    const double horizon = std::min(t, 0.9 * lifetime(mu, init));
    const PathState s0 = flow(init, mom, 0.0);
    const double h0 = hamiltonian(s0);
    const double c0 = s0.eps * s0.p_eps * s0.p_eps;
    const double scale_h = 0.25 * (s0.p_a * s0.p_a + s0.p_b * s0.p_b) + std::abs(c0);
    for (int j = 1; j <= 10; ++j) {
      const PathState st = flow(init, mom, horizon * j / 10.0);
      const double c = st.eps * st.p_eps * st.p_eps;
      worst = std::max({worst, std::abs(st.p_a - s0.p_a) / std::max(std::abs(s0.p_a), 1e-300),
                        std::abs(st.p_b - s0.p_b) / std::max(std::abs(s0.p_b), 1e-300),
                        std::abs(c - c0) / std::max(std::abs(c0), 1e-300),
                        std::abs(hamiltonian(st) - h0) / std::max(scale_h, 1e-300)});
    }
  }
  return worst;
}

double max_outside_laplacian(const BrownDomain& dom, int points, std::uint64_t seed, double h) {
  std::mt19937_64 rng(seed);
  const Support s = dom.measure().support();
  std::uniform_real_distribution<double> ua(s.m - 2.0, s.M + 2.0), ub(-2.0, 2.0);
  double worst = 0.0;
  int found = 0;
  for (int tries = 0; found < points; ++tries) {
    if (tries > 1000 * points) fail(Errc::NoConvergence, "could not sample points outside Omega_t");
    const cplx z(ua(rng), ub(rng));
    const RegionVerdict v = dom.classify(z);
    // keep the whole stencil clear of the boundary
    if (v.tag != RegionVerdict::Tag::outside || v.margin < 20.0 * h) continue;
    ++found;
    const double c = dom.s_outside(z);
    const double lap = (dom.s_outside(z + h) + dom.s_outside(z - h) + dom.s_outside(z + cplx(0, h)) +
                        dom.s_outside(z - cplx(0, h)) - 4.0 * c) /
                       (h * h);
    worst = std::max(worst, std::abs(lap) / (1.0 + std::abs(c)));
  }
  return worst;
}

namespace {

template <class F>
CheckResult check(const std::string& name, double limit, F&& f) {
  CheckResult r;
  r.name = name;
  r.limit = limit;
  try {
    r.value = f(r.detail);
    r.pass = r.value < limit;
  } catch (const Error& e) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.detail = e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_invariants(const Measure& mu, double t, const VerifyOptions& opts) {
  require_time(t);
  const double k = opts.tol_scale;
  const BrownDomain dom(mu, t);
  std::vector<CheckResult> out;
  out.push_back(check("mass", 1e-6 * k, [&](std::string& d) {
    const BrownProfile prof = dom.profile(opts.grid);
    d = "profile mass " + std::to_string(prof.mass);
    return std::abs(dom.mass() - 1.0);
  }));
  out.push_back(check("subordination identities", 1e-9 * k, [&](std::string&) { return subordination_defect(dom); }));
  out.push_back(check("pushforward rectangles", 1e-5 * k, [&](std::string& d) {
    const PushforwardReport rep = pushforward_check(dom);
    d = std::to_string(rep.rectangles.size()) + " rectangles";
    return rep.max_discrepancy;
  }));
  JnComparison jn;
  out.push_back(check("jn density", 1e-5 * k, [&](std::string& d) {
    jn = jn_compare(dom, opts.jn_points);
    d = std::to_string(jn.points) + " points";
    return jn.density_gap;
  }));
  out.push_back(check("jn shift", 1e-8 * k, [&](std::string&) {
    if (jn.points == 0) fail(Errc::NoComplexSolution, "jn comparison did not run");
    return jn.shift_gap;
  }));
  out.push_back(check("pde residual", 1e-4 * k, [&](std::string&) {
    return max_pde_residual(mu, t, opts.pde_points, opts.seed);
  }));
  out.push_back(check("constants of motion", 1e-14 * k, [&](std::string&) {
    return motion_drift(mu, t, 10, opts.seed + 1);
  }));
  out.push_back(check("outside harmonicity", 1e-4 * k, [&](std::string&) {
    return max_outside_laplacian(dom, opts.harmonic_points, opts.seed + 2);
  }));
  return out;
}

}  // namespace brownsig
