#include "brownsig/characteristics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "brownsig/error.hpp"
#include "brownsig/subordination.hpp"

namespace brownsig {

namespace {

void require_eps(double eps, bool allow_zero) {
  if (!std::isfinite(eps) || eps < 0.0 || (!allow_zero && eps == 0.0))
    fail(Errc::InvalidInput, allow_zero ? "epsilon must be >= 0" : "epsilon must be > 0");
}

}  // namespace

Momenta initial_momenta(const Measure& mu, const InitialData& init) {
  require_eps(init.eps0, false);
  const double a0 = init.lambda0.real(), b0 = init.lambda0.imag();
  const double v = std::sqrt(b0 * b0 + init.eps0);
  const KernelMoments k = kernel_moments(mu, a0, v);
  return {2.0 * (a0 * k.p0 - k.p1), 2.0 * b0 * k.p0, k.p0, k.p1};
}

double lifetime(const Measure& mu, const InitialData& init) {
  require_eps(init.eps0, true);
  const double b0 = init.lambda0.imag();
  const double v = std::sqrt(b0 * b0 + init.eps0);
  const double p = p0(mu, init.lambda0.real(), v);
  return std::isinf(p) ? 0.0 : 1.0 / p;
}

PathState flow(const InitialData& init, const Momenta& m, double t) {
  if (!(t >= 0.0)) fail(Errc::InvalidInput, "flow time must be >= 0");
  const double r = 1.0 - m.p0 * t;
  if (!(r > 0.0)) fail(Errc::PastLifetime, "t=" + std::to_string(t) + " is past the lifetime " + std::to_string(1.0 / m.p0));
  PathState s;
  s.t = t;
  s.lambda = {init.lambda0.real() - 0.5 * m.p_a0 * t, init.lambda0.imag() + 0.5 * m.p_b0 * t};
  s.eps = init.eps0 * r * r;
  s.p_a = m.p_a0;
  s.p_b = m.p_b0;
  s.p_eps = m.p0 / r;
  return s;
}

PathState flow(const Measure& mu, const InitialData& init, double t) {
  return flow(init, initial_momenta(mu, init), t);
}

double hamiltonian(const PathState& s) {
  return -0.25 * (s.p_a * s.p_a - s.p_b * s.p_b) - s.eps * s.p_eps * s.p_eps;
}

double s_initial(const Measure& mu, std::complex<double> lambda, double eps) {
  require_eps(eps, true);
  return log_potential(mu, lambda.real(), lambda.imag() * lambda.imag() + eps);
}

double hj_value(const Measure& mu, const InitialData& init, double t) {
  const Momenta m = initial_momenta(mu, init);
  const PathState s0 = flow(init, m, 0.0);
  if (!(1.0 - m.p0 * t > 0.0)) fail(Errc::PastLifetime, "t is past the lifetime");
  return s_initial(mu, init.lambda0, init.eps0) + t * hamiltonian(s0);
}

namespace {

struct FlowEval {
  Eigen::Vector3d r;
  Eigen::Matrix3d J;
  double reach;  // 1 - t p0; positive when t is before the lifetime
};

// Residual of the time-t flow map at X = (a0, b0, eps0) against (a, b, eps), with analytic Jacobian.
FlowEval eval_flow(const Measure& mu, double t, const Eigen::Vector3d& X, const Eigen::Vector3d& target) {
  const double a0 = X[0], b0 = X[1], e0 = X[2];
  const double v2 = b0 * b0 + e0;
  const KernelMoments k = kernel_moments(mu, a0, std::sqrt(v2));
  const double pa = 2.0 * (a0 * k.p0 - k.p1), pb = 2.0 * b0 * k.p0;
  const double r0 = 1.0 - t * k.p0;
  FlowEval f;
  f.reach = r0;
  f.r << a0 - 0.5 * pa * t - target[0], b0 + 0.5 * pb * t - target[1], e0 * r0 * r0 - target[2];
  f.J << 1.0 - t * (v2 * k.q0 - k.q2), 2.0 * t * b0 * k.q1, t * k.q1,
      -2.0 * t * b0 * k.q1, 1.0 + t * k.p0 - 2.0 * t * b0 * b0 * k.q0, -t * b0 * k.q0,
      4.0 * t * e0 * r0 * k.q1, 4.0 * t * e0 * r0 * b0 * k.q0, r0 * r0 + 2.0 * t * e0 * r0 * k.q0;
  return f;
}

struct NewtonResult {
  Eigen::Vector3d X;
  double residual;
  int iterations;
  bool ok;
};

NewtonResult newton_flow(const Measure& mu, double t, Eigen::Vector3d X, const Eigen::Vector3d& target, double tol,
                         int max_iter) {
  // move the start before the lifetime: p0 <= 1/v^2, so v^2 > t suffices
  for (int i = 0; i < 200; ++i) {
    if (t * p0(mu, X[0], std::sqrt(X[1] * X[1] + X[2])) < 1.0) break;
    X[2] = 2.0 * X[2] + t;
  }
  FlowEval E = eval_flow(mu, t, X, target);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (E.r.norm() <= 1e-3 * tol) break;
    Eigen::FullPivLU<Eigen::Matrix3d> lu(E.J);
    if (!lu.isInvertible()) fail(Errc::DegenerateJacobian, "flow-map Jacobian is singular");
    const Eigen::Vector3d dX = lu.solve(-E.r);
    double damp = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h, damp *= 0.5) {
      const Eigen::Vector3d Xn = X + damp * dX;
      if (!(Xn[2] > 0.0)) continue;
      const FlowEval En = eval_flow(mu, t, Xn, target);
      if (En.reach > 0.0 && En.r.norm() < E.r.norm()) {
        X = Xn;
        E = En;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {X, E.r.norm(), it, E.r.norm() <= tol && E.reach > 0.0};
}

}  // namespace

FlowPreimage invert_flow(const Measure& mu, double t, std::complex<double> lambda, double eps,
                         const FlowSolveOptions& opts) {
  require_time(t);
  require_eps(eps, false);
  const Eigen::Vector3d target(lambda.real(), lambda.imag(), eps);
  const double tol = opts.tol * (1.0 + std::abs(lambda));

  std::vector<Eigen::Vector3d> starts;
  if (opts.start) starts.emplace_back(opts.start->lambda0.real(), opts.start->lambda0.imag(), opts.start->eps0);
  starts.emplace_back(lambda.real(), lambda.imag(), eps);
  starts.emplace_back(lambda.real(), 0.5 * lambda.imag(), eps);
  bool tried_outside = false;
  auto outside_start = [&]() {
    tried_outside = true;
    try {
      const std::complex<double> z = j_t_inverse(mu, t, lambda);
      const double r = 1.0 - t * p0(mu, z.real(), std::abs(z.imag()));
      if (r > 0.0) starts.emplace_back(z.real(), z.imag(), eps / (r * r));
    } catch (const Error&) {
    }
  };
  if (opts.probe_branches) outside_start();

  std::vector<FlowPreimage> found;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const NewtonResult nr = newton_flow(mu, t, starts[i], target, tol, opts.max_iter);
    if (nr.ok) {
      const InitialData init{{nr.X[0], nr.X[1]}, nr.X[2]};
      found.push_back({init, hj_value(mu, init, t), nr.residual, nr.iterations});
      if (!opts.probe_branches) break;
    }
    if (i + 1 == starts.size() && found.empty() && !tried_outside) outside_start();
  }
  if (found.empty()) fail(Errc::NoConvergence, "flow-map inversion did not converge");
  if (opts.probe_branches) {
    for (const FlowPreimage& f : found) {
      const double dx = std::abs(f.init.lambda0 - found[0].init.lambda0) + std::abs(f.init.eps0 - found[0].init.eps0);
      if (dx > 1e-6 && std::abs(f.value - found[0].value) > 1e-8)
        fail(Errc::AmbiguousBranch, "two preimages with different S values");
    }
  }
  return found.front();
}

double s_of(const Measure& mu, double t, std::complex<double> lambda, double eps, const FlowSolveOptions& opts) {
  return invert_flow(mu, t, lambda, eps, opts).value;
}

StencilDerivatives stencil_derivatives(const Measure& mu, double t, std::complex<double> lambda, double eps) {
  const FlowPreimage center = invert_flow(mu, t, lambda, eps);
  FlowSolveOptions warm;
  warm.start = center.init;
  auto S = [&](double tt, std::complex<double> l, double e) { return invert_flow(mu, tt, l, e, warm).value; };
  const double ht = 1e-4 * t;
  const double hx = 1e-4 * (1.0 + std::abs(lambda));
  const double he = 1e-4 * eps;
  StencilDerivatives d;
  d.s = center.value;
  d.s_t = (S(t + ht, lambda, eps) - S(t - ht, lambda, eps)) / (2.0 * ht);
  d.s_a = (S(t, lambda + hx, eps) - S(t, lambda - hx, eps)) / (2.0 * hx);
  const std::complex<double> ih(0.0, hx);
  d.s_b = (S(t, lambda + ih, eps) - S(t, lambda - ih, eps)) / (2.0 * hx);
  d.s_eps = (S(t, lambda, eps + he) - S(t, lambda, eps - he)) / (2.0 * he);
  return d;
}

double pde_residual(const Measure& mu, double t, std::complex<double> lambda, double eps) {
  const StencilDerivatives d = stencil_derivatives(mu, t, lambda, eps);
  return std::abs(d.s_t - 0.25 * (d.s_a * d.s_a - d.s_b * d.s_b) - eps * d.s_eps * d.s_eps);
}

}  // namespace brownsig
