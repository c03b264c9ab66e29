#pragma once

#include <complex>
#include <optional>

#include "brownsig/measure.hpp"

namespace brownsig {

struct InitialData {
  std::complex<double> lambda0;
  double eps0;
};

struct Momenta {
  double p_a0;
  double p_b0;
  double p0;
  double p1;
};

struct PathState {
  double t;
  std::complex<double> lambda;
  double eps;
  double p_a;
  double p_b;
  double p_eps;
};

Momenta initial_momenta(const Measure& mu, const InitialData& init);
// 1/p0. With eps0 = 0 this is T(lambda0) and is 0 when the integral diverges.
double lifetime(const Measure& mu, const InitialData& init);
PathState flow(const Measure& mu, const InitialData& init, double t);
PathState flow(const InitialData& init, const Momenta& mom, double t);
double hamiltonian(const PathState& s);

double s_initial(const Measure& mu, std::complex<double> lambda, double eps);
// S along the characteristic: s_initial + t * H0.
double hj_value(const Measure& mu, const InitialData& init, double t);

struct FlowSolveOptions {
  int max_iter = 100;
  double tol = 1e-10;
  std::optional<InitialData> start;
  // Also solve from the J_t-inverse start and throw AmbiguousBranch on disagreement.
  bool probe_branches = false;
};

struct FlowPreimage {
  InitialData init;
  double value;
  double residual;
  int iterations;
};

// Initial data whose characteristic reaches (lambda, eps) at time t.
FlowPreimage invert_flow(const Measure& mu, double t, std::complex<double> lambda, double eps,
                         const FlowSolveOptions& opts = {});
double s_of(const Measure& mu, double t, std::complex<double> lambda, double eps, const FlowSolveOptions& opts = {});

struct StencilDerivatives {
  double s;
  double s_t, s_a, s_b, s_eps;
};
// Central differences of s_of; steps 1e-4 scaled by t, (1 + |lambda|) and eps.
StencilDerivatives stencil_derivatives(const Measure& mu, double t, std::complex<double> lambda, double eps);
double pde_residual(const Measure& mu, double t, std::complex<double> lambda, double eps);

}  // namespace brownsig
