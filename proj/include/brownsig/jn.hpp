#pragma once

#include <complex>
#include <optional>

#include "brownsig/measure.hpp"

namespace brownsig {

struct JnOptions {
  double fd_step = 1e-3;  // first difference step; Richardson uses it and half of it
  int scan = 40;          // coarse seed grid per axis
  int max_iter = 100;
};

// Solution with Im g > 0 of g = G(a + t conj(g)).
std::complex<double> solve_g(const Measure& mu, double t, double a,
                             std::optional<std::complex<double>> seed = std::nullopt, const JnOptions& opts = {});
// (1/4 pi)(1/t + 2 d/da Re g).
double jn_density(const Measure& mu, double t, double a, const JnOptions& opts = {},
                  std::optional<std::complex<double>> seed = std::nullopt);
// (b / 2t)^2 - (Im g)^2: zero exactly on the boundary of Omega_t.
double jn_boundary_gap(const Measure& mu, double t, double a, double b, const JnOptions& opts = {});

}  // namespace brownsig
