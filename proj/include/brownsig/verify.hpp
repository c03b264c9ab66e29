#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brownsig/brown.hpp"
#include "brownsig/jn.hpp"

namespace brownsig {

struct CheckResult {
  std::string name;
  double value = 0.0;  // worst observed error, or NaN when the check threw
  double limit = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  int grid = 1024;
  int jn_points = 200;      // per Omega interval
  int pde_points = 20;
  int harmonic_points = 50;
  std::uint64_t seed = 2024;
  double tol_scale = 1.0;   // multiplies every limit
};

// Worst |t p0(a0, v) - 1|, |Im H_t| and |J_t - (a_t + 2iv)| on boundary points of Lambda_t.
double subordination_defect(const BrownDomain& dom, int per_interval = 64);

struct JnComparison {
  double density_gap = 0.0;  // max |jn_density - w_t|
  double shift_gap = 0.0;    // max |t Re g - (a0 - a)|
  std::size_t points = 0;
};
// Uniform grid on the inner 98% of each interval of Omega_t.
JnComparison jn_compare(const BrownDomain& dom, int per_interval = 200, const JnOptions& opts = {});

// lambda within 2 units of the support, eps in [0.1, 1].
double max_pde_residual(const Measure& mu, double t, int points, std::uint64_t seed);
// Relative drift of p_a, p_b, eps p_eps^2 and H at 10 times along random characteristics.
double motion_drift(const Measure& mu, double t, int paths, std::uint64_t seed);
// max |5-point Laplacian of s_outside| / (1 + |s|) at random points well outside Omega_t.
double max_outside_laplacian(const BrownDomain& dom, int points, std::uint64_t seed, double h = 1e-3);

std::vector<CheckResult> run_invariants(const Measure& mu, double t, const VerifyOptions& opts = {});

}  // namespace brownsig
