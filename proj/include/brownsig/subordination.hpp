#pragma once

#include <complex>
#include <vector>

#include "brownsig/measure.hpp"

namespace brownsig {

// Real trace of the domain where the characteristic lifetime is below t:
// maximal open intervals on which v_t > 0.
struct LambdaRegion {
  double t = 0.0;
  std::vector<Interval> intervals;
};

struct RegionOptions {
  int scan_points = 4096;
  int refine_steps = 200;
};

// Everything known about the boundary of the Lambda domain above a0.
struct BoundaryPoint {
  double a0 = 0.0;
  double v = 0.0;      // v_t(a0)
  double a = 0.0;      // a_t(a0)
  double slope = 0.0;  // da_t/da0
  KernelMoments mom{};  // at (a0, v); only filled when v > 0
};

double v_t(const Measure& mu, double t, double a0);
BoundaryPoint boundary_point(const Measure& mu, double t, double a0);
LambdaRegion lambda_region(const Measure& mu, double t, const RegionOptions& opts = {});

double a_t(const Measure& mu, double t, double a0);
// Inside Lambda: 2t(q0 q2 - q1^2)/q0. Outside: derivative of a0 - t G(a0).
double da_t_da0(const Measure& mu, double t, double a0);

std::complex<double> H_t(const Measure& mu, double t, std::complex<double> z);
std::complex<double> J_t(const Measure& mu, double t, std::complex<double> z);
// Inverse of J_t from outside the closure of Omega back to outside the closure of Lambda.
std::complex<double> j_t_inverse(const Measure& mu, double t, std::complex<double> lambda);

void require_time(double t);

}  // namespace brownsig
