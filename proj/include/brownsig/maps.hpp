#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "brownsig/brown.hpp"

namespace brownsig {

// Lambda_t -> Omega_t: a0 + i b0 -> a_t(a0) + 2 i b0.
std::complex<double> U_t(const BrownDomain& dom, std::complex<double> lambda0);
std::complex<double> u_t_inverse(const BrownDomain& dom, std::complex<double> lambda);
// Omega_t -> R: 2 a0_of_a(a) - a; ignores Im lambda after the inside check.
double Q_t(const BrownDomain& dom, std::complex<double> lambda);
// Brown density of x0 + circular Brownian motion at a point of Lambda_t.
double circular_density(const BrownDomain& dom, std::complex<double> lambda0);

// Law of x0 + semicircular Brownian motion as the Q_t-image of a profile.
// Parametric samples (u, f) with the interval endpoints included (f = 0 there).
struct AdditiveLaw {
  std::vector<double> u;
  std::vector<double> f;
  std::vector<double> cdf;
  double cdf_at(double x) const;
};
AdditiveLaw law_additive(const BrownProfile& prof);

struct Rectangle {
  double a1, a2, b1, b2;
};

struct PushforwardReport {
  std::vector<Rectangle> rectangles;
  std::vector<double> circular_side;  // mass of the circular density on the U_t-preimage
  std::vector<double> brown_side;     // mass of w_t on the rectangle
  double max_discrepancy = 0.0;
};

// The first rectangle per Omega interval is its bounding box, the rest are pseudo-random.
PushforwardReport pushforward_check(const BrownDomain& dom, int n_random = 12, std::uint64_t seed = 7);

}  // namespace brownsig
