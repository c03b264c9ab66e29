#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "brownsig/measure.hpp"
#include "brownsig/subordination.hpp"

namespace brownsig {

struct RegionVerdict {
  enum class Tag { inside, outside, boundary };
  Tag tag;
  double margin;  // |Im lambda| - b_t(Re lambda)
};

// Brown density sampled on Chebyshev grids over each interval of Omega_t on the real line.
// Points of interval k occupy indices [offsets[k], offsets[k+1]).
struct BrownProfile {
  double t = 0.0;
  std::vector<double> a;
  std::vector<double> a0;
  std::vector<double> halfheight;  // b_t(a)
  std::vector<double> density;     // w_t(a)
  std::vector<double> cdf;         // marginal mass of 2 b_t w_t on (-inf, a]
  std::vector<char> near_boundary;
  std::vector<Interval> omega_intervals;
  std::vector<Interval> lambda_intervals;
  std::vector<std::size_t> offsets;
  std::vector<double> interval_mass;
  double mass = 0.0;

  std::size_t size() const { return a.size(); }
  // Piecewise-linear in the grid, exact at interval endpoints.
  double marginal_cdf(double x) const;
  double halfheight_at(double x) const;
  // Inverse of marginal_cdf.
  double marginal_quantile(double p) const;
};

struct DomainOptions {
  RegionOptions region{};
  unsigned threads = 0;
};

// Omega_t for a fixed measure and time; precomputes the Lambda/Omega interval correspondence.
class BrownDomain {
 public:
  BrownDomain(Measure mu, double t, const DomainOptions& opts = {});

  const Measure& measure() const { return mu_; }
  double t() const { return t_; }
  const LambdaRegion& lambda() const { return lambda_; }
  const std::vector<Interval>& omega() const { return omega_; }

  // Interval of Omega_t on the real line containing a (open, or closed when asked).
  std::optional<std::size_t> omega_index(double a, bool closed = false) const;
  double a0_of_a(double a, std::optional<double> guess = std::nullopt) const;
  double b_t(double a) const;
  double w_t(double a) const;
  RegionVerdict classify(std::complex<double> lambda, double tol = -1.0) const;
  double s_outside(std::complex<double> lambda) const;
  BrownProfile profile(int n_grid) const;

  // Total mass of the Brown measure by adaptive quadrature.
  double mass() const;
  // max over a of b_t(a).
  double max_height() const;

 private:
  Measure mu_;
  double t_;
  DomainOptions opts_;
  LambdaRegion lambda_;
  std::vector<Interval> omega_;
};

// Density of the marginal 2 v rho in the angle variable a0 = c - h cos(theta) of a Lambda interval.
double lambda_mass_integrand(const Measure& mu, double t, const Interval& lam, double theta);

// Draw n points from the Brown measure: a from the marginal, b uniform on the vertical segment.
std::vector<std::complex<double>> sample_brown(const BrownProfile& prof, std::size_t n, std::uint64_t seed);

}  // namespace brownsig
