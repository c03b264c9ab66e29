#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "brownsig/brown.hpp"
#include "brownsig/measure.hpp"

namespace brownsig {

struct SimConfig {
  int n = 2000;
  double t = 1.0;
  int reps = 5;
  std::uint64_t seed = 1;
  double dilation = 0.05;
};

struct EigenCloud {
  std::vector<std::complex<double>> points;
  std::vector<int> rep;
  SimConfig config;
};

// GUE normalized so the spectrum tends to the semicircle of variance 1. Each
// row is drawn from its own stream keyed by (seed, stream, row).
Eigen::MatrixXcd sample_gue(int n, std::uint64_t seed, std::uint64_t stream = 0);
// Quantiles of mu at (j - 1/2)/n.
std::vector<double> deterministic_x(const Measure& mu, int n);

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& A);
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& A);

// Spectra of diag(x) + i sqrt(t) Y, one GUE draw per repetition.
EigenCloud simulate(const Measure& mu, const SimConfig& cfg);
// Spectra of the Hermitian control diag(x) + sqrt(t) Y.
std::vector<double> simulate_hermitian(const Measure& mu, const SimConfig& cfg);

struct CompareReport {
  std::size_t count = 0;
  double inside_fraction = 0.0;
  double marginal_sup = 0.0;  // Re lambda against the marginal of 2 b_t w_t
  double pushed_sup = 0.0;    // Q_t of the clamped real parts against the additive law
};

CompareReport compare(const EigenCloud& cloud, const BrownProfile& prof);

// Kolmogorov distance between the empirical law of the samples and a CDF.
double sup_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace brownsig
