#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "brownsig/quadrature.hpp"

namespace brownsig {

struct Atom {
  double x;
  double w;
};

// Density piece: sum_k coeffs[k] * x^k on [lo, hi].
struct PolyPiece {
  double lo;
  double hi;
  std::vector<double> coeffs;
};

struct AtomicSpec {
  std::vector<Atom> atoms;
};
struct PiecewisePolySpec {
  std::vector<PolyPiece> pieces;
};
struct SemicircleSpec {
  double variance;
};
struct UniformSpec {
  double lo;
  double hi;
};
// Atoms at +1 (weight alpha) and -1 (weight 1 - alpha).
struct BernoulliSpec {
  double alpha;
};

using MeasureSpec = std::variant<AtomicSpec, PiecewisePolySpec, SemicircleSpec, UniformSpec, BernoulliSpec>;

struct Support {
  double m;
  double M;
};

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return lo < x && x < hi; }
  double length() const { return hi - lo; }
};

struct QIntegrals {
  double q0, q1, q2;
};

// All integrals of mu against the kernel D = (a0 - x)^2 + v^2 that the
// pipeline needs, from one quadrature pass.
struct KernelMoments {
  double p0;  // int 1/D
  double p1;  // int x/D
  double q0;  // int 1/D^2
  double q1;  // int (a0-x)/D^2
  double q2;  // int (a0-x)^2/D^2
};

// A validated, normalized probability measure. Immutable.
class Measure {
 public:
  enum class Kind { atomic, piecewise_poly, semicircle };

  Kind kind() const { return kind_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<PolyPiece>& pieces() const { return pieces_; }
  double variance() const { return variance_; }
  Support support() const { return support_; }
  // Factor the raw input mass was divided by.
  double rescale() const { return rescale_; }
  const MeasureSpec& source() const { return source_; }
  const quad::Tolerance& tolerance() const { return tol_; }
  std::string label() const;

  // True when x is an atom, or lies in a closed density piece / semicircle support.
  bool on_support(double x) const;
  // Atom merge tolerance at x.
  static double atom_tol(double x);

 private:
  friend Measure validate(const MeasureSpec& spec, const quad::Tolerance& tol);
  Kind kind_ = Kind::atomic;
  std::vector<Atom> atoms_;
  std::vector<PolyPiece> pieces_;
  double variance_ = 0.0;
  Support support_{0.0, 0.0};
  double rescale_ = 1.0;
  MeasureSpec source_;
  quad::Tolerance tol_;
};

Measure validate(const MeasureSpec& spec, const quad::Tolerance& tol = {});

// int dmu/((a0-x)^2+v^2). With v = 0 returns +inf when the integral diverges.
double p0(const Measure& mu, double a0, double v);
double p1(const Measure& mu, double a0, double v);
QIntegrals q_integrals(const Measure& mu, double a0, double v);
KernelMoments kernel_moments(const Measure& mu, double a0, double v);

// p0 and p1 at v = 0. p0 is +inf when divergent; p1 is then meaningless.
struct RealAxisMoments {
  double p0;
  double p1;
};
RealAxisMoments real_axis_moments(const Measure& mu, double a0);

std::complex<double> cauchy(const Measure& mu, std::complex<double> z);
std::complex<double> cauchy_prime(const Measure& mu, std::complex<double> z);

// int log((a0-x)^2 + v2) dmu.
double log_potential(const Measure& mu, double a0, double v2);

double cdf(const Measure& mu, double x);
double quantile(const Measure& mu, double p);

double eval_poly(const std::vector<double>& c, double x);

}  // namespace brownsig
