#include "brownsig/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "brownsig/error.hpp"

namespace brownsig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double antiderivative(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k] / double(k + 1);
  return acc * x;
}

double eval_derivative(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + double(k) * c[k];
  return acc;
}

double poly_scale(const std::vector<double>& c, double x) {
  const double r = std::max(1.0, std::abs(x));
  double s = 0.0, pw = 1.0;
  for (double ck : c) {
    s += std::abs(ck) * pw;
    pw *= r;
  }
  return s;
}

// p(x) = (x - r) q(x) + rem; returns q.
std::vector<double> deflate(const std::vector<double>& c, double r) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> q(c.size() - 1);
  double carry = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    carry = c[k] + carry * r;
    q[k - 1] = carry;
  }
  return q;
}

double semicircle_radius(const Measure& mu) { return 2.0 * std::sqrt(mu.variance()); }

// Integrate the K-vector f(x) against mu. `focus`/`width` describe where f peaks.
template <std::size_t K, class F>
quad::Vec<K> integrate_mu(const Measure& mu, F&& f, double focus, double width) {
  quad::Vec<K> acc{};
  switch (mu.kind()) {
    case Measure::Kind::atomic:
      for (const Atom& at : mu.atoms()) {
        const auto y = f(at.x);
        for (std::size_t k = 0; k < K; ++k) acc[k] += at.w * y[k];
      }
      break;
    case Measure::Kind::piecewise_poly:
      for (const PolyPiece& pc : mu.pieces()) {
        const auto breaks = quad::presplit(pc.lo, pc.hi, focus, width);
        auto g = [&](double x) {
          auto y = f(x);
          const double d = eval_poly(pc.coeffs, x);
          for (auto& yk : y) yk *= d;
          return y;
        };
        const auto part = quad::integrate<K>(g, std::span<const double>(breaks), mu.tolerance());
        for (std::size_t k = 0; k < K; ++k) acc[k] += part[k];
      }
      break;
    case Measure::Kind::semicircle: {
      // x = -R cos(theta), dmu = (2/pi) sin^2(theta) dtheta
      const double R = semicircle_radius(mu);
      const auto xb = quad::presplit(-R, R, focus, width);
      std::vector<double> tb;
      tb.reserve(xb.size());
      for (double x : xb) tb.push_back(std::acos(std::clamp(-x / R, -1.0, 1.0)));
      std::sort(tb.begin(), tb.end());
      auto g = [&](double th) {
        auto y = f(-R * std::cos(th));
        const double s = std::sin(th);
        const double wgt = 2.0 / std::numbers::pi * s * s;
        for (auto& yk : y) yk *= wgt;
        return y;
      };
      acc = quad::integrate<K>(g, std::span<const double>(tb), mu.tolerance());
      break;
    }
  }
  return acc;
}

void require_v(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) fail(Errc::InvalidInput, "v must be a finite nonnegative number");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

double eval_poly(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

double Measure::atom_tol(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

bool Measure::on_support(double x) const {
  switch (kind_) {
    case Kind::atomic:
      for (const Atom& a : atoms_)
        if (std::abs(x - a.x) <= atom_tol(a.x)) return true;
      return false;
    case Kind::piecewise_poly:
      for (const PolyPiece& p : pieces_)
        if (p.lo <= x && x <= p.hi) return true;
      return false;
    case Kind::semicircle:
      return std::abs(x) <= 2.0 * std::sqrt(variance_);
  }
  return false;
}

std::string Measure::label() const {
  struct V {
    std::string operator()(const AtomicSpec& s) const { return "atomic(" + std::to_string(s.atoms.size()) + " atoms)"; }
    std::string operator()(const PiecewisePolySpec& s) const {
      return "piecewise_poly(" + std::to_string(s.pieces.size()) + " pieces)";
    }
    std::string operator()(const SemicircleSpec& s) const { return "semicircle(variance=" + fmt(s.variance) + ")"; }
    std::string operator()(const UniformSpec& s) const { return "uniform(" + fmt(s.lo) + "," + fmt(s.hi) + ")"; }
    std::string operator()(const BernoulliSpec& s) const { return "bernoulli(alpha=" + fmt(s.alpha) + ")"; }
  };
  return std::visit(V{}, source_);
}

namespace {

void finish_atomic(std::vector<Atom>& atoms, double& rescale, std::vector<Atom>& dst) {
  if (atoms.empty()) fail(Errc::EmptyMeasure, "no atoms");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.w)) fail(Errc::InvalidInput, "non-finite atom");
    if (a.w < 0.0) fail(Errc::NegativeMass, "negative atom weight at x=" + fmt(a.x));
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && a.x - merged.back().x <= Measure::atom_tol(a.x))
      merged.back().w += a.w;
    else
      merged.push_back(a);
  }
  std::erase_if(merged, [](const Atom& a) { return a.w == 0.0; });
  double total = 0.0;
  for (const Atom& a : merged) total += a.w;
  if (!(total > 0.0)) fail(Errc::EmptyMeasure, "total mass is zero");
  if (merged.size() < 2) fail(Errc::DiracMeasure, "measure is a single point mass");
  for (Atom& a : merged) a.w /= total;
  rescale = total;
  dst = std::move(merged);
}

}  // namespace

Measure validate(const MeasureSpec& spec, const quad::Tolerance& tol) {
  Measure m;
  m.source_ = spec;
  m.tol_ = tol;

  auto atomic = [&](std::vector<Atom> atoms) {
    m.kind_ = Measure::Kind::atomic;
    finish_atomic(atoms, m.rescale_, m.atoms_);
    m.support_ = {m.atoms_.front().x, m.atoms_.back().x};
  };
  auto pieces = [&](std::vector<PolyPiece> ps) {
    m.kind_ = Measure::Kind::piecewise_poly;
    if (ps.empty()) fail(Errc::EmptyMeasure, "no density pieces");
    double total = 0.0;
    std::vector<PolyPiece> kept;
    for (PolyPiece& p : ps) {
      if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !(p.lo < p.hi))
        fail(Errc::InvalidInput, "density piece needs finite lo < hi");
      if (p.coeffs.empty()) fail(Errc::InvalidInput, "density piece has no coefficients");
      for (double c : p.coeffs)
        if (!std::isfinite(c)) fail(Errc::InvalidInput, "non-finite coefficient");
      const double scale = poly_scale(p.coeffs, std::max(std::abs(p.lo), std::abs(p.hi)));
      constexpr int kSamples = 512;
      for (int i = 0; i <= kSamples; ++i) {
        const double x = p.lo + (p.hi - p.lo) * i / kSamples;
        if (eval_poly(p.coeffs, x) < -1e-12 * scale)
          fail(Errc::NegativeMass, "density negative at x=" + fmt(x));
      }
      const double mass = antiderivative(p.coeffs, p.hi) - antiderivative(p.coeffs, p.lo);
      if (mass < 0.0) fail(Errc::NegativeMass, "piece has negative mass");
      total += mass;
      if (mass > 0.0) kept.push_back(p);
    }
    if (!(total > 0.0) || kept.empty()) fail(Errc::EmptyMeasure, "total mass is zero");
    std::sort(kept.begin(), kept.end(), [](const PolyPiece& l, const PolyPiece& r) { return l.lo < r.lo; });
    for (std::size_t i = 1; i < kept.size(); ++i)
      if (kept[i].lo < kept[i - 1].hi) fail(Errc::InvalidInput, "density pieces overlap");
    for (PolyPiece& p : kept)
      for (double& c : p.coeffs) c /= total;
    m.rescale_ = total;
    m.support_ = {kept.front().lo, kept.back().hi};
    m.pieces_ = std::move(kept);
  };

  struct V {
    decltype(atomic)& at;
    decltype(pieces)& pc;
    Measure& m;
    void operator()(const AtomicSpec& s) { at(s.atoms); }
    void operator()(const PiecewisePolySpec& s) { pc(s.pieces); }
    void operator()(const UniformSpec& s) {
      if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi))
        fail(Errc::InvalidInput, "uniform needs finite lo < hi");
      pc({PolyPiece{s.lo, s.hi, {1.0 / (s.hi - s.lo)}}});
    }
    void operator()(const SemicircleSpec& s) {
      if (!std::isfinite(s.variance) || !(s.variance > 0.0))
        fail(Errc::InvalidInput, "semicircle variance must be positive");
      m.kind_ = Measure::Kind::semicircle;
      m.variance_ = s.variance;
      const double R = 2.0 * std::sqrt(s.variance);
      m.support_ = {-R, R};
    }
    void operator()(const BernoulliSpec& s) {
      if (!std::isfinite(s.alpha)) fail(Errc::InvalidInput, "alpha must be finite");
      if (s.alpha < 0.0 || s.alpha > 1.0) fail(Errc::NegativeMass, "alpha outside [0,1]");
      at({Atom{-1.0, 1.0 - s.alpha}, Atom{1.0, s.alpha}});
    }
  };
  std::visit(V{atomic, pieces, m}, spec);
  return m;
}

KernelMoments kernel_moments(const Measure& mu, double a0, double v) {
  require_v(v);
  const double v2 = v * v;
  auto f = [a0, v2](double x) {
    const double d = a0 - x;
    const double D = d * d + v2;
    const double iD = 1.0 / D;
    const double iD2 = iD * iD;
    return quad::Vec<5>{iD, x * iD, iD2, d * iD2, d * d * iD2};
  };
  const auto r = integrate_mu<5>(mu, f, a0, v);
  return {r[0], r[1], r[2], r[3], r[4]};
}

RealAxisMoments real_axis_moments(const Measure& mu, double a0) {
  auto regular = [a0](double x) {
    const double d = a0 - x;
    const double iD = 1.0 / (d * d);
    return quad::Vec<2>{iD, x * iD};
  };
  switch (mu.kind()) {
    case Measure::Kind::atomic: {
      if (mu.on_support(a0)) return {kInf, std::numeric_limits<double>::quiet_NaN()};
      const auto r = integrate_mu<2>(mu, regular, a0, 0.0);
      return {r[0], r[1]};
    }
    case Measure::Kind::semicircle: {
      if (mu.on_support(a0)) return {kInf, std::numeric_limits<double>::quiet_NaN()};
      const double R = semicircle_radius(mu);
      const auto r = integrate_mu<2>(mu, regular, a0, std::abs(a0) - R);
      return {r[0], r[1]};
    }
    case Measure::Kind::piecewise_poly: {
      RealAxisMoments acc{0.0, 0.0};
      for (const PolyPiece& pc : mu.pieces()) {
        if (pc.lo <= a0 && a0 <= pc.hi) {
          const double s = 1e-12 * poly_scale(pc.coeffs, a0);
          if (std::abs(eval_poly(pc.coeffs, a0)) > s) return {kInf, std::numeric_limits<double>::quiet_NaN()};
          if (std::abs(eval_derivative(pc.coeffs, a0)) * (pc.hi - pc.lo) > s)
            return {kInf, std::numeric_limits<double>::quiet_NaN()};
          // density vanishes to second order at a0: divide the double root out
          const auto q = deflate(deflate(pc.coeffs, a0), a0);
          auto g = [&](double x) {
            const double d = eval_poly(q, x);
            return quad::Vec<2>{d, x * d};
          };
          const auto r = quad::integrate<2>(g, pc.lo, pc.hi, mu.tolerance());
          acc.p0 += r[0];
          acc.p1 += r[1];
        } else {
          const auto breaks = quad::presplit(pc.lo, pc.hi, a0, 0.0);
          auto g = [&](double x) {
            auto y = regular(x);
            const double d = eval_poly(pc.coeffs, x);
            y[0] *= d;
            y[1] *= d;
            return y;
          };
          const auto r = quad::integrate<2>(g, std::span<const double>(breaks), mu.tolerance());
          acc.p0 += r[0];
          acc.p1 += r[1];
        }
      }
      return acc;
    }
  }
  return {kInf, 0.0};
}

double p0(const Measure& mu, double a0, double v) {
  require_v(v);
  if (v == 0.0) return real_axis_moments(mu, a0).p0;
  const double v2 = v * v;
  auto f = [a0, v2](double x) {
    const double d = a0 - x;
    return quad::Vec<1>{1.0 / (d * d + v2)};
  };
  return integrate_mu<1>(mu, f, a0, v)[0];
}

double p1(const Measure& mu, double a0, double v) {
  require_v(v);
  if (v == 0.0) {
    const auto r = real_axis_moments(mu, a0);
    if (std::isinf(r.p0)) fail(Errc::OnSupport, "p1 diverges at v=0 for a0=" + fmt(a0));
    return r.p1;
  }
  const double v2 = v * v;
  auto f = [a0, v2](double x) {
    const double d = a0 - x;
    return quad::Vec<1>{x / (d * d + v2)};
  };
  return integrate_mu<1>(mu, f, a0, v)[0];
}

QIntegrals q_integrals(const Measure& mu, double a0, double v) {
  if (!(v > 0.0)) fail(Errc::InvalidInput, "q-integrals need v > 0");
  const double v2 = v * v;
  auto f = [a0, v2](double x) {
    const double d = a0 - x;
    const double iD = 1.0 / (d * d + v2);
    const double iD2 = iD * iD;
    return quad::Vec<3>{iD2, d * iD2, d * d * iD2};
  };
  const auto r = integrate_mu<3>(mu, f, a0, v);
  return {r[0], r[1], r[2]};
}

std::complex<double> cauchy(const Measure& mu, std::complex<double> z) {
  const double a = z.real(), b = z.imag();
  if (!std::isfinite(a) || !std::isfinite(b)) fail(Errc::InvalidInput, "non-finite z");
  if (b == 0.0 && mu.on_support(a)) fail(Errc::OnSupport, "z=" + fmt(a) + " lies on the support");
  if (mu.kind() == Measure::Kind::atomic) {
    std::complex<double> g{0.0, 0.0};
    for (const Atom& at : mu.atoms()) g += at.w / (z - at.x);
    return g;
  }
  auto f = [a, b](double x) {
    const double d = a - x;
    const double D = d * d + b * b;
    return quad::Vec<2>{d / D, -b / D};
  };
  const auto r = integrate_mu<2>(mu, f, a, std::abs(b));
  return {r[0], r[1]};
}

std::complex<double> cauchy_prime(const Measure& mu, std::complex<double> z) {
  const double a = z.real(), b = z.imag();
  if (!std::isfinite(a) || !std::isfinite(b)) fail(Errc::InvalidInput, "non-finite z");
  if (b == 0.0 && mu.on_support(a)) fail(Errc::OnSupport, "z=" + fmt(a) + " lies on the support");
  if (mu.kind() == Measure::Kind::atomic) {
    std::complex<double> g{0.0, 0.0};
    for (const Atom& at : mu.atoms()) {
      const auto d = z - at.x;
      g -= at.w / (d * d);
    }
    return g;
  }
  auto f = [a, b](double x) {
    const double d = a - x;
    const double D = d * d + b * b;
    const double iD2 = 1.0 / (D * D);
    return quad::Vec<2>{-(d * d - b * b) * iD2, 2.0 * b * d * iD2};
  };
  const auto r = integrate_mu<2>(mu, f, a, std::abs(b));
  return {r[0], r[1]};
}

double log_potential(const Measure& mu, double a0, double v2) {
  if (!(v2 >= 0.0) || !std::isfinite(v2) || !std::isfinite(a0))
    fail(Errc::InvalidInput, "log potential needs finite a0 and v2 >= 0");
  if (v2 == 0.0 && mu.kind() == Measure::Kind::atomic && mu.on_support(a0))
    fail(Errc::DivergentLog, "log potential diverges at atom " + fmt(a0));
  auto f = [a0, v2](double x) {
    const double d = a0 - x;
    return quad::Vec<1>{std::log(d * d + v2)};
  };
  return integrate_mu<1>(mu, f, a0, std::sqrt(v2))[0];
}

double cdf(const Measure& mu, double x) {
  switch (mu.kind()) {
    case Measure::Kind::atomic: {
      double c = 0.0;
      for (const Atom& a : mu.atoms())
        if (a.x <= x) c += a.w;
      return std::min(c, 1.0);
    }
    case Measure::Kind::piecewise_poly: {
      double c = 0.0;
      for (const PolyPiece& p : mu.pieces()) {
        if (x <= p.lo) continue;
        const double hi = std::min(x, p.hi);
        c += antiderivative(p.coeffs, hi) - antiderivative(p.coeffs, p.lo);
      }
      return std::clamp(c, 0.0, 1.0);
    }
    case Measure::Kind::semicircle: {
      const double R = semicircle_radius(mu);
      if (x <= -R) return 0.0;
      if (x >= R) return 1.0;
      const double s = mu.variance();
      return std::clamp(0.5 + x * std::sqrt(4.0 * s - x * x) / (4.0 * std::numbers::pi * s) +
                            std::asin(x / R) / std::numbers::pi,
                        0.0, 1.0);
    }
  }
  return 0.0;
}

double quantile(const Measure& mu, double p) {
  if (!(p > 0.0 && p < 1.0)) fail(Errc::InvalidInput, "quantile level must lie in (0,1)");
  if (mu.kind() == Measure::Kind::atomic) {
    double c = 0.0;
    for (const Atom& a : mu.atoms()) {
      c += a.w;
      if (c >= p - 1e-14) return a.x;
    }
    return mu.atoms().back().x;
  }
  double lo = mu.support().m, hi = mu.support().M;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mu, mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace brownsig
