#pragma once

// Adaptive Gauss-Legendre for small vectors of integrands that share one
// set of evaluation points. A segment is accepted when the two-halves
// estimate agrees with the whole-segment estimate for every component.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace brownsig::quad {

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  int max_depth = 50;
};

inline constexpr int kOrder = 16;

struct Rule {
  std::array<double, kOrder> x;
  std::array<double, kOrder> w;
};

// Nodes and weights on [-1, 1].
const Rule& gauss_legendre();

template <std::size_t K>
using Vec = std::array<double, K>;

namespace detail {

template <std::size_t K>
struct Estimate {
  Vec<K> value{};
  Vec<K> l1{};
};

template <std::size_t K, class F>
Estimate<K> apply_rule(F& f, double lo, double hi) {
  const Rule& r = gauss_legendre();
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  Estimate<K> e;
  for (int i = 0; i < kOrder; ++i) {
    const Vec<K> y = f(mid + half * r.x[i]);
    for (std::size_t k = 0; k < K; ++k) {
      e.value[k] += r.w[i] * y[k];
      e.l1[k] += r.w[i] * std::abs(y[k]);
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    e.value[k] *= half;
    e.l1[k] *= std::abs(half);
  }
  return e;
}

template <std::size_t K, class F>
void refine(F& f, double lo, double hi, const Estimate<K>& whole, const Tolerance& tol, int depth,
            Vec<K>& acc) {
  const double mid = 0.5 * (lo + hi);
  const Estimate<K> left = apply_rule<K>(f, lo, mid);
  const Estimate<K> right = apply_rule<K>(f, mid, hi);
  bool ok = true;
  for (std::size_t k = 0; k < K && ok; ++k) {
    const double sum = left.value[k] + right.value[k];
    const double allowed = std::max(tol.abs, tol.rel * (left.l1[k] + right.l1[k]));
    if (!(std::abs(sum - whole.value[k]) <= allowed)) ok = false;
  }
  if (ok || depth >= tol.max_depth || !(lo < mid && mid < hi)) {
    for (std::size_t k = 0; k < K; ++k) acc[k] += left.value[k] + right.value[k];
    return;
  }
  refine<K>(f, lo, mid, left, tol, depth + 1, acc);
  refine<K>(f, mid, hi, right, tol, depth + 1, acc);
}

}  // namespace detail

// Integrate f over consecutive segments [breaks[i], breaks[i+1]].
template <std::size_t K, class F>
Vec<K> integrate(F&& f, std::span<const double> breaks, const Tolerance& tol = {}) {
  Vec<K> acc{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    if (!(hi > lo)) continue;
    const auto whole = detail::apply_rule<K>(f, lo, hi);
    detail::refine<K>(f, lo, hi, whole, tol, 0, acc);
  }
  return acc;
}

template <std::size_t K, class F>
Vec<K> integrate(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  const std::array<double, 2> b{lo, hi};
  return integrate<K>(f, std::span<const double>(b), tol);
}

template <class F>
double integrate_scalar(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  auto g = [&](double x) { return Vec<1>{f(x)}; };
  return integrate<1>(g, lo, hi, tol)[0];
}

// Break points that resolve a peak of width `width` at `focus` inside [lo, hi]:
// the clamped focus plus geometrically growing offsets on both sides.
std::vector<double> presplit(double lo, double hi, double focus, double width);

}  // namespace brownsig::quad
