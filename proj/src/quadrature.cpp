#include "brownsig/quadrature.hpp"

#include <numbers>

namespace brownsig::quad {

namespace {

Rule build_rule() {
  Rule r{};
  const int n = kOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.w[i] = w;
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre() {
  static const Rule rule = build_rule();
  return rule;
}

std::vector<double> presplit(double lo, double hi, double focus, double width) {
  std::vector<double> pts{lo, hi};
  const double len = hi - lo;
  if (!(len > 0.0)) return pts;
  const double c = std::clamp(focus, lo, hi);
  double sigma = std::max(width, std::abs(focus - c));
  if (!(sigma > 0.0)) sigma = 1e-12 * len;
  pts.push_back(c);
  for (double d = sigma; d < len; d *= 4.0) {
    if (c - d > lo) pts.push_back(c - d);
    if (c + d < hi) pts.push_back(c + d);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace brownsig::quad
