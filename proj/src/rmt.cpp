#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "brownsig/error.hpp"
#include "brownsig/maps.hpp"
#include "brownsig/parallel.hpp"
#include "brownsig/rmt.hpp"

namespace brownsig {

Eigen::MatrixXcd sample_gue(int n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 2) fail(Errc::InvalidInput, "matrix size must be at least 2");
  Eigen::MatrixXcd Y(n, n);
  const double sd_diag = 1.0 / std::sqrt(double(n));
  const double sd_off = 1.0 / std::sqrt(2.0 * n);
  for (int i = 0; i < n; ++i) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32), std::uint32_t(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Y(i, i) = sd_diag * normal(rng);
    for (int j = i + 1; j < n; ++j) {
      const double re = sd_off * normal(rng);
      const double im = sd_off * normal(rng);
      Y(i, j) = {re, im};
      Y(j, i) = {re, -im};
    }
  }
  return Y;
}

std::vector<double> deterministic_x(const Measure& mu, int n) {
  if (n < 2) fail(Errc::InvalidInput, "matrix size must be at least 2");
  std::vector<double> x(n);
  for (int j = 1; j <= n; ++j) x[j - 1] = quantile(mu, (j - 0.5) / n);
  return x;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXcd work = A;
  std::vector<std::complex<double>> w(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(), nullptr, 1,
                                        nullptr, 1);
  if (info == 0) return w;
  if (info < 0) fail(Errc::EigenFailure, "zgeev rejected argument " + std::to_string(-info));
  // QR iteration did not converge: retry with an independent implementation
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(A, false);
  if (ces.info() != Eigen::Success) fail(Errc::EigenFailure, "eigenvalue iteration did not converge");
  const auto ev = ces.eigenvalues();
  return {ev.data(), ev.data() + n};
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXcd work = A;
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, w.data());
  if (info == 0) return w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(Errc::EigenFailure, "Hermitian eigenvalue iteration did not converge");
  const auto ev = es.eigenvalues();
  return {ev.data(), ev.data() + n};
}

namespace {

void check_config(const SimConfig& cfg) {
  if (cfg.n < 2) fail(Errc::InvalidInput, "n must be >= 2");
  if (cfg.reps < 1) fail(Errc::InvalidInput, "reps must be >= 1");
  if (!(cfg.t > 0.0) || !std::isfinite(cfg.t)) fail(Errc::InvalidInput, "t must be > 0");
  if (!(cfg.dilation >= 0.0)) fail(Errc::InvalidInput, "dilation must be >= 0");
}

}  // namespace

EigenCloud simulate(const Measure& mu, const SimConfig& cfg) {
  check_config(cfg);
  const std::vector<double> x = deterministic_x(mu, cfg.n);
  std::vector<std::vector<std::complex<double>>> per_rep(cfg.reps);
  parallel_chunks(static_cast<std::size_t>(cfg.reps), [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      Eigen::MatrixXcd A = std::complex<double>(0.0, std::sqrt(cfg.t)) * sample_gue(cfg.n, cfg.seed, r);
      for (int i = 0; i < cfg.n; ++i) A(i, i) += x[i];
      per_rep[r] = eigenvalues(A);
    }
  });
  EigenCloud cloud;
  cloud.config = cfg;
  for (int r = 0; r < cfg.reps; ++r) {
    cloud.points.insert(cloud.points.end(), per_rep[r].begin(), per_rep[r].end());
    cloud.rep.insert(cloud.rep.end(), per_rep[r].size(), r);
  }
  return cloud;
}

std::vector<double> simulate_hermitian(const Measure& mu, const SimConfig& cfg) {
  check_config(cfg);
  const std::vector<double> x = deterministic_x(mu, cfg.n);
  std::vector<std::vector<double>> per_rep(cfg.reps);
  parallel_chunks(static_cast<std::size_t>(cfg.reps), [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      // stream offset keeps the control draws separate from the non-Hermitian ones
      Eigen::MatrixXcd A = std::sqrt(cfg.t) * sample_gue(cfg.n, cfg.seed, (1ull << 32) + r);
      for (int i = 0; i < cfg.n; ++i) A(i, i) += x[i];
      per_rep[r] = hermitian_eigenvalues(A);
    }
  });
  std::vector<double> out;
  for (const auto& v : per_rep) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double sup_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double N = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max({d, std::abs((i + 1) / N - F), std::abs(F - i / N)});
  }
  return d;
}

CompareReport compare(const EigenCloud& cloud, const BrownProfile& prof) {
  if (std::abs(cloud.config.t - prof.t) > 1e-12 * (1.0 + prof.t))
    fail(Errc::InvalidInput, "cloud and profile were computed at different t");
  CompareReport rep;
  rep.count = cloud.points.size();
  if (rep.count == 0) return rep;
  const AdditiveLaw law = law_additive(prof);

  // Q_t on the closure of Omega_t, interpolated on the profile grid with exact endpoints
  auto q_of = [&](double a) {
    const Interval* best = nullptr;
    std::size_t kb = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < prof.omega_intervals.size(); ++k) {
      const Interval& w = prof.omega_intervals[k];
      const double d = a < w.lo ? w.lo - a : (a > w.hi ? a - w.hi : 0.0);
      if (d < dist) {
        dist = d;
        best = &w;
        kb = k;
      }
    }
    const double x = std::clamp(a, best->lo, best->hi);
    const Interval& l = prof.lambda_intervals[kb];
    std::vector<double> xs{best->lo}, us{2.0 * l.lo - best->lo};
    for (std::size_t i = prof.offsets[kb]; i < prof.offsets[kb + 1]; ++i) {
      xs.push_back(prof.a[i]);
      us.push_back(2.0 * prof.a0[i] - prof.a[i]);
    }
    xs.push_back(best->hi);
    us.push_back(2.0 * l.hi - best->hi);
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return us.front();
    if (it == xs.end()) return us.back();
    const std::size_t j = it - xs.begin();
    return us[j - 1] + (us[j] - us[j - 1]) * (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  };

  std::size_t inside = 0;
  std::vector<double> re, pushed;
  re.reserve(rep.count);
  pushed.reserve(rep.count);
  for (const auto& z : cloud.points) {
    if (std::abs(z.imag()) <= prof.halfheight_at(z.real()) + cloud.config.dilation) ++inside;
    re.push_back(z.real());
    pushed.push_back(q_of(z.real()));
  }
  rep.inside_fraction = double(inside) / double(rep.count);
  rep.marginal_sup = sup_distance(re, [&](double a) { return prof.marginal_cdf(a) / prof.mass; });
  rep.pushed_sup = sup_distance(pushed, [&](double u) { return law.cdf_at(u) / prof.mass; });
  return rep;
}

}  // namespace brownsig
