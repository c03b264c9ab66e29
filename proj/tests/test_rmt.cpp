#include <catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>

#include "brownsig/brown.hpp"
#include "brownsig/error.hpp"
#include "brownsig/maps.hpp"
#include "brownsig/rmt.hpp"
#include "support.hpp"

using namespace brownsig;
using Catch::Matchers::WithinAbs;
using cplx = std::complex<double>;

TEST_CASE("GUE entries") {
  const Eigen::MatrixXcd Y = sample_gue(50, 3);
  CHECK((Y - Y.adjoint()).norm() == 0.0);
  CHECK(sample_gue(50, 3) == Y);
  CHECK(sample_gue(50, 3, 1) != Y);

  // sample statistics over 10^4 draws of 2x2 matrices
  const int n = 2, draws = 10000;
  double sum_d = 0, sum_d2 = 0, sum_o2 = 0, sum_tr = 0, sum_tr2 = 0, sum_re_im = 0;
  for (int k = 0; k < draws; ++k) {
    const Eigen::MatrixXcd G = sample_gue(n, 11, k);
    const double d = G(0, 0).real();
    sum_d += d;
    sum_d2 += d * d;
    sum_o2 += std::norm(G(0, 1));
    sum_re_im += G(0, 1).real() * G(0, 1).imag();
    const double tr = G.trace().real();
    sum_tr += tr;
    sum_tr2 += tr * tr;
  }
  const double N = draws;
  // Var(diag) = 1/n, E|off|^2 = 1/n, Var(trace) = 1; 3 sigma bands from the chi-square spread
  CHECK(std::abs(sum_d / N) < 3.0 * std::sqrt(0.5 / N));
  CHECK(std::abs(sum_d2 / N - 0.5) < 3.0 * 0.5 * std::sqrt(2.0 / N));
  CHECK(std::abs(sum_o2 / N - 0.5) < 3.0 * 0.5 * std::sqrt(1.0 / N));
  CHECK(std::abs(sum_tr / N) < 3.0 * std::sqrt(1.0 / N));
  CHECK(std::abs(sum_tr2 / N - 1.0) < 3.0 * std::sqrt(2.0 / N));
  CHECK(std::abs(sum_re_im / N) < 3.0 * 0.25 / std::sqrt(N));

  const auto w = hermitian_eigenvalues(sample_gue(2, 5));
  REQUIRE(w.size() == 2);
  CHECK(w[0] <= w[1]);
}

TEST_CASE("deterministic diagonal") {
  const auto b = deterministic_x(testing::bernoulli(2.0 / 3.0), 3);
  CHECK(b == std::vector<double>{-1.0, 1.0, 1.0});
  const auto u = deterministic_x(testing::uniform(), 4);
  const double want[] = {-0.75, -0.25, 0.25, 0.75};
  for (int i = 0; i < 4; ++i) CHECK_THAT(u[i], WithinAbs(want[i], 1e-12));
  for (int n : {10, 100, 1000}) {
    const Measure mu = testing::cubic_power();
    const auto x = deterministic_x(mu, n);
    CHECK(sup_distance(x, [&](double y) { return cdf(mu, y); }) <= 1.0 / n + 1e-12);
  }
  CHECK_THROWS_AS(deterministic_x(testing::uniform(), 1), Error);
}

TEST_CASE("eigenvalues of a 2x2 matrix") {
  const double t = 0.7;
  const auto x = deterministic_x(testing::bernoulli(0.5), 2);
  REQUIRE(x == std::vector<double>{-1.0, 1.0});
  Eigen::MatrixXcd A = cplx(0.0, std::sqrt(t)) * sample_gue(2, 9);
  A(0, 0) += x[0];
  A(1, 1) += x[1];
  const cplx half_tr = 0.5 * (A(0, 0) + A(1, 1));
  const cplx det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  const cplx r = std::sqrt(half_tr * half_tr - det);
  auto got = eigenvalues(A);
  auto by_re = [](cplx p, cplx q) { return p.real() < q.real(); };
  std::sort(got.begin(), got.end(), by_re);
  std::vector<cplx> want{half_tr - r, half_tr + r};
  std::sort(want.begin(), want.end(), by_re);
  CHECK(std::abs(got[0] - want[0]) < 1e-13);
  CHECK(std::abs(got[1] - want[1]) < 1e-13);
}

TEST_CASE("transpose has the same spectrum") {
  Eigen::MatrixXcd A = cplx(0.0, 0.8) * sample_gue(40, 2);
  for (int i = 0; i < 40; ++i) A(i, i) += 0.05 * i;
  auto p = eigenvalues(A), q = eigenvalues(A.transpose());
  auto order = [](cplx u, cplx v) { return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag(); };
  std::sort(p.begin(), p.end(), order);
  std::sort(q.begin(), q.end(), order);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - q[i]) < 1e-10);
}

TEST_CASE("simulation is reproducible and the report is well formed") {
  const Measure mu = testing::semicircle();
  SimConfig cfg;
  cfg.n = 60;
  cfg.reps = 3;
  cfg.seed = 4;
  const EigenCloud a = simulate(mu, cfg), b = simulate(mu, cfg);
  CHECK(a.points == b.points);
  CHECK(a.rep == b.rep);
  CHECK(a.points.size() == 180);
  const BrownProfile prof = BrownDomain(mu, cfg.t).profile(128);
  const CompareReport r = compare(a, prof);
  CHECK(r.count == 180);
  CHECK(r.inside_fraction >= 0.0);
  CHECK(r.inside_fraction <= 1.0);
  CHECK(r.marginal_sup <= 1.0);
  cfg.t = 2.0;
  CHECK_THROWS_AS(compare(simulate(mu, cfg), prof), Error);
}

TEST_CASE("Hermitian control against the additive law") {
  const Measure mu = testing::bernoulli();
  SimConfig cfg;
  cfg.n = 2000;
  cfg.reps = 1;
  cfg.t = 1.05;
  const auto ev = simulate_hermitian(mu, cfg);
  const AdditiveLaw law = law_additive(BrownDomain(mu, cfg.t).profile(1024));
  CHECK(sup_distance(ev, [&](double u) { return law.cdf_at(u); }) < 2e-3);
}
