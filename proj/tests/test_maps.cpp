#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "brownsig/error.hpp"
#include "brownsig/maps.hpp"
#include "brownsig/subordination.hpp"
#include "support.hpp"

using namespace brownsig;
using Catch::Matchers::WithinAbs;
using cplx = std::complex<double>;

namespace {

struct Preset {
  const char* name;
  Measure mu;
  double t;
};

std::vector<Preset> presets() {
  return {{"semicircle", testing::semicircle(), 1.0},
          {"bernoulli", testing::bernoulli(), 1.05},
          {"uniform", testing::uniform(), 0.1},
          {"power", testing::cubic_power(), 0.25}};
}

}  // namespace

TEST_CASE("U_t on the elliptic preset") {
  const BrownDomain dom(testing::semicircle(1.0), 1.0);
  CHECK(std::abs(U_t(dom, 1.5) - 1.0) < 1e-12);
  const cplx z(0.4, 0.3);
  CHECK(std::abs(U_t(dom, z) - cplx(2.0 / 3.0 * 0.4, 0.6)) < 1e-12);
  const cplx back = u_t_inverse(dom, {0.8, 0.5});
  CHECK(std::abs(back - cplx(1.5 * 0.8, 0.25)) < 1e-12);
  CHECK_THROWS_AS(U_t(dom, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(u_t_inverse(dom, 2.0), Error);
}

TEST_CASE("U_t agrees with J_t on the boundary and commutes with conjugation") {
  for (const Preset& p : presets()) {
    INFO(p.name);
    const BrownDomain dom(p.mu, p.t);
    for (const Interval& lam : dom.lambda().intervals) {
      for (int k = 1; k < 40; ++k) {
        const double a0 = lam.lo + lam.length() * k / 40.0;
        const cplx z(a0, v_t(p.mu, p.t, a0));
        CHECK(std::abs(U_t(dom, z) - J_t(p.mu, p.t, z)) < 1e-9);
        const cplx w(a0, 0.3 * z.imag());
        CHECK(std::abs(U_t(dom, std::conj(w)) - std::conj(U_t(dom, w))) < 1e-14);
      }
    }
  }
}

TEST_CASE("U_t inverse round trips") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Preset& p : presets()) {
    INFO(p.name);
    const BrownDomain dom(p.mu, p.t);
    for (int i = 0; i < 100; ++i) {
      const Interval& om = dom.omega()[i % dom.omega().size()];
      const double a = om.lo + (0.01 + 0.98 * u(rng)) * om.length();
      const cplx lambda(a, (2.0 * u(rng) - 1.0) * 0.99 * dom.b_t(a));
      const cplx back = U_t(dom, u_t_inverse(dom, lambda));
      CHECK(std::abs(back - lambda) < 1e-10 * (1.0 + std::abs(lambda)));
    }
  }
}

TEST_CASE("Q_t") {
  const BrownDomain dom(testing::semicircle(1.0), 1.0);
  CHECK_THAT(Q_t(dom, {0.5, 0.3}), WithinAbs(1.0, 1e-12));
  const BrownDomain sym(testing::uniform(), 0.1);
  CHECK_THAT(Q_t(sym, {0.0, 0.1}), WithinAbs(0.0, 1e-14));
  CHECK_THROWS_AS(Q_t(sym, 3.0), Error);
  for (const Preset& p : presets()) {
    INFO(p.name);
    const BrownDomain d(p.mu, p.t);
    for (const Interval& om : d.omega()) {
      double prev = -1e300;
      for (int k = 1; k < 60; ++k) {
        const double a = om.lo + om.length() * k / 60.0;
        const double q = Q_t(d, a);
        CHECK(q > prev);
        prev = q;
        const double b = d.b_t(a);
        CHECK(Q_t(d, {a, 0.7 * b}) == q);
        // boundary consistency with H_t at the matching Lambda boundary point
        const double a0 = d.a0_of_a(a);
        CHECK_THAT(q, WithinAbs(H_t(p.mu, p.t, {a0, v_t(p.mu, p.t, a0)}).real(), 1e-8));
      }
    }
  }
}

TEST_CASE("circular density") {
  const BrownDomain dom(testing::semicircle(1.0), 1.0);
  CHECK_THAT(circular_density(dom, 0.2), WithinAbs(2.0 / (3.0 * std::numbers::pi), 1e-12));
  CHECK_THAT(circular_density(dom, {0.2, 0.5}), WithinAbs(2.0 / (3.0 * std::numbers::pi), 1e-12));
  CHECK_THROWS_AS(circular_density(dom, 3.0), Error);
  for (const Preset& p : presets()) {
    INFO(p.name);
    const BrownDomain d(p.mu, p.t);
    double mass = 0.0;
    for (const Interval& lam : d.lambda().intervals) {
      const double c = 0.5 * (lam.lo + lam.hi), h = 0.5 * lam.length();
      mass += quad::integrate_scalar(
          [&](double th) {
            const double a0 = c - h * std::cos(th);
            return 2.0 * v_t(p.mu, p.t, a0) * circular_density(d, a0) * h * std::sin(th);
          },
          1e-9, std::numbers::pi - 1e-9);
    }
    CHECK_THAT(mass, WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("additive law") {
  const double s = 1.0, t = 1.0;
  const BrownDomain dom(testing::semicircle(s), t);
  const BrownProfile prof = dom.profile(1024);
  const AdditiveLaw law = law_additive(prof);
  const Measure target = testing::semicircle(s + t);
  double worst = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double x = -3.0 + 6.0 * k / 400.0;
    worst = std::max(worst, std::abs(law.cdf_at(x) - cdf(target, x)));
  }
  CHECK(worst < 1e-4);
  for (std::size_t i = 0; i < law.u.size(); ++i)
    CHECK_THAT(law.f[i], WithinAbs(testing::semicircle_density(s + t, law.u[i]), 1e-9));

  for (const Preset& p : presets()) {
    INFO(p.name);
    const BrownDomain d(p.mu, p.t);
    const BrownProfile pr = d.profile(512);
    const AdditiveLaw l = law_additive(pr);
    CHECK_THAT(l.cdf.back(), WithinAbs(1.0, 1e-6));
    for (std::size_t i = 1; i < l.u.size(); ++i) CHECK(l.u[i] >= l.u[i - 1]);
    // f = 2 b w / (dQ/da) with dQ/da = 4 pi t w
    for (std::size_t i = 0; i < pr.size(); i += 37) {
      const double h = 1e-6;
      const double dq = (Q_t(d, pr.a[i] + h) - Q_t(d, pr.a[i] - h)) / (2.0 * h);
      if (pr.near_boundary[i]) continue;
      CHECK_THAT(dq, WithinAbs(4.0 * std::numbers::pi * p.t * pr.density[i], 1e-5 * (1.0 + dq)));
    }
  }
  const BrownDomain u(testing::uniform(), 0.1);
  const AdditiveLaw lu = law_additive(u.profile(256));
  for (std::size_t i = 0; i < lu.u.size(); ++i) {
    CHECK_THAT(lu.u[i], WithinAbs(-lu.u[lu.u.size() - 1 - i], 1e-10));
    CHECK_THAT(lu.f[i], WithinAbs(lu.f[lu.u.size() - 1 - i], 1e-10));
  }
}

TEST_CASE("rectangle push-forward check") {
  const PushforwardReport ell = pushforward_check(BrownDomain(testing::semicircle(1.0), 1.0));
  CHECK(ell.max_discrepancy < 1e-6);
  CHECK_THAT(ell.circular_side[0], WithinAbs(1.0, 1e-9));
  CHECK_THAT(ell.brown_side[0], WithinAbs(1.0, 1e-9));
  const PushforwardReport ber = pushforward_check(BrownDomain(testing::bernoulli(), 1.05));
  CHECK(ber.max_discrepancy < 1e-5);
  CHECK(ber.rectangles.size() == 13);
  const PushforwardReport two = pushforward_check(BrownDomain(testing::bernoulli(0.5), 0.1), 6, 3);
  CHECK(two.max_discrepancy < 1e-5);
  CHECK_THAT(two.circular_side[0] + two.circular_side[1], WithinAbs(1.0, 1e-8));
}
