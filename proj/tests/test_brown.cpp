#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "brownsig/brown.hpp"
#include "brownsig/error.hpp"
#include "support.hpp"

using namespace brownsig;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cplx = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("elliptic domain") {
  const BrownDomain dom(testing::semicircle(1.0), 1.0);
  REQUIRE(dom.omega().size() == 1);
  CHECK_THAT(dom.omega()[0].hi, WithinAbs(std::sqrt(2.0), 1e-10));
  CHECK_THAT(dom.a0_of_a(1.0), WithinAbs(1.5, 1e-12));
  CHECK_THAT(dom.b_t(0.0), WithinAbs(std::sqrt(2.0), 1e-12));
  for (double a : {-1.3, -0.5, 0.0, 0.7, 1.35}) {
    CHECK_THAT(dom.w_t(a), WithinAbs(1.0 / (2.0 * kPi), 1e-10));
    // ellipse with semi-axes sqrt(2) and sqrt(2): a circle here
    CHECK_THAT(dom.b_t(a), WithinAbs(std::sqrt(2.0 - a * a), 1e-10));
  }
  CHECK_THAT(dom.max_height(), WithinAbs(std::sqrt(2.0), 1e-9));
  CHECK(dom.b_t(3.0) == 0.0);
  CHECK_THROWS_AS(dom.w_t(3.0), Error);
}

TEST_CASE("ellipse for unequal s and t") {
  const double s = 2.0, t = 0.5;
  const BrownDomain dom(testing::semicircle(s), t);
  const double ax = 2.0 * s / std::sqrt(s + t), ay = 2.0 * t / std::sqrt(s + t);
  CHECK_THAT(dom.omega()[0].hi, WithinAbs(ax, 1e-10));
  for (double a : {-1.5, 0.0, 0.9}) {
    CHECK_THAT(dom.a0_of_a(a), WithinAbs((2.0 * s + t) / (2.0 * s) * a, 1e-11));
    CHECK_THAT(dom.b_t(a), WithinAbs(ay * std::sqrt(1.0 - a * a / (ax * ax)), 1e-10));
    CHECK_THAT(dom.w_t(a), WithinAbs((1.0 / s + 1.0 / t) / (4.0 * kPi), 1e-10));
  }
}

TEST_CASE("bernoulli domain") {
  const double alpha = 2.0 / 3.0, t = 1.05;
  const BrownDomain dom(testing::bernoulli(alpha), t);
  CHECK_THAT(dom.a0_of_a(0.0), WithinAbs(-0.175, 1e-12));
  CHECK_THAT(dom.w_t(0.0), WithinAbs((-1.0 / t + 1.0) / (4.0 * kPi), 1e-10));
  CHECK_THAT(dom.w_t(0.0), WithinAbs(0.0037894034068977, 1e-12));
  for (double a : {-0.7, -0.3, 0.2, 0.8}) {
    const double Q = testing::bernoulli_quartic(alpha, t, a);
    REQUIRE(Q > 0.0);
    CHECK_THAT(dom.b_t(a), WithinAbs(std::sqrt(Q) / (1.0 - a * a), 1e-10));
    CHECK_THAT(dom.w_t(a), WithinAbs(testing::bernoulli_density(alpha, t, a), 1e-9));
  }
  CHECK(dom.b_t(2.0) == 0.0);
}

TEST_CASE("uniform domain") {
  const double t = 0.1;
  const BrownDomain dom(testing::uniform(), t);
  REQUIRE(dom.omega().size() == 1);
  CHECK_THAT(dom.omega()[0].hi, WithinAbs(testing::uniform_half_width(t), 1e-10));
  CHECK_THAT(dom.omega()[0].hi, WithinAbs(0.8619537360602055, 1e-10));
  CHECK_THAT(dom.a0_of_a(0.0), WithinAbs(0.0, 1e-14));
  // frozen values of the parametric density curve
  const double v[] = {0.01, 0.05, 0.1, 0.14};
  const double w[] = {2.6156648456, 2.37043309147, 1.67300308168, 1.00996016831};
  for (int k = 0; k < 4; ++k) {
    CHECK_THAT(testing::uniform_W(t, v[k]), WithinAbs(w[k], 1e-9));
    const double a = testing::uniform_A(t, v[k]);
    CHECK_THAT(dom.b_t(a), WithinAbs(2.0 * v[k], 1e-9));
    CHECK_THAT(dom.w_t(a), WithinAbs(w[k], 1e-8));
  }
}

TEST_CASE("profile invariants") {
  struct Case {
    Measure mu;
    double t;
  };
  for (const Case& c : {Case{testing::semicircle(), 1.0}, Case{testing::bernoulli(), 1.05}, Case{testing::uniform(), 0.1},
                        Case{testing::cubic_power(), 0.25}, Case{testing::bernoulli(0.5), 0.1}}) {
    const BrownDomain dom(c.mu, c.t);
    const BrownProfile prof = dom.profile(256);
    CHECK_THAT(prof.mass, WithinAbs(1.0, 1e-6));
    CHECK_THAT(dom.mass(), WithinAbs(1.0, 1e-9));
    REQUIRE(prof.offsets.size() == prof.omega_intervals.size() + 1);
    for (std::size_t k = 0; k < prof.omega_intervals.size(); ++k) {
      const std::size_t b = prof.offsets[k], e = prof.offsets[k + 1];
      REQUIRE(e - b == 256);
      CHECK(prof.near_boundary[b]);
      CHECK(prof.near_boundary[b + 1]);
      CHECK_FALSE(prof.near_boundary[b + 2]);
      CHECK(prof.near_boundary[e - 1]);
      CHECK(prof.near_boundary[e - 2]);
      const Interval& om = prof.omega_intervals[k];
      for (std::size_t i = b; i < e; ++i) {
        CHECK(om.contains(prof.a[i]));
        CHECK(prof.halfheight[i] > 0.0);
        // w > 0 is the same statement as d a0/da > 1/2
        CHECK(prof.density[i] > 0.0);
        CHECK_THAT(a_t(c.mu, c.t, prof.a0[i]), WithinAbs(prof.a[i], 1e-10 * (1.0 + std::abs(prof.a[i]))));
        if (i > b) CHECK(prof.cdf[i] >= prof.cdf[i - 1]);
      }
      // finite differences of a0_of_a away from the edges
      for (int j = 1; j < 50; ++j) {
        const double a = om.lo + 0.01 * om.length() + 0.98 * om.length() * j / 50.0;
        const double h = 1e-5 * om.length();
        const double d = (dom.a0_of_a(a + h) - dom.a0_of_a(a - h)) / (2.0 * h);
        CHECK_THAT((d - 0.5) / (2.0 * kPi * c.t), WithinAbs(dom.w_t(a), 1e-5));
      }
    }
    CHECK_THAT(prof.marginal_cdf(prof.omega_intervals.back().hi + 1.0), WithinAbs(prof.mass, 1e-15));
    CHECK(prof.marginal_cdf(prof.omega_intervals.front().lo - 1.0) == 0.0);
    const double med = prof.marginal_quantile(0.5 * prof.mass);
    CHECK_THAT(prof.marginal_cdf(med), WithinAbs(0.5 * prof.mass, 1e-9));
  }
}

TEST_CASE("uniform height is unimodal with its peak at zero") {
  const BrownDomain dom(testing::uniform(), 0.1);
  const BrownProfile prof = dom.profile(200);
  std::size_t peak = 0;
  for (std::size_t i = 1; i < prof.size(); ++i)
    if (prof.halfheight[i] > prof.halfheight[peak]) peak = i;
  for (std::size_t i = 1; i <= peak; ++i) CHECK(prof.halfheight[i] >= prof.halfheight[i - 1]);
  for (std::size_t i = peak + 1; i < prof.size(); ++i) CHECK(prof.halfheight[i] <= prof.halfheight[i - 1]);
  CHECK(std::abs(prof.a[peak]) < 0.02);
  CHECK_THAT(dom.max_height(), WithinAbs(dom.b_t(0.0), 1e-9));
  CHECK_THAT(dom.max_height(), WithinAbs(2.0 * testing::uniform_vmax(0.1), 1e-8));
}

TEST_CASE("classification") {
  const BrownDomain dom(testing::semicircle(1.0), 1.0);
  CHECK(dom.classify(0.0).tag == RegionVerdict::Tag::inside);
  CHECK(dom.classify(3.0).tag == RegionVerdict::Tag::outside);
  CHECK(dom.classify({0.0, 1.0}).tag == RegionVerdict::Tag::inside);
  CHECK(dom.classify({0.0, 2.0}).tag == RegionVerdict::Tag::outside);
  const double a = 0.6;
  CHECK(dom.classify({a, dom.b_t(a)}).tag == RegionVerdict::Tag::boundary);
  CHECK(dom.classify({a, -dom.b_t(a)}).tag == RegionVerdict::Tag::boundary);
  CHECK(dom.classify(std::sqrt(2.0)).tag == RegionVerdict::Tag::boundary);
}

TEST_CASE("log potential outside") {
  for (const Measure& mu : {testing::semicircle(), testing::bernoulli(), testing::uniform()}) {
    const BrownDomain dom(mu, 0.5);
    const cplx far(3e3, 4e3);
    // the next term is 2 Re(mean / lambda), at most 2/5000 here
    CHECK_THAT(dom.s_outside(far), WithinAbs(2.0 * std::log(std::abs(far)), 1e-3));
    for (cplx z : {cplx(2.5, 0.3), cplx(-0.4, 1.9)}) CHECK_THAT(dom.s_outside(std::conj(z)), WithinAbs(dom.s_outside(z), 1e-11));
    const Interval& om = dom.omega().front();
    CHECK_THROWS_AS(dom.s_outside(0.5 * (om.lo + om.hi)), Error);
  }
  const BrownDomain dom(testing::semicircle(1.0), 1.0);
  const cplx z = 2.0;
  const double h = 1e-3;
  const double lap = (dom.s_outside(z + h) + dom.s_outside(z - h) + dom.s_outside(z + cplx(0, h)) +
                      dom.s_outside(z - cplx(0, h)) - 4.0 * dom.s_outside(z)) /
                     (h * h);
  CHECK(std::abs(lap) < 1e-4);
}

TEST_CASE("sampling the Brown measure") {
  const BrownDomain dom(testing::bernoulli(), 1.05);
  const BrownProfile prof = dom.profile(256);
  const auto pts = sample_brown(prof, 4000, 99);
  REQUIRE(pts.size() == 4000);
  std::size_t inside = 0;
  for (const auto& z : pts) inside += std::abs(z.imag()) <= prof.halfheight_at(z.real()) + 1e-12;
  CHECK(inside == pts.size());
  CHECK(sample_brown(prof, 50, 3) == sample_brown(prof, 50, 3));
}

TEST_CASE("disjoint components for two atoms at small time") {
  const BrownDomain dom(testing::bernoulli(0.5), 0.1);
  REQUIRE(dom.omega().size() == 2);
  CHECK_THAT(dom.omega()[0].hi, WithinAbs(-dom.omega()[1].lo, 1e-10));
  CHECK(dom.omega_index(0.0) == std::nullopt);
  const double mid = 0.5 * (dom.omega()[1].lo + dom.omega()[1].hi);
  CHECK(dom.omega_index(mid) == std::optional<std::size_t>(1));
  CHECK(dom.omega_index(dom.omega()[1].hi) == std::nullopt);
  CHECK(dom.omega_index(dom.omega()[1].hi, true) == std::optional<std::size_t>(1));
}
