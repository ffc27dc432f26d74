#include "memslab/nonlinearity.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "memslab/numerics.hpp"

using namespace memslab::nonlin;
namespace num = memslab::num;

namespace {

std::vector<double> tail_grid_points(int count = 100, double start = 1e-1,
                                     double floor_ = 1e-10) {
  std::vector<double> t;
  const double ratio = std::pow(floor_ / start, 1.0 / (count - 1));
  double d = start;
  for (int i = 0; i < count; ++i, d *= ratio) t.push_back(1.0 - d);
  return t;
}

}  // namespace

TEST_CASE("power family closed-form quotients") {
  for (double p : {0.5, 1.0, 2.0, 3.5}) {
    Nonlinearity nl = Nonlinearity::power(p);
    for (double t : tail_grid_points()) {
      CHECK(std::abs(nl.cr_quotient(t) - (1.0 + 1.0 / p)) < 1e-10);
      CHECK(std::abs(nl.q_quotient(t) - p) < 1e-10);
      if (t > 0.0) CHECK(std::abs(nl.m_quotient(t) - p) < 1e-10);
    }
  }
}

TEST_CASE("scaled power matches power up to the scale factor") {
  Nonlinearity a = Nonlinearity::power(2.0);
  Nonlinearity b = Nonlinearity::scaled_power(2.0, 6.0);
  for (double t : {0.0, 0.3, 0.9, 0.999}) {
    CHECK(b.f(t) == doctest::Approx(6.0 * a.f(t)).epsilon(1e-14));
    CHECK(b.fp(t) == doctest::Approx(6.0 * a.fp(t)).epsilon(1e-14));
    CHECK(b.F(t) == doctest::Approx(6.0 * a.F(t)).epsilon(1e-14));
    CHECK(b.cr_quotient(t) == doctest::Approx(a.cr_quotient(t)));
  }
}

TEST_CASE("exponential quotient against a finite-difference oracle") {
  Nonlinearity nl = Nonlinearity::exponential();
  for (double t : {0.1, 0.4, 0.7, 0.9, 0.99}) {
    // gamma(t) = 1 + 2(1 - t) in closed form
    CHECK(std::abs(nl.cr_quotient(t) - (1.0 + 2.0 * (1.0 - t))) < 1e-12);
    // fourth-order stencils with the step scaled to the blow-up rate
    const double h = 1e-3 * (1.0 - t) * (1.0 - t);
    const double fm2 = nl.f(t - 2 * h), fm1 = nl.f(t - h), f0 = nl.f(t);
    const double fp1 = nl.f(t + h), fp2 = nl.f(t + 2 * h);
    const double fd_fp = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    const double fd_fpp =
        (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    const double fd_gamma = f0 * fd_fpp / (fd_fp * fd_fp);
    CHECK(std::abs(nl.cr_quotient(t) - fd_gamma) < 1e-8);
  }
  TailGrid grid;
  grid.floor = 1e-6;
  auto [lo, hi] = estimate_limits(nl, Quotient::gamma, grid);
  CHECK(std::abs(lo - 1.0) < 1e-3);
}

TEST_CASE("exponential primitive against a trapezoid oracle") {
  Nonlinearity nl = Nonlinearity::exponential();
  // F(t) = int_0^t exp(1/(1-x)) dx by brute trapezoid refinement
  const double t = 0.5;
  auto g = [&](double x) { return std::exp(1.0 / (1.0 - x)); };
  double prev = 0.0, curr = 0.0;
  for (int m = 1 << 10; m <= (1 << 20); m <<= 1) {
    curr = 0.5 * (g(0.0) + g(t));
    for (int i = 1; i < m; ++i) curr += g(t * i / m);
    curr *= t / m;
    if (std::abs(curr - prev) < 1e-11 * curr) break;
    prev = curr;
  }
  CHECK(nl.F(t) == doctest::Approx(curr).epsilon(1e-9));
}

TEST_CASE("primitive is consistent with the density everywhere") {
  for (const Nonlinearity& nl :
       {Nonlinearity::mems(), Nonlinearity::power(0.5),
        Nonlinearity::scaled_power(1.0, 6.0)}) {
    for (double t : {0.2, 0.5, 0.8}) {
      const double h = 1e-6;
      CHECK((nl.F(t + h) - nl.F(t - h)) / (2.0 * h) ==
            doctest::Approx(nl.f(t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("appendix relations for power families") {
  for (double p : {1.0, 2.0, 4.0}) {
    RelationDefects d = relation_check(Nonlinearity::power(p));
    CHECK(d.limits_exist);
    CHECK(d.gamma_defect < 1e-10);
    CHECK(d.mq_defect < 1e-10);
  }
}

TEST_CASE("oscillating family recovers its envelope") {
  Nonlinearity nl = Nonlinearity::castorina(1.2, 1.8, 2.0);
  auto [q_lo, q_hi] = estimate_limits(nl, Quotient::q);
  CHECK(std::abs(q_lo - 1.2) < 1e-2);
  CHECK(std::abs(q_hi - 1.8) < 1e-2);
  RelationDefects d = relation_check(nl);
  CHECK_FALSE(d.limits_exist);
}

TEST_CASE("oscillation intervals grow and alternate") {
  // genuine alternation needs the envelope to straddle 1
  OscillationIntervals oi = oscillation_intervals(0.6, 1.8, 2.0, 0.0, 1e30);
  CHECK(oi.regime == OscillationRegime::oscillating);
  CHECK(oi.s_intervals.size() >= 2);
  CHECK(oi.lengths_increasing);
  for (std::size_t i = 1; i < oi.s_intervals.size(); ++i)
    CHECK(oi.s_intervals[i].first > oi.s_intervals[i - 1].second);

  // envelope above 1: the exceedance set covers the whole tail
  OscillationIntervals pers = oscillation_intervals(1.2, 1.8, 2.0, 0.0, 1e30);
  CHECK(pers.regime == OscillationRegime::persistent);
  CHECK(pers.lengths_increasing);

  CHECK(oscillation_intervals(1.5, 1.5, 2.0, 0.0, 1e30).regime ==
        OscillationRegime::degenerate_halfline);
  CHECK(oscillation_intervals(0.5, 0.9, 2.0, 0.0, 1e30).regime ==
        OscillationRegime::integrable_flagged);
  CHECK(oscillation_intervals(0.9, 1.9, 2.0, 0.0, 1e30).regime ==
        OscillationRegime::oscillating);
}

TEST_CASE("gamma brackets straddle the proposition range") {
  const std::vector<Nonlinearity> fams = {
      Nonlinearity::power(1.0),          Nonlinearity::mems(),
      Nonlinearity::scaled_power(1.0, 6.0),
      Nonlinearity::exponential(),       Nonlinearity::castorina(1.2, 1.8, 2.0),
  };
  for (const auto& nl : fams) {
    REQUIRE(nl.is_singular());
    REQUIRE(nl.is_nonintegrable());
    auto [lo, hi] = estimate_limits(nl, Quotient::gamma);
    CHECK(hi >= 1.0 - 1e-3);
    CHECK(lo <= 2.0 + 1e-3);
  }
}

TEST_CASE("certificate constants for the benchmark family") {
  Nonlinearity nl = Nonlinearity::mems();
  CRCertificate cert = certify(nl);
  CHECK(cert.cr_condition_holds);
  CHECK(cert.theta == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(cert.K == doctest::Approx(0.0));
  CHECK_FALSE(cert.K_unbounded);
  CHECK(cert.K_tilde == doctest::Approx(800.0).epsilon(1e-9));
  REQUIRE(cert.t0.has_value());
  CHECK(*cert.t0 == doctest::Approx(0.0));

  // f'' f >= 1.4 f'^2 - K~ with f shifted by f(0): the supremum of
  // 2(1-t)^-6 (0.4 - 6 (1-t)^2 + ...) reduces to max(6y^2 - 0.4y^3) = 200.
  KResult shifted = find_K_shifted(nl, 0.4);
  CHECK_FALSE(shifted.unbounded);
  CHECK(shifted.K == doctest::Approx(200.0).epsilon(1e-9));
}

TEST_CASE("theta past the quotient gap makes the constants unbounded") {
  Nonlinearity nl = Nonlinearity::mems();  // gamma = 1.5 exactly
  KResult k = find_K(nl, 0.6);
  CHECK(k.unbounded);
}

TEST_CASE("concavity onset") {
  // (f^-theta)'' <= 0 for mems everywhere once theta <= 1/2
  Nonlinearity mems = Nonlinearity::mems();
  auto t0 = concavity_onset(mems, 0.45);
  REQUIRE(t0.has_value());
  CHECK(*t0 == doctest::Approx(0.0));
  // for the exponential family gamma -> 1, so any theta > 0 fails in the tail
  CHECK_FALSE(concavity_onset(Nonlinearity::exponential(), 0.8).has_value());
}

TEST_CASE("exponential family fails the quotient condition") {
  CRCertificate cert = certify(Nonlinearity::exponential());
  CHECK_FALSE(cert.cr_condition_holds);
  CHECK(cert.gamma_lo < 1.0 + 1e-3);
}

TEST_CASE("dimension thresholds") {
  CHECK(np_threshold(1.0) == doctest::Approx(4.0 + 2.0 * std::sqrt(2.0))
                                 .epsilon(1e-12));
  CHECK(np_threshold(2.0) == doctest::Approx(7.932652990).epsilon(1e-9));
  // N# with gamma = 1 + 1/p and m = p reduces to N(p)
  for (double p : {1.0, 2.0, 5.0}) {
    CHECK(castorina_threshold(1.0 + 1.0 / p, p) ==
          doctest::Approx(np_threshold(p)).epsilon(1e-12));
  }
}

TEST_CASE("custom table reproduces the tabulated family") {
  std::vector<double> t, f;
  Nonlinearity mems = Nonlinearity::mems();
  for (int i = 0; i <= 400; ++i) {
    t.push_back(0.999 * i / 400.0);
    f.push_back(mems.f(t.back()));
  }
  Nonlinearity tab = Nonlinearity::custom_table(t, f);
  for (double q : {0.1, 0.35, 0.62, 0.9}) {
    CHECK(tab.f(q) == doctest::Approx(mems.f(q)).epsilon(1e-5));
    CHECK(tab.fp(q) == doctest::Approx(mems.fp(q)).epsilon(1e-2));
  }
}

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(Nonlinearity::power(0.0), num::DomainError);
  CHECK_THROWS_AS(Nonlinearity::scaled_power(1.0, -1.0), num::DomainError);
  CHECK_THROWS_AS(Nonlinearity::castorina(1.8, 1.2, 2.0), num::DomainError);
  Nonlinearity nl = Nonlinearity::mems();
  CHECK_THROWS_AS(nl.f(1.0), num::DomainError);
  CHECK_THROWS_AS(nl.f(-0.1), num::DomainError);
}

TEST_CASE("tags name the family and parameters") {
  CHECK(Nonlinearity::power(2.0).tag() == "power(p=2)");
  CHECK(Nonlinearity::mems().tag() == "mems");
  CHECK(Nonlinearity::scaled_power(1.0, 6.0).tag() ==
        "scaled_power(p=1,c=6)");
}
