#include "memslab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "memslab/nonlinearity.hpp"
#include "memslab/radial_solver.hpp"

using namespace memslab::spectral;
namespace nonlin = memslab::nonlin;
namespace radial = memslab::radial;
namespace num = memslab::num;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("zero potential reproduces the radial Laplacian eigenvalue") {
  // constant source: f' = 0, so mu1 is the first Dirichlet eigenvalue of the
  // radial Laplacian: (pi/2)^2 in n = 1 and pi^2 in n = 3.
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::constant(1.0);
  {
    radial::RadialProfile prof = radial::solve_profile(nl, 0.5, 1.0);
    SpectralResult res = rayleigh_min(nl, prof);
    CHECK(std::abs(res.mu1 - kPi * kPi / 4.0) < 1e-6);
    CHECK(res.error_bar < 1e-4);
  }
  {
    radial::RadialProfile prof = radial::solve_profile(nl, 0.5, 3.0);
    SpectralResult res = rayleigh_min(nl, prof);
    CHECK(std::abs(res.mu1 - kPi * kPi) < 1e-6);
  }
}

TEST_CASE("richardson pair brackets the extrapolated value") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::RadialProfile prof = radial::solve_profile(nl, 0.2, 2.0);
  SpectralResult res = rayleigh_min(nl, prof);
  CHECK(res.mu1 > 0.0);  // low branch point is stable
  CHECK(std::abs(res.mu1 - res.mu_fine) <= std::abs(res.mu1 - res.mu_coarse));
  CHECK_FALSE(res.truncated);
}

TEST_CASE("quadratic form agrees with the eigensolve on the ground mode") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::RadialProfile prof = radial::solve_profile(nl, 0.3, 3.0);
  SpectralResult res = rayleigh_min(nl, prof);
  num::CubicInterpolant mode = res.eigenfunction.interpolant();
  TestFunction phi;
  phi.value = [&](double r) { return mode.value(r); };
  phi.deriv = [&](double r) { return mode.derivative(r); };
  num::Tolerance tol;
  tol.abs_tol = tol.rel_tol = 1e-8;
  FormResult fr = quadratic_form(nl, prof, phi, tol);
  CHECK(fr.rayleigh == doctest::Approx(res.mu1).epsilon(5e-3));
  CHECK(fr.rayleigh >= res.mu1 - 1e-4);  // Rayleigh quotient upper bound
}

TEST_CASE("instability grows past the fold") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::RadialProfile low = radial::solve_profile(nl, 0.15, 2.0);
  radial::RadialProfile high = radial::solve_profile(nl, 0.8, 2.0);
  CHECK(rayleigh_min(nl, low).mu1 > 0.0);
  CHECK(rayleigh_min(nl, high).mu1 < 0.0);
}

TEST_CASE("stability threshold of the explicit singular solutions") {
  // margin changes sign exactly at n = N(p)
  std::mt19937 gen(777);
  std::uniform_real_distribution<double> dist(1e-3, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double p = dist(gen);
    const double np = nonlin::np_threshold(p);
    CHECK(std::abs(explicit_singular_stability(p, np).margin) < 1e-10);
    CHECK(explicit_singular_stability(p, np + 1e-6).margin > 0.0);
    CHECK(explicit_singular_stability(p, np - 1e-6).margin < 0.0);
  }
  CHECK(nonlin::np_threshold(1.0) ==
        doctest::Approx(4.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(explicit_singular_stability(1.0, 7.0).stable);
  CHECK_FALSE(explicit_singular_stability(2.0, 3.0).stable);
  CHECK_FALSE(explicit_singular_stability(2.0, 6.0).stable);
  CHECK(explicit_singular_stability(2.0, 8.0).stable);
}

TEST_CASE("hardy witness certifies instability in low dimension") {
  // n = 6, p = 2: xi = r^{-(n-2)/2+eps} cutoff makes the form negative
  const double p = 2.0, n = 6.0;
  nonlin::Nonlinearity nl =
      nonlin::Nonlinearity::scaled_power(p, radial::explicit_coefficient(p, n));
  radial::RadialProfile prof = radial::explicit_profile(p, n);
  const double eps = 0.3;
  TestFunction xi = TestFunction::product(
      TestFunction::power_weight(-(n - 2.0) / 2.0 + eps),
      TestFunction::smoothstep_cutoff(0.25, 0.75));
  num::Tolerance tol;
  tol.abs_tol = tol.rel_tol = 1e-6;
  FormResult fr = quadratic_form(nl, prof, xi, tol);
  CHECK(fr.form < 0.0);
}

TEST_CASE("branch annotation fills the eigenvalue column") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::SGrid grid;
  grid.count = 12;
  radial::Branch br = radial::solve_branch(nl, 2.0, grid, {}, 2);
  annotate_branch(nl, br, {}, {}, 2);
  for (const auto& pt : br.points) CHECK(std::isfinite(pt.mu1));
  // below the fold the branch is stable
  for (const auto& pt : br.points)
    if (pt.s < br.s_star - 1e-9) CHECK(pt.mu1 > 0.0);
}

TEST_CASE("singular profiles are rejected") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  radial::RadialProfile prof = radial::explicit_profile(2.0, 8.0);
  CHECK_THROWS_AS(rayleigh_min(nl, prof), num::DomainError);
}
