#include "memslab/radial_solver.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "memslab/nonlinearity.hpp"
#include "memslab/numerics.hpp"

using namespace memslab::radial;
namespace nonlin = memslab::nonlin;
namespace num = memslab::num;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant source has the exact parabolic profile") {
  // -Delta u = lambda c with u = s at the center gives lambda = 2 n s / c
  // and u(r) = s (1 - r^2).
  for (double n : {1.0, 2.0, 3.0, 5.5}) {
    for (double s : {0.1, 0.5, 0.9}) {
      nonlin::Nonlinearity nl = nonlin::Nonlinearity::constant(2.0);
      RadialProfile prof = solve_profile(nl, s, n);
      CHECK(prof.lambda == doctest::Approx(2.0 * n * s / 2.0).epsilon(1e-10));
      CHECK(prof.max_u == doctest::Approx(s));
      for (double r : {0.25, 0.5, 0.75})
        CHECK(prof.value(r) ==
              doctest::Approx(s * (1.0 - r * r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("interval l1 norm of the parabolic profile") {
  // n = 1: int_{-1}^{1} s (1 - r^2) dr = 4s/3.
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::constant(1.0);
  RadialProfile prof = solve_profile(nl, 0.3, 1.0);
  CHECK(prof.l1_norm == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("first-integral radius oracle in one dimension") {
  // n = 1: energy conservation gives the first zero at
  // R = int_0^s dw / sqrt(2 (F(s) - F(w))).
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  for (double s : {0.2, 0.5, 0.8}) {
    RadialProfile prof = solve_profile(nl, s, 1.0);
    const double Fs = nl.F(s);
    num::Tolerance tol;
    tol.abs_tol = tol.rel_tol = 1e-11;
    // substitute w = s - v^2 to remove the square-root endpoint singularity
    const double R_oracle =
        num::quad_adaptive(
            [&](double v) {
              const double w = s - v * v;
              return 2.0 * v / std::sqrt(2.0 * (Fs - nl.F(w)));
            },
            0.0, std::sqrt(s), tol)
            .value;
    CHECK(prof.R == doctest::Approx(R_oracle).epsilon(1e-7));
  }
}

TEST_CASE("small center values follow the linearization") {
  // lambda(s)/s -> 2n/f(0) as s -> 0.
  for (double n : {2.0, 3.0}) {
    nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
    RadialProfile prof = solve_profile(nl, 1e-4, n);
    CHECK(prof.lambda / 1e-4 ==
          doctest::Approx(2.0 * n / nl.f(0.0)).epsilon(1e-2));
  }
}

TEST_CASE("residual check on solved profiles") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  RadialProfile prof = solve_profile(nl, 0.5, 3.0);
  CHECK(prof.residual < 1e-6);
}

TEST_CASE("near-singular shot stays solvable") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  RadialProfile prof = solve_profile(nl, 0.999, 2.0);
  CHECK(prof.lambda > 0.0);
  CHECK(prof.max_u == doctest::Approx(0.999));
  CHECK(prof.residual < 1e-6);
}

TEST_CASE("explicit singular profiles solve the equation in closed form") {
  for (auto [p, n] : std::vector<std::pair<double, double>>{
           {1.0, 7.0}, {2.0, 3.0}, {2.0, 8.0}, {3.0, 10.0}}) {
    const double alpha = 2.0 / (1.0 + p);
    CHECK(explicit_coefficient(p, n) ==
          doctest::Approx(alpha * (alpha + n - 2.0)).epsilon(1e-14));
    RadialProfile prof = explicit_profile(p, n);
    CHECK(prof.lambda == doctest::Approx(1.0));
    CHECK(prof.residual < 1e-8);
    for (double r : {1e-3, 0.3, 0.9, 1.0 - 1e-3})
      CHECK(prof.value(r) ==
            doctest::Approx(1.0 - std::pow(r, alpha)).epsilon(1e-12));
    // l1 norm closed form |S^{n-1}| alpha / (n (alpha + n))
    CHECK(prof.l1_norm ==
          doctest::Approx(num::sphere_area(n) * alpha / (n * (alpha + n)))
              .epsilon(1e-9));
  }
}

TEST_CASE("s grid is monotone and hits its endpoints") {
  SGrid grid;
  grid.count = 100;
  std::vector<double> v = grid.values();
  REQUIRE(v.size() == 100);
  CHECK(v.front() == doctest::Approx(grid.s_min));
  CHECK(v.back() == doctest::Approx(grid.s_max));
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}

TEST_CASE("constant family branch is exactly linear in s") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::constant(1.0);
  SGrid grid;
  grid.count = 20;
  Branch br = solve_branch(nl, 2.0, grid);
  for (const auto& pt : br.points)
    CHECK(pt.lambda == doctest::Approx(4.0 * pt.s).epsilon(1e-9));
  CHECK_FALSE(br.has_interior_fold);
  CHECK(br.s_star == doctest::Approx(br.points.back().s));
}

TEST_CASE("benchmark branch has an interior fold") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  SGrid grid;
  grid.count = 60;
  Branch br = solve_branch(nl, 2.0, grid, {}, 2);
  CHECK(br.has_interior_fold);
  CHECK(br.s_star > 0.2);
  CHECK(br.s_star < 0.7);
  CHECK(br.lambda_star > br.points.back().lambda);

  FoldResult fold = refine_fold(nl, 2.0, br.s_star - 0.1, br.s_star + 0.1);
  CHECK(fold.lambda_star >= br.lambda_star - 1e-9);
  CHECK(std::abs(fold.s_star - br.s_star) < 0.1);
}

TEST_CASE("threaded sweep matches the serial sweep exactly") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::mems();
  SGrid grid;
  grid.count = 24;
  Branch serial = solve_branch(nl, 3.0, grid, {}, 1);
  Branch parallel = solve_branch(nl, 3.0, grid, {}, 4);
  REQUIRE(serial.points.size() == parallel.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    CHECK(serial.points[i].lambda == parallel.points[i].lambda);
    CHECK(serial.points[i].l1_norm == parallel.points[i].l1_norm);
  }
}

TEST_CASE("monotone family keeps the extremal value at the sweep cap") {
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::scaled_power(1.0, 6.0);
  SGrid grid;
  grid.count = 40;
  Branch br = solve_branch(nl, 7.0, grid, {}, 2);
  CHECK_FALSE(br.has_interior_fold);
  CHECK(br.s_star == doctest::Approx(grid.s_max));
  // the tail approaches the explicit singular solution at lambda = 1
  CHECK(br.points.back().lambda == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("solver failure surfaces as an exception") {
  // R = sqrt(2 n s / c) exceeds rho_max for a tiny constant source
  nonlin::Nonlinearity nl = nonlin::Nonlinearity::constant(1e-8);
  CHECK_THROWS_AS(solve_profile(nl, 0.5, 2.0), SolverError);
}
