#pragma once

// Linearized stability: the principal eigenvalue mu_1 of
//   -phi'' - (n-1)/r phi' - lambda f'(u(r)) phi = mu phi,
//   phi'(0) = 0, phi(1) = 0,
// discretized by a flux-form finite-volume scheme on a cosine-graded grid and
// Richardson-extrapolated over two resolutions. Also: Rayleigh quotients of
// explicit test functions and the closed-form stability margin of the
// explicit singular profiles.

#include <functional>

#include "memslab/nonlinearity.hpp"
#include "memslab/numerics.hpp"
#include "memslab/radial_solver.hpp"

namespace memslab::spectral {

struct SpectralOptions {
  int m = 400;  // base cell count; the refinement solve uses 2m
  num::Tolerance tol;
};

struct SpectralResult {
  double mu1 = 0.0;       // extrapolated principal eigenvalue
  double error_bar = 0.0; // 1.5 |mu_{2m} - mu_m|
  double mu_coarse = 0.0;
  double mu_fine = 0.0;
  bool truncated = false;          // potential clipped near the cap
  double truncation_radius = 0.0;  // largest r where clipping occurred
  num::GridFunction eigenfunction;  // phi(r) on the fine grid, max-normalized
};

SpectralResult rayleigh_min(const nonlin::Nonlinearity& nl,
                            const radial::RadialProfile& prof,
                            const SpectralOptions& opt = {});

// Radial test function with derivative.
struct TestFunction {
  std::function<double(double)> value;
  std::function<double(double)> deriv;

  // 1 on [0, r0], quintic smoothstep down to 0 on [r0, r1], 0 beyond
  static TestFunction smoothstep_cutoff(double r0, double r1);
  // r^g
  static TestFunction power_weight(double g);
  // (1-r)^b on [0, 1], 0 beyond
  static TestFunction one_minus_power(double b);
  static TestFunction product(TestFunction lhs, TestFunction rhs);
};

struct FormResult {
  double form = 0.0;      // int_B |grad phi|^2 - lambda f'(u) phi^2
  double norm2 = 0.0;     // int_B phi^2
  double rayleigh = 0.0;  // form / norm2
};

FormResult quadratic_form(const nonlin::Nonlinearity& nl,
                          const radial::RadialProfile& prof,
                          const TestFunction& phi,
                          const num::Tolerance& tol = {});

struct ExplicitStability {
  double c_H = 0.0;    // coefficient of the inverse-square linearized potential
  double margin = 0.0; // (n-2)^2/4 - c_H
  bool stable = false;
};

// Stability of u = 1 - r^{2/(1+p)} via the Hardy inequality: the linearized
// potential is c_H / r^2 with c_H = (2p/(1+p)) (2/(1+p) + n - 2).
ExplicitStability explicit_singular_stability(double p, double n);

// Fill the mu1 column of a branch by re-solving each profile.
void annotate_branch(const nonlin::Nonlinearity& nl, radial::Branch& br,
                     const radial::ProfileOptions& popt = {},
                     const SpectralOptions& sopt = {}, int threads = 1);

}  // namespace memslab::spectral
