#pragma once

// Radial shooting solver for -Delta u = lambda f(u) on the unit ball. A
// profile with center value s is obtained by integrating
//   w'' + (n-1)/rho w' + f(w) = 0,  w(0) = s, w'(0) = 0
// out to its first zero R; then lambda = R^2 and u(r) = w(R r). Branches are
// swept in s, and the extremal parameter is the maximum of lambda(s).

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "memslab/nonlinearity.hpp"
#include "memslab/numerics.hpp"

namespace memslab::radial {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileOptions {
  num::Tolerance tol;
  double rho_max = 100.0;     // give up if no zero crossing by this radius
  double max_step = 0.05;     // absolute step cap, keeps the grid dense
  bool check_residual = true; // re-integration consistency check
};

struct RadialProfile {
  double s = 0.0;       // center value, equals max_u
  double n = 0.0;       // dimension
  double lambda = 0.0;  // R^2
  double R = 0.0;       // first zero of the shooting profile
  double max_u = 0.0;
  double l1_norm = 0.0;  // \int_{B_1} u dx
  double residual = 0.0;
  num::GridFunction u;  // u(r) with derivative samples, r in [0, 1]

  // closed-form evaluators, set for explicit profiles
  std::function<double(double)> exact_u;
  std::function<double(double)> exact_du;

  double value(double r) const;
  double deriv(double r) const;
};

RadialProfile solve_profile(const nonlin::Nonlinearity& nl, double s, double n,
                            const ProfileOptions& opt = {});

// s-grid for branch sweeps: uniform up to 0.9, then geometric in 1-s so the
// near-singular end is resolved.
struct SGrid {
  int count = 150;
  double s_min = 1e-3;
  double s_max = 1.0 - 1e-4;

  std::vector<double> values() const;
};

struct BranchPoint {
  double s = 0.0;
  double lambda = 0.0;
  double max_u = 0.0;
  double l1_norm = 0.0;
  double mu1 = std::numeric_limits<double>::quiet_NaN();  // set by annotation
};

struct Branch {
  std::string tag;
  double n = 0.0;
  std::vector<BranchPoint> points;
  double lambda_star = 0.0;
  double s_star = 0.0;             // argmax of lambda(s)
  bool has_interior_fold = false;  // maximum strictly inside the sweep
};

Branch solve_branch(const nonlin::Nonlinearity& nl, double n,
                    const SGrid& grid = {}, const ProfileOptions& opt = {},
                    int threads = 1);

// Golden-section refinement of max lambda(s) on [s_lo, s_hi].
struct FoldResult {
  double s_star = 0.0;
  double lambda_star = 0.0;
};
FoldResult refine_fold(const nonlin::Nonlinearity& nl, double n, double s_lo,
                       double s_hi, double s_tol = 1e-7,
                       const ProfileOptions& opt = {});

struct ExtremalInfo {
  double lambda_star = 0.0;
  double s_star = 0.0;
  bool interior_fold = false;
  bool singular = false;  // extremal profile touches the singularity
  RadialProfile profile;  // profile at (or nearest to) the extremal point
};

// Branch sweep plus fold refinement; the extremal profile is flagged singular
// when the stable part of the branch reaches max u within 1e-3 of 1.
ExtremalInfo extremal_profile(const nonlin::Nonlinearity& nl, double n,
                              const SGrid& grid = {},
                              const ProfileOptions& opt = {}, int threads = 1);

// Coefficient c(p, n) = alpha (alpha + n - 2), alpha = 2/(1+p), for which
// u = 1 - r^alpha solves -Delta u = c (1-u)^-p with lambda = 1.
double explicit_coefficient(double p, double n);

// The explicit singular profile u = 1 - r^alpha as a RadialProfile with
// closed-form evaluators; residual is evaluated from the closed forms.
RadialProfile explicit_profile(double p, double n);

}  // namespace memslab::radial
