#pragma once

// Numerical verification of the a priori estimates along stable branches:
// interior and global L-infinity control, L^pbar bounds, W^{1,2} and
// Morrey-type estimates, the f'(u)f(u) integral bound, the stability lemma,
// the weighted Hardy inequality, and the L1 Laplacian control. Ratios are
// recorded per branch point; verdicts are trend-based on the tail in 1-s.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memslab/nonlinearity.hpp"
#include "memslab/radial_solver.hpp"
#include "memslab/spectral.hpp"

namespace memslab::est {

enum class Verdict { bounded, growing, indeterminate };
std::string verdict_name(Verdict v);

struct VerdictOptions {
  double bounded_factor = 10.0;  // admissible spread within the last decade
  double growth_factor = 1.02;   // required decade-median increase
  int min_decades = 3;           // decades of 1-s needed to call `growing`
};

struct Sample {
  double s = 0.0;
  double ratio = 0.0;
};

struct EstimateReport {
  std::string tag;
  std::string family;
  double n = 0.0;
  std::map<std::string, double> params;
  std::vector<Sample> samples;
  double max_ratio = 0.0;
  Verdict verdict = Verdict::indeterminate;
};

// Decade trend of ratio(s) in 1-s: `growing` needs min_decades decades with
// strictly increasing medians; `bounded` needs the last decade's spread to
// stay within bounded_factor.
Verdict verdict_from_samples(const std::vector<Sample>& samples,
                             const VerdictOptions& opt = {});

// A branch restricted to its stable part (below the first fold), with the
// profiles re-solved and kept for quadrature.
struct StableBranch {
  nonlin::Nonlinearity nl;
  double n = 0.0;
  radial::Branch branch;                        // full sweep
  std::vector<radial::RadialProfile> profiles;  // stable points, ascending s
};

StableBranch stable_branch(const nonlin::Nonlinearity& nl, double n,
                           const radial::SGrid& grid = {},
                           const radial::ProfileOptions& opt = {},
                           int threads = 1);

// Parameters shared by the L^pbar verifiers. theta comes from the
// nonlinearity's certificate; beta must lie in (0, sqrt(1+theta)-1) and
// defaults to 0.9 of the upper endpoint. pbar = (2+beta) 2n/(n-2) for n >= 3;
// for n <= 2 it is taken from pbar_low_dim.
struct LpParams {
  std::optional<double> theta;
  std::optional<double> beta;
  double pbar_low_dim = 20.0;
};

EstimateReport verify_interior_linf(const StableBranch& sb);
EstimateReport verify_global_linf(const StableBranch& sb);
EstimateReport verify_interior_lp(const StableBranch& sb,
                                  const LpParams& par = {});
EstimateReport verify_global_lp(const StableBranch& sb,
                                const LpParams& par = {});
EstimateReport verify_w12(const StableBranch& sb);
EstimateReport verify_morrey(const StableBranch& sb);
EstimateReport verify_nedev_yezhou(const StableBranch& sb);

// Weighted Hardy inequality ((n+a-2)^2/4) int phi^2 |x|^{a-2} <= int
// phi_r^2 |x|^a over B_1. Returns the LHS/RHS ratio.
double verify_hardy(double n, double a, const spectral::TestFunction& phi,
                    const num::Tolerance& tol = {});

struct StabilityLemmaResult {
  double ratio = 0.0;            // LHS / RHS of the lemma
  double precursor_ratio = 0.0;  // int g''(u) g(u) |grad u|^2 eta^2 / int g(u)^2 |grad eta|^2
  double theta = 0.0;
  double K = 0.0;  // rescaled to the effective nonlinearity g = lambda f
};

StabilityLemmaResult verify_stability_lemma(
    const StableBranch& sb, std::size_t point_idx,
    const spectral::TestFunction& eta,
    std::optional<double> theta = std::nullopt,
    const num::Tolerance& tol = {});

// int_{B_{3/4}} g(u) dx / (max |Delta cutoff| * |u|_{L1(B_1)}) with the fixed
// quintic cutoff that is 1 on B_{3/4} and supported in B_1; <= 1 by the
// divergence-theorem argument.
double verify_l1_laplacian_control(const StableBranch& sb,
                                   std::size_t point_idx,
                                   const num::Tolerance& tol = {});

struct SubsolutionDefects {
  double primitive_identity = 0.0;  // -Delta G(u) = -g'(u)|grad u|^2 + g(u)^2
  double nonlinearity_identity = 0.0;  // -Delta g(u) = -g''(u)|grad u|^2 + g'(u)g(u)
};

// Pointwise finite-difference check of the two subsolution identities on a
// profile; returns max relative defects away from the endpoints.
SubsolutionDefects check_subsolution_identities(
    const nonlin::Nonlinearity& nl, const radial::RadialProfile& prof);

// Eligible-dimension bound n < 4 + 2 sqrt(gamma_lo) for the extended-range
// remark; reported, never asserted.
double extended_range_bound(double gamma_lo);

}  // namespace memslab::est
