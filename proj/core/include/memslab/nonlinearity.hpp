#pragma once

// Singular nonlinearity families f on [0,1) with f(t) -> +infinity as t -> 1,
// their derived quantities (primitive F, Crandall-Rabinowitz quotient, the
// q and m growth quotients), certified concavity constants, and the
// oscillating counterexample family evaluated in log coordinates.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "memslab/numerics.hpp"

namespace memslab::nonlin {

enum class Family {
  power,        // f = (1-t)^-p
  exponential,  // f = exp(1/(1-t))
  mems,         // f = (1-t)^-2
  scaled_power, // f = c (1-t)^-p
  constant,     // f = c (test only)
  castorina,    // f = (1-t)^-h(t), h oscillating in triple-log phase
  custom_table, // monotone interpolation of tabulated (t, f)
};

struct EvalResult {
  double f = 0.0;
  double fp = 0.0;   // f'
  double fpp = 0.0;  // f''
  double F = 0.0;    // primitive with F(0) = 0
};

// Grid specification for tail liminf/limsup surrogates: geometric values of
// 1-t from `start` down to `floor`, plus a phase sweep for log-coordinate
// families.
struct TailGrid {
  double start = 1e-1;
  double floor = 1e-12;
  int points = 200;
  int phase_periods = 2;
  int phase_points = 1024;
  double phase_w_min = 200.0;  // minimum doubly-exponentiated phase depth
};

enum class Quotient { gamma, q, m };

struct CRCertificate {
  double theta = 0.0;
  double K = 0.0;
  double K_tilde = 0.0;
  bool K_unbounded = false;
  bool K_tilde_unbounded = false;
  std::optional<double> t0;  // onset of concavity of f^-theta
  double gamma_lo = 0.0, gamma_hi = 0.0;
  double q_lo = 0.0, q_hi = 0.0;
  double m_lo = 0.0, m_hi = 0.0;
  bool cr_condition_holds = false;  // gamma_lo > 1
};

class Nonlinearity {
 public:
  static Nonlinearity power(double p);
  static Nonlinearity exponential();
  static Nonlinearity mems();
  static Nonlinearity scaled_power(double p, double c);
  static Nonlinearity constant(double c);
  static Nonlinearity castorina(double a, double b, double eps);
  static Nonlinearity custom_table(std::vector<double> t,
                                   std::vector<double> f);
  static Nonlinearity custom_table_csv(const std::string& path);

  Family family() const { return family_; }
  std::string tag() const;
  double param_p() const { return p_; }
  double param_c() const { return c_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  double param_eps() const { return eps_; }

  bool is_singular() const;       // f -> infinity at 1
  bool is_nonintegrable() const;  // F -> infinity at 1
  bool is_convex() const;

  double f(double t) const;
  double fp(double t) const;
  double fpp(double t) const;
  double F(double t) const;
  EvalResult eval(double t) const;

  // f f'' / f'^2, evaluated in overflow-safe closed form per family.
  double cr_quotient(double t) const;
  // f'(t)(1-t)/f(t).
  double q_quotient(double t) const;
  // log f(t) / log(1/(1-t)); undefined at t = 0.
  double m_quotient(double t) const;

  num::Tolerance quad_tol() const { return quad_tol_; }
  void set_quad_tol(const num::Tolerance& tol) { quad_tol_ = tol; }

 private:
  Nonlinearity() = default;
  void require_domain(double t) const;

  Family family_ = Family::power;
  double p_ = 2.0, c_ = 1.0;
  double a_ = 1.2, b_ = 1.8, eps_ = 2.0;
  num::CubicInterpolant table_;       // log f vs t for custom tables
  num::Tolerance quad_tol_{};
};

// Numerical surrogate for the liminf/limsup pair of a tail quotient:
// (min, max) over the tail grid, with a phase sweep for the oscillating
// family so the oscillation extremes are always sampled.
std::pair<double, double> estimate_limits(const Nonlinearity& nl, Quotient q,
                                          const TailGrid& grid = {});

struct KResult {
  double K = 0.0;
  bool unbounded = false;
};

// Smallest K with f''(t)f(t) >= (1+theta) f'(t)^2 - K on the grid. The tail
// is classified from the sign of (gamma estimate) - (1+theta): a negative
// sign means no finite K exists.
KResult find_K(const Nonlinearity& nl, double theta, const TailGrid& grid = {});
// Same with f replaced by f - f(0).
KResult find_K_shifted(const Nonlinearity& nl, double theta,
                       const TailGrid& grid = {});

// Smallest grid point t0 with (f^-theta)'' <= 0 on [t0, 1-floor], or none.
std::optional<double> concavity_onset(const Nonlinearity& nl, double theta,
                                      const TailGrid& grid = {});

// Full certificate: quotient brackets, a default theta = 0.9 (gamma_lo - 1)
// when the Crandall-Rabinowitz condition holds, and the K constants.
CRCertificate certify(const Nonlinearity& nl,
                      std::optional<double> theta = std::nullopt,
                      const TailGrid& grid = {});

// Stability threshold N(p) = 2 + 4p/(1+p) + 4 sqrt(p/(1+p)).
double np_threshold(double p);

// N# = 2/(1+1/m) (gamma + 2 + 2 sqrt(gamma) + (gamma - 1 - 1/m)_-).
double castorina_threshold(double gamma_lo, double m_lo);

struct RelationDefects {
  double gamma_defect = 0.0;  // max |gamma(t) - (1 + 1/q(t))|
  double mq_defect = 0.0;     // max |m(t) - q(t)|
  bool limits_exist = true;   // false for the oscillating family
};

RelationDefects relation_check(const Nonlinearity& nl,
                               const TailGrid& grid = {});

enum class OscillationRegime {
  oscillating,          // genuine alternation, a < 1 < b
  persistent,           // h >= 1 on whole tail (a >= 1)
  degenerate_halfline,  // a == b >= 1
  integrable_flagged,   // b <= 1: no persistent exceedance
};

struct OscillationIntervals {
  OscillationRegime regime;
  std::vector<std::pair<double, double>> s_intervals;
  bool lengths_increasing = false;
};

// s-intervals where the oscillating exponent satisfies h(s) >= 1, computed in
// the phase variable tau = eps log(1 + log(1 + s)) and mapped back through
// the monotone inverse s = exp(exp(tau/eps) - 1) - 1.
OscillationIntervals oscillation_intervals(double a, double b, double eps,
                                           double s_lo, double s_hi);

}  // namespace memslab::nonlin
