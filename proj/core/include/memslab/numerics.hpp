#pragma once

// Shared numerical kernels: adaptive RK45 integration with event detection,
// adaptive Gauss-Kronrod quadrature, weighted radial integrals, Brent root
// finding, monotone/Hermite interpolation, and a symmetric tridiagonal
// eigensolver based on Sturm bisection.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace memslab::num {

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_steps = 500000;
  int max_subdiv = 60;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

// Piecewise cubic interpolant on a strictly increasing grid. If derivative
// samples are supplied they are used directly (C^1 Hermite); otherwise
// Fritsch-Carlson monotone slopes are computed from the values.
class CubicInterpolant {
 public:
  CubicInterpolant() = default;
  CubicInterpolant(std::vector<double> x, std::vector<double> y);
  CubicInterpolant(std::vector<double> x, std::vector<double> y,
                   std::vector<double> dy);

  double value(double xq) const;
  double derivative(double xq) const;
  double second_derivative(double xq) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t locate(double xq) const;
  std::vector<double> x_, y_, dy_;
};

struct GridFunction {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> dy;  // optional, same length as x when present

  CubicInterpolant interpolant() const;
};

// --- ODE integration -------------------------------------------------------

using OdeRhs =
    std::function<void(double, std::span<const double>, std::span<double>)>;
using OdeEvent = std::function<double(double, std::span<const double>)>;

struct OdeEventRecord {
  int event_index = -1;
  double x = 0.0;
  std::vector<double> state;
};

struct OdeSolution {
  std::vector<double> x;
  std::vector<std::vector<double>> states;  // states[i] is the state at x[i]
  std::vector<OdeEventRecord> events;
  bool terminated_by_event = false;
  double achieved_tol = 0.0;

  GridFunction component(std::size_t value_idx, std::size_t deriv_idx) const;
};

// Adaptive Dormand-Prince 4(5) integration from x0 to x1. Events are scalar
// functions of (x, state); a sign change within a step is refined by Brent
// re-integration over that step. All events are terminal.
// max_step may be empty; when given it bounds the step size as a function of
// the current state.
OdeSolution ode_integrate(
    const OdeRhs& rhs, std::vector<double> y0, double x0, double x1,
    const std::vector<OdeEvent>& events, const Tolerance& tol,
    const std::function<double(double, std::span<const double>)>& max_step =
        {});

// --- Quadrature ------------------------------------------------------------

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod 7/15 with bisection. Intervals that touch an
// endpoint of the original range are split at ratio 1/4 toward that endpoint
// so integrable endpoint singularities are graded into.
QuadResult quad_adaptive(const std::function<double(double)>& g, double a,
                         double b, const Tolerance& tol);

// Surface area of the unit sphere S^{n-1} in R^n.
double sphere_area(double n);

// \int_{B_rho} h(|x|) |x|^a dx = |S^{n-1}| \int_0^rho h(r) r^{a+n-1} dr.
double radial_integral(const std::function<double(double)>& h, double n,
                       double weight_exponent, double rho,
                       const Tolerance& tol);
double radial_integral(const GridFunction& gf, double n,
                       double weight_exponent, double rho,
                       const Tolerance& tol);

// --- Root finding ----------------------------------------------------------

// Brent refinement of a bracketed root. Requires a sign change on [a, b].
double root_bracket(const std::function<double(double)>& g, double a, double b,
                    const Tolerance& tol);

// Golden-section maximization of g on [a, b] to abscissa tolerance xtol.
double golden_max(const std::function<double(double)>& g, double a, double b,
                  double xtol);

// --- Tridiagonal eigensolver -----------------------------------------------

struct EigResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;
};

// Smallest eigenvalue and eigenvector of the generalized symmetric problem
// A v = mu M v with A tridiagonal (diag, off) and M = diag(mass) positive.
// Uses Sturm-count bisection followed by inverse iteration.
EigResult eig_tridiag_smallest(std::span<const double> diag,
                               std::span<const double> off,
                               std::span<const double> mass,
                               double eig_tol = 1e-13);

// Number of eigenvalues of the generalized problem strictly below x.
int sturm_count(std::span<const double> diag, std::span<const double> off,
                std::span<const double> mass, double x);

}  // namespace memslab::num
