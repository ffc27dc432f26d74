#include "memslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace memslab::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

// One finite-volume eigensolve with m cells. Nodes r_j = j/m, unknowns at
// j = 0..m-1 (phi_m = 0 is the Dirichlet condition; the zero-flux condition
// at r = 0 is built into the first control volume). Second order in 1/m, so
// a Richardson pass over m and 2m gains two more orders.
constexpr double kPotentialCap = 1e12;

double fv_eigensolve(const nonlin::Nonlinearity& nl,
                     const radial::RadialProfile& prof, int m,
                     num::GridFunction* phi_out, double* trunc_r) {
  const double n = prof.n;
  const double lam = prof.lambda;
  std::vector<double> r(m + 1);
  for (int j = 0; j <= m; ++j) r[j] = double(j) / m;

  auto half = [&](int j) { return 0.5 * (r[j] + r[j + 1]); };  // r_{j+1/2}
  auto volume = [&](double lo, double hi) {
    return (std::pow(hi, n) - std::pow(lo, n)) / n;
  };

  std::vector<double> diag(m), off(m - 1), mass(m);
  std::vector<double> flux(m);  // flux coefficient through r_{j+1/2}
  for (int j = 0; j < m; ++j)
    flux[j] = std::pow(half(j), n - 1.0) / (r[j + 1] - r[j]);

  for (int j = 0; j < m; ++j) {
    const double lo = (j == 0) ? 0.0 : half(j - 1);
    const double vol = volume(lo, half(j));
    mass[j] = vol;
    const double u = std::min(prof.value(r[j]), 1.0 - 1e-14);
    double pot = lam * nl.fp(std::max(u, 0.0));
    if (!(pot <= kPotentialCap)) {
      pot = kPotentialCap;
      if (trunc_r) *trunc_r = std::max(*trunc_r, r[j]);
    }
    diag[j] = flux[j] + (j > 0 ? flux[j - 1] : 0.0) - pot * vol;
    if (j + 1 < m) off[j] = -flux[j];
  }
  // Dirichlet end: the j = m-1 row keeps its flux[m-1] coupling to phi_m = 0.

  num::EigResult eig = num::eig_tridiag_smallest(diag, off, mass);
  if (phi_out) {
    phi_out->x.assign(r.begin(), r.end() - 1);
    phi_out->y = eig.eigenvector;
    double peak = 0.0;
    for (double v : phi_out->y) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
      for (double& v : phi_out->y) v /= peak;
    phi_out->x.push_back(1.0);
    phi_out->y.push_back(0.0);
  }
  return eig.eigenvalue;
}

}  // namespace

SpectralResult rayleigh_min(const nonlin::Nonlinearity& nl,
                            const radial::RadialProfile& prof,
                            const SpectralOptions& opt) {
  if (!(prof.max_u < 1.0))
    throw num::DomainError(
        "eigenvalue solve requires a regular profile (max u < 1)");
  if (opt.m < 8) throw num::DomainError("cell count too small");
  SpectralResult res;
  res.truncation_radius = -1.0;
  res.mu_coarse = fv_eigensolve(nl, prof, opt.m, nullptr, &res.truncation_radius);
  res.mu_fine = fv_eigensolve(nl, prof, 2 * opt.m, &res.eigenfunction,
                              &res.truncation_radius);
  res.truncated = res.truncation_radius >= 0.0;
  if (!res.truncated) res.truncation_radius = 0.0;
  res.mu1 = (4.0 * res.mu_fine - res.mu_coarse) / 3.0;
  res.error_bar = 1.5 * std::abs(res.mu_fine - res.mu_coarse);
  return res;
}

TestFunction TestFunction::smoothstep_cutoff(double r0, double r1) {
  if (!(0.0 <= r0) || !(r0 < r1))
    throw num::DomainError("cutoff requires 0 <= r0 < r1");
  TestFunction tf;
  tf.value = [r0, r1](double r) {
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    const double x = (r - r0) / (r1 - r0);
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  };
  tf.deriv = [r0, r1](double r) {
    if (r <= r0 || r >= r1) return 0.0;
    const double x = (r - r0) / (r1 - r0);
    return -30.0 * x * x * (1.0 - x) * (1.0 - x) / (r1 - r0);
  };
  return tf;
}

TestFunction TestFunction::power_weight(double g) {
  TestFunction tf;
  tf.value = [g](double r) { return std::pow(r, g); };
  tf.deriv = [g](double r) { return g * std::pow(r, g - 1.0); };
  return tf;
}

TestFunction TestFunction::one_minus_power(double b) {
  TestFunction tf;
  tf.value = [b](double r) {
    return r >= 1.0 ? 0.0 : std::pow(1.0 - r, b);
  };
  tf.deriv = [b](double r) {
    return r >= 1.0 ? 0.0 : -b * std::pow(1.0 - r, b - 1.0);
  };
  return tf;
}

TestFunction TestFunction::product(TestFunction lhs, TestFunction rhs) {
  TestFunction tf;
  tf.value = [l = lhs.value, r = rhs.value](double x) { return l(x) * r(x); };
  tf.deriv = [lv = lhs.value, ld = lhs.deriv, rv = rhs.value,
              rd = rhs.deriv](double x) {
    return ld(x) * rv(x) + lv(x) * rd(x);
  };
  return tf;
}

FormResult quadratic_form(const nonlin::Nonlinearity& nl,
                          const radial::RadialProfile& prof,
                          const TestFunction& phi, const num::Tolerance& tol) {
  const double lam = prof.lambda;
  auto grad_part = [&](double r) {
    const double d = phi.deriv(r);
    return d * d;
  };
  auto pot_part = [&](double r) {
    const double v = phi.value(r);
    const double u = std::clamp(prof.value(r), 0.0, 1.0 - 1e-14);
    return lam * nl.fp(u) * v * v;
  };
  auto sq = [&](double r) {
    const double v = phi.value(r);
    return v * v;
  };
  FormResult out;
  const double n = prof.n;
  out.form = num::radial_integral(grad_part, n, 0.0, 1.0, tol) -
             num::radial_integral(pot_part, n, 0.0, 1.0, tol);
  out.norm2 = num::radial_integral(sq, n, 0.0, 1.0, tol);
  out.rayleigh = out.form / out.norm2;
  return out;
}

ExplicitStability explicit_singular_stability(double p, double n) {
  if (!(p > 0.0)) throw num::DomainError("stability margin requires p > 0");
  if (!(n >= 1.0)) throw num::DomainError("dimension must be >= 1");
  ExplicitStability st;
  const double alpha = 2.0 / (1.0 + p);
  st.c_H = p * alpha * (alpha + n - 2.0);  // = lambda f'(u) r^2 for u explicit
  st.margin = 0.25 * (n - 2.0) * (n - 2.0) - st.c_H;
  st.stable = st.margin >= 0.0;
  return st;
}

void annotate_branch(const nonlin::Nonlinearity& nl, radial::Branch& br,
                     const radial::ProfileOptions& popt,
                     const SpectralOptions& sopt, int threads) {
  radial::ProfileOptions fast = popt;
  fast.check_residual = false;
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      radial::RadialProfile p =
          radial::solve_profile(nl, br.points[i].s, br.n, fast);
      br.points[i].mu1 = rayleigh_min(nl, p, sopt).mu1;
    }
  };
  const int nt = std::clamp(threads, 1, int(br.points.size()));
  if (nt <= 1) {
    work(0, br.points.size());
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (br.points.size() + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(br.points.size(), lo + chunk);
    if (lo < hi) pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace memslab::spectral
