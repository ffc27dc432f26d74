#include "memslab/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace memslab::radial {

namespace {

constexpr double kSingularMargin = 1e-3;

// RHS of the shooting system in rho, with f extended by constancy below 0 so
// the small overshoot past the zero crossing stays well defined.
num::OdeRhs make_rhs(const nonlin::Nonlinearity& nl, double n) {
  return [&nl, n](double rho, std::span<const double> y,
                  std::span<double> dy) {
    const double w = std::max(y[0], 0.0);
    dy[0] = y[1];
    dy[1] = -(n - 1.0) / rho * y[1] - nl.f(w);
  };
}

}  // namespace

double RadialProfile::value(double r) const {
  if (exact_u) return exact_u(r);
  return u.interpolant().value(r);
}

double RadialProfile::deriv(double r) const {
  if (exact_du) return exact_du(r);
  return u.interpolant().derivative(r);
}

RadialProfile solve_profile(const nonlin::Nonlinearity& nl, double s, double n,
                            const ProfileOptions& opt) {
  if (!(s > 0.0) || !(s < 1.0))
    throw num::DomainError("center value must lie in (0, 1)");
  if (!(n >= 1.0)) throw num::DomainError("dimension must be >= 1");

  const double fs = nl.f(s);
  const double fps = nl.fp(s);
  if (!std::isfinite(fs) || fs <= 0.0)
    throw SolverError("nonlinearity not positive-finite at center value");

  // series start: w = s + a2 rho^2 + a4 rho^4 + O(rho^6)
  const double a2 = -fs / (2.0 * n);
  const double a4 = fs * fps / (8.0 * n * (n + 2.0));
  const double r0 =
      std::min(1e-6, 1e-3 * std::sqrt(2.0 * n * (1.0 - s) / fs));
  std::vector<double> y0 = {s + a2 * r0 * r0 + a4 * r0 * r0 * r0 * r0,
                            2.0 * a2 * r0 + 4.0 * a4 * r0 * r0 * r0};

  const num::OdeRhs rhs = make_rhs(nl, n);
  std::vector<num::OdeEvent> events = {
      [](double, std::span<const double> y) { return y[0]; }};
  auto max_step = [&nl, n, s, &opt](double, std::span<const double> y) {
    const double w = std::clamp(y[0], 0.0, s);
    const double gap = 1.0 - w;
    return std::min(opt.max_step,
                    std::max(1e-7, 0.25 * std::sqrt(2.0 * n * gap / nl.f(w))));
  };

  num::OdeSolution sol =
      ode_integrate(rhs, y0, r0, opt.rho_max, events, opt.tol, max_step);
  if (!sol.terminated_by_event)
    throw SolverError("profile has no zero crossing up to rho = " +
                      std::to_string(opt.rho_max));

  RadialProfile prof;
  prof.s = s;
  prof.n = n;
  prof.max_u = s;
  prof.R = sol.events.front().x;
  prof.lambda = prof.R * prof.R;

  // consistency check: re-integrate a sample of grid intervals
  if (opt.check_residual && sol.x.size() > 2) {
    const std::size_t m = sol.x.size() - 1;
    const std::size_t take = std::min<std::size_t>(m, 16);
    double worst = 0.0;
    for (std::size_t j = 0; j < take; ++j) {
      const std::size_t i = j * (m - 1) / std::max<std::size_t>(take - 1, 1);
      num::OdeSolution seg = ode_integrate(rhs, sol.states[i], sol.x[i],
                                           sol.x[i + 1], {}, opt.tol);
      const auto& got = seg.states.back();
      const auto& want = sol.states[i + 1];
      const double dw = std::abs(got[0] - want[0]) / std::max(1.0, s);
      const double dwp =
          std::abs(got[1] - want[1]) / std::max(1.0, std::abs(want[1]));
      worst = std::max(worst, std::max(dw, dwp));
    }
    prof.residual = worst;
  }

  // map onto r = rho / R in [0, 1]
  prof.u.x.push_back(0.0);
  prof.u.y.push_back(s);
  prof.u.dy.push_back(0.0);
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    const double r = sol.x[i] / prof.R;
    if (r <= prof.u.x.back() || r >= 1.0) continue;
    prof.u.x.push_back(r);
    prof.u.y.push_back(sol.states[i][0]);
    prof.u.dy.push_back(sol.states[i][1] * prof.R);
  }
  prof.u.x.push_back(1.0);
  prof.u.y.push_back(0.0);
  prof.u.dy.push_back(sol.events.front().state[1] * prof.R);

  prof.l1_norm = num::radial_integral(prof.u, n, 0.0, 1.0, opt.tol);
  return prof;
}

std::vector<double> SGrid::values() const {
  if (count < 2 || !(s_min > 0.0) || !(s_max < 1.0) || !(s_min < s_max))
    throw num::DomainError("invalid s-grid");
  std::vector<double> s;
  const double split = 0.9;
  if (s_max <= split) {
    for (int i = 0; i < count; ++i)
      s.push_back(s_min + (s_max - s_min) * i / (count - 1));
    return s;
  }
  const int n1 = count / 2;
  for (int i = 0; i < n1; ++i)
    s.push_back(s_min + (split - s_min) * i / n1);
  const int n2 = count - n1;
  const double g0 = 1.0 - split, g1 = 1.0 - s_max;
  const double ratio = std::log(g1 / g0);
  for (int i = 0; i < n2; ++i)
    s.push_back(1.0 - g0 * std::exp(ratio * i / (n2 - 1)));
  return s;
}

Branch solve_branch(const nonlin::Nonlinearity& nl, double n,
                    const SGrid& grid, const ProfileOptions& opt,
                    int threads) {
  const std::vector<double> svals = grid.values();
  Branch br;
  br.tag = nl.tag();
  br.n = n;
  br.points.resize(svals.size());

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RadialProfile p = solve_profile(nl, svals[i], n, opt);
      br.points[i] = {p.s, p.lambda, p.max_u, p.l1_norm,
                      std::numeric_limits<double>::quiet_NaN()};
    }
  };
  const int nt = std::clamp(threads, 1, int(svals.size()));
  if (nt <= 1) {
    work(0, svals.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (svals.size() + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(svals.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::size_t imax = 0;
  for (std::size_t i = 1; i < br.points.size(); ++i)
    if (br.points[i].lambda > br.points[imax].lambda) imax = i;
  br.lambda_star = br.points[imax].lambda;
  br.s_star = br.points[imax].s;
  // require a genuine drop past the maximum, not just tail roundoff
  br.has_interior_fold =
      imax > 0 && imax + 1 < br.points.size() &&
      br.points.back().lambda < br.lambda_star * (1.0 - 1e-6);
  if (br.has_interior_fold) {
    FoldResult fr = refine_fold(nl, n, br.points[imax - 1].s,
                                br.points[imax + 1].s, 1e-7, opt);
    br.lambda_star = std::max(br.lambda_star, fr.lambda_star);
    br.s_star = fr.s_star;
  } else if (imax + 1 < br.points.size()) {
    // flat-to-the-end branch: report the endpoint as the extremal abscissa
    br.s_star = br.points.back().s;
    br.lambda_star = std::max(br.lambda_star, br.points.back().lambda);
  }
  return br;
}

FoldResult refine_fold(const nonlin::Nonlinearity& nl, double n, double s_lo,
                       double s_hi, double s_tol, const ProfileOptions& opt) {
  ProfileOptions fast = opt;
  fast.check_residual = false;
  auto lam = [&](double s) { return solve_profile(nl, s, n, fast).lambda; };
  FoldResult fr;
  fr.s_star = num::golden_max(lam, s_lo, s_hi, s_tol);
  fr.lambda_star = lam(fr.s_star);
  return fr;
}

ExtremalInfo extremal_profile(const nonlin::Nonlinearity& nl, double n,
                              const SGrid& grid, const ProfileOptions& opt,
                              int threads) {
  Branch br = solve_branch(nl, n, grid, opt, threads);
  ExtremalInfo info;
  info.lambda_star = br.lambda_star;
  info.s_star = br.s_star;
  info.interior_fold = br.has_interior_fold;
  // on the stable part of the branch max u increases with s, so the sweep's
  // extremal point tells whether the singularity is approached
  info.singular = nl.is_singular() && (1.0 - br.s_star) <= kSingularMargin;
  info.profile = solve_profile(nl, br.s_star, n, opt);
  return info;
}

double explicit_coefficient(double p, double n) {
  if (!(p > 0.0)) throw num::DomainError("explicit profile requires p > 0");
  if (!(n >= 1.0)) throw num::DomainError("dimension must be >= 1");
  const double alpha = 2.0 / (1.0 + p);
  return alpha * (alpha + n - 2.0);
}

RadialProfile explicit_profile(double p, double n) {
  const double alpha = 2.0 / (1.0 + p);
  const double c = explicit_coefficient(p, n);
  if (!(c > 0.0))
    throw SolverError("explicit profile degenerate: c(p, n) <= 0");

  RadialProfile prof;
  prof.s = 1.0;
  prof.n = n;
  prof.lambda = 1.0;
  prof.R = 1.0;
  prof.max_u = 1.0;
  prof.exact_u = [alpha](double r) { return 1.0 - std::pow(r, alpha); };
  prof.exact_du = [alpha](double r) {
    return -alpha * std::pow(r, alpha - 1.0);
  };
  prof.l1_norm = num::sphere_area(n) * alpha / (n * (alpha + n));

  // residual of -Delta u = c (1-u)^-p from the closed forms
  double worst = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double r = std::pow(10.0, -6.0 + 6.0 * i / 200.0);
    const double lhs = (alpha * (alpha - 1.0) + (n - 1.0) * alpha) *
                       std::pow(r, alpha - 2.0);
    const double rhs = c * std::pow(std::pow(r, alpha), -p);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  prof.residual = worst;

  const int m = 400;
  for (int i = 0; i <= m; ++i) {
    const double r = std::pow(double(i) / m, 2.0);
    prof.u.x.push_back(r);
    prof.u.y.push_back(prof.exact_u(r));
    prof.u.dy.push_back(r > 0.0 ? prof.exact_du(r) : 0.0);
  }
  if (alpha < 1.0) prof.u.dy[0] = prof.u.dy[1];
  return prof;
}

}  // namespace memslab::radial
