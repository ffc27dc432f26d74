#include "memslab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace memslab::est {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_u(double u) { return std::clamp(u, 0.0, 1.0 - 1e-14); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

void check_samples(const std::vector<Sample>& samples) {
  for (const auto& s : samples)
    if (!std::isfinite(s.ratio) || s.ratio < 0.0)
      throw num::NumericalError("estimate ratio not finite and nonnegative",
                                s.ratio);
}

EstimateReport make_report(const StableBranch& sb, std::string tag,
                           std::vector<Sample> samples) {
  check_samples(samples);
  EstimateReport rep;
  rep.tag = std::move(tag);
  rep.family = sb.nl.tag();
  rep.n = sb.n;
  rep.samples = std::move(samples);
  for (const auto& s : rep.samples) rep.max_ratio = std::max(rep.max_ratio, s.ratio);
  rep.verdict = verdict_from_samples(rep.samples);
  return rep;
}

// per-point ratio helper over the stable profiles
template <typename Fn>
std::vector<Sample> sweep(const StableBranch& sb, Fn&& ratio_of) {
  std::vector<Sample> out;
  out.reserve(sb.profiles.size());
  for (const auto& p : sb.profiles) out.push_back({p.s, ratio_of(p)});
  return out;
}

// ((2+beta) 2n/(n-2)) for n >= 3, config value otherwise
double pbar_for(double n, double beta, const LpParams& par) {
  if (n >= 3.0) return (2.0 + beta) * 2.0 * n / (n - 2.0);
  return par.pbar_low_dim;
}

struct LpSetup {
  double theta = 0.0, beta = 0.0, pbar = 0.0;
};

LpSetup lp_setup(const StableBranch& sb, const LpParams& par) {
  LpSetup set;
  if (par.theta) {
    set.theta = *par.theta;
  } else {
    const auto cert = nonlin::certify(sb.nl);
    if (!cert.cr_condition_holds)
      throw num::DomainError("Lp estimate needs a nonlinearity with gamma > 1");
    set.theta = cert.theta;
  }
  const double beta_max = std::sqrt(1.0 + set.theta) - 1.0;
  set.beta = par.beta ? *par.beta : 0.9 * beta_max;
  if (!(set.beta > 0.0) || !(set.beta < beta_max))
    throw num::DomainError("beta must lie in the open interval (0, sqrt(1+theta)-1)");
  set.pbar = pbar_for(sb.n, set.beta, par);
  return set;
}

// first derivative at xs[2] of the degree-4 interpolant through five
// (x, y) samples; used to differentiate chain-rule-exact node data
double lagrange5_deriv(const double* xs, const double* ys) {
  const double x = xs[2];
  double d = 0.0;
  for (int j = 0; j < 5; ++j) {
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
      if (k == j) continue;
      double term = 1.0;
      for (int l = 0; l < 5; ++l) {
        if (l == j || l == k) continue;
        term *= (x - xs[l]) / (xs[j] - xs[l]);
      }
      s += term / (xs[j] - xs[k]);
    }
    d += ys[j] * s;
  }
  return d;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::bounded:
      return "bounded";
    case Verdict::growing:
      return "growing";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

Verdict verdict_from_samples(const std::vector<Sample>& samples,
                             const VerdictOptions& opt) {
  if (samples.empty()) return Verdict::indeterminate;
  check_samples(samples);

  // group by decade of 1-s, keyed so that increasing key approaches s = 1
  std::map<int, std::vector<double>> decades;
  for (const auto& s : samples) {
    const double gap = 1.0 - s.s;
    if (!(gap > 0.0)) continue;
    decades[int(std::floor(-std::log10(gap)))].push_back(s.ratio);
  }
  if (decades.empty()) return Verdict::indeterminate;

  if (int(decades.size()) >= opt.min_decades) {
    std::vector<double> med;
    for (const auto& [k, v] : decades) med.push_back(median(v));
    bool grow = true;
    for (std::size_t i = med.size() - opt.min_decades + 1; i < med.size(); ++i)
      if (!(med[i] >= opt.growth_factor * med[i - 1]) || !(med[i - 1] > 0.0))
        grow = false;
    if (grow) return Verdict::growing;
  }

  // tail spread: the last decade when several exist; a fold-limited branch
  // lives in one decade of 1-s, so use the trailing quarter in s instead
  std::vector<double> last = decades.rbegin()->second;
  if (decades.size() == 1) {
    std::vector<Sample> by_s = samples;
    std::sort(by_s.begin(), by_s.end(),
              [](const Sample& a, const Sample& b) { return a.s < b.s; });
    const std::size_t keep = std::max<std::size_t>(3, by_s.size() / 4);
    last.clear();
    for (std::size_t i = by_s.size() - std::min(keep, by_s.size());
         i < by_s.size(); ++i)
      last.push_back(by_s[i].ratio);
  }
  const double hi = *std::max_element(last.begin(), last.end());
  const double lo = *std::min_element(last.begin(), last.end());
  if (hi <= 0.0) return Verdict::bounded;  // identically zero tail
  if (lo > 0.0 && hi / lo <= opt.bounded_factor) return Verdict::bounded;
  return Verdict::indeterminate;
}

StableBranch stable_branch(const nonlin::Nonlinearity& nl, double n,
                           const radial::SGrid& grid,
                           const radial::ProfileOptions& opt, int threads) {
  StableBranch sb{nl, n, radial::solve_branch(nl, n, grid, opt, threads), {}};
  radial::ProfileOptions fast = opt;
  fast.check_residual = false;
  for (const auto& pt : sb.branch.points) {
    if (sb.branch.has_interior_fold && pt.s > sb.branch.s_star) continue;
    sb.profiles.push_back(radial::solve_profile(nl, pt.s, n, fast));
  }
  return sb;
}

EstimateReport verify_interior_linf(const StableBranch& sb) {
  auto samples = sweep(sb, [&](const radial::RadialProfile& p) {
    // max over B_{1/2} of the decreasing radial profile is the center value
    return p.lambda * sb.nl.F(p.s) / (p.l1_norm * p.l1_norm);
  });
  auto rep = make_report(sb, "interior-linf", std::move(samples));
  return rep;
}

EstimateReport verify_global_linf(const StableBranch& sb) {
  std::vector<Sample> samples;
  double sup = 0.0;
  for (const auto& p : sb.profiles) {
    samples.push_back({p.s, p.max_u});
    sup = std::max(sup, p.max_u);
  }
  auto rep = make_report(sb, "global-linf", std::move(samples));
  rep.params["sup_max_u"] = sup;
  rep.params["margin"] = 1.0 - sup;
  rep.verdict = (1.0 - sup < 1e-3) ? Verdict::growing : Verdict::bounded;
  return rep;
}

EstimateReport verify_interior_lp(const StableBranch& sb,
                                  const LpParams& par) {
  const LpSetup set = lp_setup(sb, par);
  const num::Tolerance tol;
  auto samples = sweep(sb, [&](const radial::RadialProfile& p) {
    auto gpow = [&](double r) {
      return std::pow(p.lambda * sb.nl.f(clamp_u(p.value(r))), set.pbar);
    };
    const double norm = std::pow(
        num::radial_integral(gpow, sb.n, 0.0, 0.5, tol), 1.0 / set.pbar);
    return norm / p.l1_norm;
  });
  auto rep = make_report(sb, "interior-lp", std::move(samples));
  rep.params = {{"theta", set.theta}, {"beta", set.beta}, {"pbar", set.pbar}};
  return rep;
}

EstimateReport verify_global_lp(const StableBranch& sb, const LpParams& par) {
  if (!sb.nl.is_convex())
    throw num::DomainError("global Lp estimate requires a convex nonlinearity");
  const LpSetup set = lp_setup(sb, par);
  const num::Tolerance tol;
  auto samples = sweep(sb, [&](const radial::RadialProfile& p) {
    auto gpow = [&](double r) {
      return std::pow(p.lambda * sb.nl.f(clamp_u(p.value(r))), set.pbar);
    };
    auto gg = [&](double r) {
      const double u = clamp_u(p.value(r));
      return p.lambda * p.lambda * sb.nl.fp(u) * sb.nl.f(u);
    };
    const double norm = std::pow(
        num::radial_integral(gpow, sb.n, 0.0, 1.0, tol), 1.0 / set.pbar);
    const double denom = p.lambda * sb.nl.f(0.0) +
                         num::radial_integral(gg, sb.n, 0.0, 1.0, tol);
    return norm / denom;
  });
  auto rep = make_report(sb, "global-lp", std::move(samples));
  rep.params = {{"theta", set.theta}, {"beta", set.beta}, {"pbar", set.pbar}};
  return rep;
}

EstimateReport verify_w12(const StableBranch& sb) {
  const num::Tolerance tol;
  auto samples = sweep(sb, [&](const radial::RadialProfile& p) {
    auto dens = [&](double r) {
      const double u = clamp_u(p.value(r));
      const double g = p.lambda * sb.nl.f(u);
      const double dg = p.lambda * sb.nl.fp(u) * p.deriv(r);
      return g * g + dg * dg;
    };
    const double norm =
        std::sqrt(num::radial_integral(dens, sb.n, 0.0, 0.5, tol));
    auto uval = [&](double r) { return p.value(r); };
    const double l1_34 = num::radial_integral(uval, sb.n, 0.0, 0.75, tol);
    return norm / l1_34;
  });
  return make_report(sb, "w12", std::move(samples));
}

EstimateReport verify_morrey(const StableBranch& sb) {
  if (!(sb.n >= 3.0))
    throw num::DomainError("Morrey estimate requires n >= 3");
  const num::Tolerance tol;
  auto samples = sweep(sb, [&](const radial::RadialProfile& p) {
    // weight |x|^{2-n} times the r^{n-1} measure reduces to r dr
    auto dens = [&](double r) {
      const double u = clamp_u(p.value(r));
      const double g = p.lambda * sb.nl.f(u);
      const double dg = p.lambda * sb.nl.fp(u) * p.deriv(r);
      return g * g + r * r * dg * dg;
    };
    const double numer =
        num::sphere_area(sb.n) *
        num::quad_adaptive([&](double r) { return dens(r) * r; }, 0.0,
                           3.0 / 16.0, tol)
            .value;
    auto uval = [&](double r) { return p.value(r); };
    const double l1_34 = num::radial_integral(uval, sb.n, 0.0, 0.75, tol);
    return numer / (l1_34 * l1_34);
  });
  return make_report(sb, "morrey", std::move(samples));
}

EstimateReport verify_nedev_yezhou(const StableBranch& sb) {
  if (!sb.nl.is_convex())
    throw num::DomainError("integral bound requires a convex nonlinearity");
  const num::Tolerance tol;
  auto samples = sweep(sb, [&](const radial::RadialProfile& p) {
    auto gg = [&](double r) {
      const double u = clamp_u(p.value(r));
      return p.lambda * p.lambda * sb.nl.fp(u) * sb.nl.f(u);
    };
    return num::radial_integral(gg, sb.n, 0.0, 1.0, tol);
  });
  return make_report(sb, "nedev-yezhou", std::move(samples));
}

double verify_hardy(double n, double a, const spectral::TestFunction& phi,
                    const num::Tolerance& tol) {
  if (!(a > -n)) throw num::DomainError("Hardy weight requires a > -n");
  const double coef = 0.25 * (n + a - 2.0) * (n + a - 2.0);
  auto dsq = [&](double r) {
    const double d = phi.deriv(r);
    return d * d;
  };
  const double rhs = num::radial_integral(dsq, n, a, 1.0, tol);
  if (coef == 0.0) return 0.0;
  if (!(a - 2.0 > -n))
    throw num::DomainError("Hardy left weight not integrable for this (n, a)");
  auto vsq = [&](double r) {
    const double v = phi.value(r);
    return v * v;
  };
  const double lhs = coef * num::radial_integral(vsq, n, a - 2.0, 1.0, tol);
  return lhs / rhs;
}

StabilityLemmaResult verify_stability_lemma(const StableBranch& sb,
                                            std::size_t point_idx,
                                            const spectral::TestFunction& eta,
                                            std::optional<double> theta,
                                            const num::Tolerance& tol) {
  if (point_idx >= sb.profiles.size())
    throw num::DomainError("branch point index out of range");
  if (std::abs(eta.value(1.0)) > 1e-12)
    throw num::DomainError("test function must vanish at the boundary");
  const radial::RadialProfile& p = sb.profiles[point_idx];

  StabilityLemmaResult res;
  if (theta) {
    res.theta = *theta;
  } else {
    const auto cert = nonlin::certify(sb.nl);
    if (!cert.cr_condition_holds)
      throw num::DomainError("stability lemma needs gamma > 1");
    res.theta = cert.theta;
  }
  const nonlin::KResult kf = nonlin::find_K(sb.nl, res.theta);
  if (kf.unbounded)
    throw num::DomainError("no finite K exists for this theta");
  res.K = p.lambda * p.lambda * kf.K;  // K rescales with g = lambda f

  auto lhs_dens = [&](double r) {
    const double u = clamp_u(p.value(r));
    const double dg = p.lambda * sb.nl.fp(u) * p.deriv(r);
    const double e = eta.value(r);
    return dg * dg * e * e;
  };
  auto gsq_deta = [&](double r) {
    const double u = clamp_u(p.value(r));
    const double g = p.lambda * sb.nl.f(u);
    const double de = eta.deriv(r);
    return g * g * de * de;
  };
  auto grad_eta2 = [&](double r) {
    const double du = p.deriv(r);
    const double e = eta.value(r);
    return du * du * e * e;
  };
  auto precursor_dens = [&](double r) {
    const double u = clamp_u(p.value(r));
    const double du = p.deriv(r);
    const double e = eta.value(r);
    return p.lambda * p.lambda * sb.nl.fpp(u) * sb.nl.f(u) * du * du * e * e;
  };

  const double n = sb.n;
  const double lhs =
      (1.0 + res.theta) * num::radial_integral(lhs_dens, n, 0.0, 1.0, tol);
  const double t1 = num::radial_integral(gsq_deta, n, 0.0, 1.0, tol);
  const double t2 = res.K * num::radial_integral(grad_eta2, n, 0.0, 1.0, tol);
  res.ratio = lhs / (t1 + t2);
  res.precursor_ratio =
      num::radial_integral(precursor_dens, n, 0.0, 1.0, tol) / t1;
  return res;
}

double verify_l1_laplacian_control(const StableBranch& sb,
                                   std::size_t point_idx,
                                   const num::Tolerance& tol) {
  if (point_idx >= sb.profiles.size())
    throw num::DomainError("branch point index out of range");
  const radial::RadialProfile& p = sb.profiles[point_idx];
  const auto cutoff = spectral::TestFunction::smoothstep_cutoff(0.75, 1.0);

  // max |Delta cutoff| on the transition shell, second derivative by a
  // central difference of the closed-form first derivative
  double max_lap = 0.0;
  const double h = 1e-6;
  for (int i = 0; i <= 2000; ++i) {
    const double r = 0.75 + 0.25 * i / 2000.0;
    const double d2 = (cutoff.deriv(std::min(r + h, 1.0)) -
                       cutoff.deriv(std::max(r - h, 0.75))) /
                      (std::min(r + h, 1.0) - std::max(r - h, 0.75));
    const double lap = d2 + (sb.n - 1.0) / r * cutoff.deriv(r);
    max_lap = std::max(max_lap, std::abs(lap));
  }

  auto g = [&](double r) {
    return p.lambda * sb.nl.f(clamp_u(p.value(r)));
  };
  const double numer = num::radial_integral(g, sb.n, 0.0, 0.75, tol);
  return numer / (max_lap * p.l1_norm);
}

SubsolutionDefects check_subsolution_identities(
    const nonlin::Nonlinearity& nl, const radial::RadialProfile& prof) {
  const double lam = prof.lambda;
  const double n = prof.n;
  const auto& r = prof.u.x;
  const auto& uv = prof.u.y;
  const auto& du = prof.u.dy;
  if (r.size() < 7 || du.size() != r.size())
    throw num::DomainError("profile grid too coarse for the identity check");

  SubsolutionDefects def;
  std::vector<double> psi1(r.size()), psi2(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double u = clamp_u(uv[i]);
    psi1[i] = lam * nl.f(u) * du[i];        // d/dr of G(u), G = lambda F
    psi2[i] = lam * nl.fp(u) * du[i];       // d/dr of g(u)
  }

  for (std::size_t i = 2; i + 2 < r.size(); ++i) {
    if (r[i] < 0.05 || r[i] > 0.95) continue;  // away from the endpoints
    const double u = clamp_u(uv[i]);
    const double up2 = du[i] * du[i];
    const double g = lam * nl.f(u);
    const double gp = lam * nl.fp(u);
    const double gpp = lam * nl.fpp(u);

    // normalize by the term magnitudes: the two sides cross zero at the
    // balance radius, where a ratio against the sum would be meaningless
    const double dd1 = lagrange5_deriv(&r[i - 2], &psi1[i - 2]);
    const double lhs1 = -(dd1 + (n - 1.0) / r[i] * psi1[i]);
    const double rhs1 = -gp * up2 + g * g;
    const double scale1 = std::max({std::abs(gp * up2), g * g, 1e-10});
    def.primitive_identity =
        std::max(def.primitive_identity, std::abs(lhs1 - rhs1) / scale1);

    const double dd2 = lagrange5_deriv(&r[i - 2], &psi2[i - 2]);
    const double lhs2 = -(dd2 + (n - 1.0) / r[i] * psi2[i]);
    const double rhs2 = -gpp * up2 + gp * g;
    const double scale2 =
        std::max({std::abs(gpp * up2), std::abs(gp * g), 1e-10});
    def.nonlinearity_identity =
        std::max(def.nonlinearity_identity, std::abs(lhs2 - rhs2) / scale2);
  }
  return def;
}

double extended_range_bound(double gamma_lo) {
  if (!(gamma_lo >= 0.0))
    throw num::DomainError("bound requires a nonnegative gamma estimate");
  return 4.0 + 2.0 * std::sqrt(gamma_lo);
}

}  // namespace memslab::est
