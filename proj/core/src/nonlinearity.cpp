#include "memslab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace memslab::nonlin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Log-derivatives of the oscillating exponent in the variable s = -log(1-t).
// Everything is expressed through w = log(1+s) so the same formulas serve both
// moderate s (w from s) and the deep tail (w from the phase variable tau,
// where s itself would overflow). With tau = eps log(1+w):
//   s tau'  =  eps (1-e^-w) / (1+w)
//     tau'  =  eps e^-w / (1+w)
//   s tau'' = -eps (2+w) (1-e^-w) e^-w / (1+w)^2
struct LogDerivs {
  double h = 0.0;    // htilde(s) = A sin tau + B
  double L1 = 0.0;   // d/ds [s htilde(s)]
  double L2 = 0.0;   // d^2/ds^2 [s htilde(s)]
};

LogDerivs castorina_logderivs_w(double w, double a, double b, double eps) {
  const double A = 0.5 * (b - a), B = 0.5 * (b + a);
  const double tau = eps * std::log1p(w);
  const double st = std::sin(tau), ct = std::cos(tau);
  const double emw = std::exp(-w);
  const double u1 = -std::expm1(-w);  // s/(1+s)
  const double P = 1.0 + w;
  const double s_tau1 = eps * u1 / P;
  const double tau1 = eps * emw / P;
  const double s_tau2 = -eps * (2.0 + w) * u1 * emw / (P * P);
  LogDerivs d;
  d.h = A * st + B;
  const double s_h1 = A * ct * s_tau1;
  const double h1 = A * ct * tau1;
  const double s_h2 = -A * st * s_tau1 * tau1 + A * ct * s_tau2;
  d.L1 = d.h + s_h1;
  d.L2 = 2.0 * h1 + s_h2;
  return d;
}

LogDerivs castorina_logderivs_t(double t, double a, double b, double eps) {
  const double s = -std::log1p(-t);
  return castorina_logderivs_w(std::log1p(s), a, b, eps);
}

double s_of_tau(double tau, double eps) {
  const double e = tau / eps;
  if (e > 700.0) return kInf;
  const double w = std::expm1(e);
  if (w > 700.0) return kInf;
  return std::expm1(w);
}

double tau_of_s(double s, double eps) {
  return eps * std::log1p(std::log1p(s));
}

std::string fmt_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

Nonlinearity Nonlinearity::power(double p) {
  if (!(p > 0.0)) throw num::DomainError("power exponent must be positive");
  Nonlinearity nl;
  nl.family_ = Family::power;
  nl.p_ = p;
  nl.c_ = 1.0;
  return nl;
}

Nonlinearity Nonlinearity::exponential() {
  Nonlinearity nl;
  nl.family_ = Family::exponential;
  return nl;
}

Nonlinearity Nonlinearity::mems() {
  Nonlinearity nl;
  nl.family_ = Family::mems;
  nl.p_ = 2.0;
  nl.c_ = 1.0;
  return nl;
}

Nonlinearity Nonlinearity::scaled_power(double p, double c) {
  if (!(p > 0.0)) throw num::DomainError("power exponent must be positive");
  if (!(c > 0.0)) throw num::DomainError("scale must be positive");
  Nonlinearity nl;
  nl.family_ = Family::scaled_power;
  nl.p_ = p;
  nl.c_ = c;
  return nl;
}

Nonlinearity Nonlinearity::constant(double c) {
  if (!(c > 0.0)) throw num::DomainError("constant value must be positive");
  Nonlinearity nl;
  nl.family_ = Family::constant;
  nl.c_ = c;
  return nl;
}

Nonlinearity Nonlinearity::castorina(double a, double b, double eps) {
  if (!(a > 0.0) || !(b >= a))
    throw num::DomainError("oscillation band requires 0 < a <= b");
  if (!(eps > 0.0)) throw num::DomainError("phase rate must be positive");
  Nonlinearity nl;
  nl.family_ = Family::castorina;
  nl.a_ = a;
  nl.b_ = b;
  nl.eps_ = eps;
  return nl;
}

Nonlinearity Nonlinearity::custom_table(std::vector<double> t,
                                        std::vector<double> f) {
  if (t.size() != f.size() || t.size() < 2)
    throw num::DomainError("table needs at least two (t, f) rows");
  std::vector<double> logf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0)) throw num::DomainError("table values must be positive");
    if (t[i] < 0.0 || t[i] >= 1.0)
      throw num::DomainError("table abscissae must lie in [0, 1)");
    logf[i] = std::log(f[i]);
  }
  Nonlinearity nl;
  nl.family_ = Family::custom_table;
  nl.table_ = num::CubicInterpolant(std::move(t), std::move(logf));
  return nl;
}

Nonlinearity Nonlinearity::custom_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw num::DomainError("cannot open table file: " + path);
  std::vector<double> t, f;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double tv, fv;
    if (row >> tv >> fv) {
      t.push_back(tv);
      f.push_back(fv);
    } else if (!t.empty()) {
      throw num::DomainError("malformed table row: " + line);
    }
    // a non-numeric first row is treated as a header and skipped
  }
  return custom_table(std::move(t), std::move(f));
}

std::string Nonlinearity::tag() const {
  switch (family_) {
    case Family::power:
      return "power(p=" + fmt_num(p_) + ")";
    case Family::exponential:
      return "exponential";
    case Family::mems:
      return "mems";
    case Family::scaled_power:
      return "scaled_power(p=" + fmt_num(p_) + ",c=" + fmt_num(c_) + ")";
    case Family::constant:
      return "constant(c=" + fmt_num(c_) + ")";
    case Family::castorina:
      return "castorina(a=" + fmt_num(a_) + ",b=" + fmt_num(b_) +
             ",eps=" + fmt_num(eps_) + ")";
    case Family::custom_table:
      return "custom_table";
  }
  return "unknown";
}

bool Nonlinearity::is_singular() const {
  switch (family_) {
    case Family::constant:
    case Family::custom_table:
      return false;
    default:
      return true;
  }
}

bool Nonlinearity::is_nonintegrable() const {
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return p_ >= 1.0;
    case Family::exponential:
      return true;
    case Family::castorina:
      return b_ >= 1.0;
    default:
      return false;
  }
}

bool Nonlinearity::is_convex() const {
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
    case Family::exponential:
    case Family::constant:
      return true;
    default: {
      // no closed form: sample the second derivative
      for (int i = 0; i <= 400; ++i) {
        double t = (1.0 - 1e-6) * i / 400.0;
        double v = fpp(t);
        if (std::isfinite(v) && v < -1e-12 * std::max(1.0, f(t))) return false;
      }
      return true;
    }
  }
}

void Nonlinearity::require_domain(double t) const {
  if (!(t >= 0.0) || !(t < 1.0))
    throw num::DomainError("argument outside [0, 1): t = " + fmt_num(t));
}

// ---------------------------------------------------------------------------
// Pointwise evaluation
// ---------------------------------------------------------------------------

double Nonlinearity::f(double t) const {
  require_domain(t);
  const double x = 1.0 - t;
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return c_ * std::pow(x, -p_);
    case Family::exponential:
      return std::exp(1.0 / x);
    case Family::constant:
      return c_;
    case Family::castorina: {
      const double s = -std::log1p(-t);
      const LogDerivs d = castorina_logderivs_t(t, a_, b_, eps_);
      return std::exp(s * d.h);
    }
    case Family::custom_table: {
      const double tc = std::clamp(t, table_.x_min(), table_.x_max());
      return std::exp(table_.value(tc));
    }
  }
  return 0.0;
}

double Nonlinearity::fp(double t) const {
  require_domain(t);
  const double x = 1.0 - t;
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return c_ * p_ * std::pow(x, -p_ - 1.0);
    case Family::exponential:
      return std::exp(1.0 / x) / (x * x);
    case Family::constant:
      return 0.0;
    case Family::castorina: {
      const double s = -std::log1p(-t);
      const LogDerivs d = castorina_logderivs_t(t, a_, b_, eps_);
      return std::exp(s * d.h + s) * d.L1;
    }
    case Family::custom_table: {
      const double tc = std::clamp(t, table_.x_min(), table_.x_max());
      if (t < table_.x_min() || t > table_.x_max()) return 0.0;
      return std::exp(table_.value(tc)) * table_.derivative(tc);
    }
  }
  return 0.0;
}

double Nonlinearity::fpp(double t) const {
  require_domain(t);
  const double x = 1.0 - t;
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return c_ * p_ * (p_ + 1.0) * std::pow(x, -p_ - 2.0);
    case Family::exponential: {
      const double ex = std::exp(1.0 / x);
      return ex * (1.0 + 2.0 * x) / (x * x * x * x);
    }
    case Family::constant:
      return 0.0;
    case Family::castorina: {
      const double s = -std::log1p(-t);
      const LogDerivs d = castorina_logderivs_t(t, a_, b_, eps_);
      return std::exp(s * d.h + 2.0 * s) * (d.L1 * d.L1 + d.L2 + d.L1);
    }
    case Family::custom_table: {
      const double tc = std::clamp(t, table_.x_min(), table_.x_max());
      if (t < table_.x_min() || t > table_.x_max()) return 0.0;
      const double v1 = table_.derivative(tc);
      const double v2 = table_.second_derivative(tc);
      return std::exp(table_.value(tc)) * (v2 + v1 * v1);
    }
  }
  return 0.0;
}

double Nonlinearity::F(double t) const {
  require_domain(t);
  if (t == 0.0) return 0.0;
  const double x = 1.0 - t;
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      if (p_ == 1.0) return -c_ * std::log1p(-t);
      return c_ * (std::pow(x, 1.0 - p_) - 1.0) / (p_ - 1.0);
    case Family::exponential: {
      // substitute sigma = 1/(1-tau)
      const double hi = 1.0 / x;
      if (hi > 700.0) return kInf;
      return num::quad_adaptive(
                 [](double s) { return std::exp(s) / (s * s); }, 1.0, hi,
                 quad_tol_)
          .value;
    }
    case Family::constant:
      return c_ * t;
    case Family::castorina: {
      // substitute tau = 1 - e^{-s}
      const double s_hi = -std::log1p(-t);
      auto g = [this](double s) {
        const LogDerivs d = castorina_logderivs_w(std::log1p(s), a_, b_, eps_);
        return std::exp(s * (d.h - 1.0));
      };
      return num::quad_adaptive(g, 0.0, s_hi, quad_tol_).value;
    }
    case Family::custom_table: {
      auto g = [this](double tau) {
        const double tc = std::clamp(tau, table_.x_min(), table_.x_max());
        return std::exp(table_.value(tc));
      };
      return num::quad_adaptive(g, 0.0, t, quad_tol_).value;
    }
  }
  return 0.0;
}

EvalResult Nonlinearity::eval(double t) const {
  return EvalResult{f(t), fp(t), fpp(t), F(t)};
}

// ---------------------------------------------------------------------------
// Growth quotients (overflow-safe closed forms)
// ---------------------------------------------------------------------------

double Nonlinearity::cr_quotient(double t) const {
  require_domain(t);
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return 1.0 + 1.0 / p_;
    case Family::exponential:
      return 1.0 + 2.0 * (1.0 - t);
    case Family::constant:
      throw num::DomainError("quotient undefined: f' vanishes");
    case Family::castorina: {
      const LogDerivs d = castorina_logderivs_t(t, a_, b_, eps_);
      return 1.0 + (d.L2 + d.L1) / (d.L1 * d.L1);
    }
    case Family::custom_table: {
      const double fpv = fp(t);
      if (fpv == 0.0)
        throw num::DomainError("quotient undefined: f' vanishes");
      return f(t) * fpp(t) / (fpv * fpv);
    }
  }
  return 0.0;
}

double Nonlinearity::q_quotient(double t) const {
  require_domain(t);
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return p_;
    case Family::exponential:
      return 1.0 / (1.0 - t);
    case Family::constant:
      return 0.0;
    case Family::castorina:
      return castorina_logderivs_t(t, a_, b_, eps_).L1;
    case Family::custom_table:
      return fp(t) * (1.0 - t) / f(t);
  }
  return 0.0;
}

double Nonlinearity::m_quotient(double t) const {
  require_domain(t);
  if (t == 0.0)
    throw num::DomainError("growth exponent undefined at t = 0");
  const double L = -std::log1p(-t);  // log(1/(1-t))
  switch (family_) {
    case Family::power:
    case Family::mems:
    case Family::scaled_power:
      return p_ + std::log(c_) / L;
    case Family::exponential:
      return 1.0 / ((1.0 - t) * L);
    case Family::constant:
      return std::log(c_) / L;
    case Family::castorina:
      return castorina_logderivs_t(t, a_, b_, eps_).h;
    case Family::custom_table:
      return std::log(f(t)) / L;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Tail limit surrogates
// ---------------------------------------------------------------------------

namespace {

double quotient_at(const Nonlinearity& nl, Quotient q, double t) {
  switch (q) {
    case Quotient::gamma:
      return nl.cr_quotient(t);
    case Quotient::q:
      return nl.q_quotient(t);
    case Quotient::m:
      return nl.m_quotient(t);
  }
  return 0.0;
}

// Quotient evaluated directly at phase depth w (oscillating family only);
// never forms s, so arbitrarily deep tails are reachable.
double quotient_at_w(const Nonlinearity& nl, Quotient q, double w) {
  const LogDerivs d =
      castorina_logderivs_w(w, nl.param_a(), nl.param_b(), nl.param_eps());
  switch (q) {
    case Quotient::gamma:
      return 1.0 + (d.L2 + d.L1) / (d.L1 * d.L1);
    case Quotient::q:
      return d.L1;
    case Quotient::m:
      return d.h;
  }
  return 0.0;
}

}  // namespace

std::pair<double, double> estimate_limits(const Nonlinearity& nl, Quotient q,
                                          const TailGrid& grid) {
  if (!(grid.start > grid.floor) || !(grid.floor > 0.0) || grid.points < 2)
    throw num::DomainError("invalid tail grid");
  double lo = kInf, hi = -kInf;
  auto absorb = [&](double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  const double ratio = std::log(grid.floor / grid.start);
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.start * std::exp(ratio * i / (grid.points - 1));
    try {
      absorb(quotient_at(nl, q, 1.0 - x));
    } catch (const num::DomainError&) {
      // skip points where the quotient is undefined
    }
  }
  if (nl.family() == Family::castorina) {
    // sweep whole phase periods at depth >= phase_w_min so the oscillation
    // extremes are sampled regardless of where the t-grid lands
    const double eps = nl.param_eps();
    const double tau0 = eps * std::log1p(grid.phase_w_min);
    const int total = std::max(2, grid.phase_points * grid.phase_periods);
    const double span = 2.0 * kPi * grid.phase_periods;
    for (int j = 0; j < total; ++j) {
      const double tau = tau0 + span * j / (total - 1);
      const double w = std::expm1(tau / eps);
      absorb(quotient_at_w(nl, q, w));
    }
  }
  if (!std::isfinite(lo))
    throw num::DomainError("quotient undefined on the whole tail grid");
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Concavity constants
// ---------------------------------------------------------------------------

namespace {

// Grid for sup searches: uniform on [0, 1-start] plus the geometric tail.
std::vector<double> sup_grid(const TailGrid& grid) {
  std::vector<double> ts;
  const int nu = std::max(grid.points, 64);
  for (int i = 0; i <= nu; ++i)
    ts.push_back((1.0 - grid.start) * i / nu);
  const double ratio = std::log(grid.floor / grid.start);
  for (int i = 1; i < grid.points; ++i)
    ts.push_back(1.0 - grid.start * std::exp(ratio * i / (grid.points - 1)));
  return ts;
}

KResult find_K_impl(const Nonlinearity& nl, double theta, const TailGrid& grid,
                    bool shifted) {
  double gamma_lo = kInf;
  try {
    gamma_lo = estimate_limits(nl, Quotient::gamma, grid).first;
  } catch (const num::DomainError&) {
    // f' == 0 identically: the inequality holds with K = 0
    return {0.0, false};
  }
  if (gamma_lo < 1.0 + theta - 1e-9) return {kInf, true};

  const double f0 = shifted ? nl.f(0.0) : 0.0;
  auto defect = [&](double t) {
    const double fpv = nl.fp(t);
    double v;
    if (shifted) {
      v = (1.0 + theta) * fpv * fpv - nl.fpp(t) * (nl.f(t) - f0);
    } else {
      // f'^2 (1 + theta - gamma): stays finite long after f'' f overflows
      v = fpv * fpv * (1.0 + theta - nl.cr_quotient(t));
    }
    return std::isfinite(v) ? v : -kInf;
  };

  const std::vector<double> ts = sup_grid(grid);
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double v = defect(ts[i]);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best > 0.0 && best_i > 0 && best_i + 1 < ts.size()) {
    const double tm =
        num::golden_max(defect, ts[best_i - 1], ts[best_i + 1], 1e-12);
    best = std::max(best, defect(tm));
  }
  return {best, false};
}

}  // namespace

KResult find_K(const Nonlinearity& nl, double theta, const TailGrid& grid) {
  return find_K_impl(nl, theta, grid, false);
}

KResult find_K_shifted(const Nonlinearity& nl, double theta,
                       const TailGrid& grid) {
  return find_K_impl(nl, theta, grid, true);
}

std::optional<double> concavity_onset(const Nonlinearity& nl, double theta,
                                      const TailGrid& grid) {
  // (f^-theta)'' <= 0 iff (1+theta) f'^2 - f f'' <= 0, which for f' > 0 is
  // the sign of (1+theta) - gamma(t); the quotient form never overflows
  auto defect = [&](double t) {
    if (nl.fp(t) == 0.0) return -nl.fpp(t);
    return (1.0 + theta) - nl.cr_quotient(t);
  };
  const std::vector<double> ts = sup_grid(grid);
  std::ptrdiff_t last_bad = -1;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (defect(ts[i]) > 1e-12) last_bad = std::ptrdiff_t(i);
  if (last_bad < 0) return 0.0;
  if (std::size_t(last_bad) + 1 >= ts.size()) return std::nullopt;
  const double ta = ts[last_bad], tb = ts[last_bad + 1];
  if (defect(ta) > 0.0 && defect(tb) < 0.0) {
    num::Tolerance rt;
    rt.abs_tol = 1e-14;
    rt.rel_tol = 1e-14;
    return num::root_bracket(defect, ta, tb, rt);
  }
  return tb;
}

CRCertificate certify(const Nonlinearity& nl, std::optional<double> theta,
                      const TailGrid& grid) {
  CRCertificate cert;
  if (nl.family() == Family::constant) {
    cert.theta = theta.value_or(0.0);
    cert.t0 = 0.0;
    return cert;
  }
  std::tie(cert.gamma_lo, cert.gamma_hi) =
      estimate_limits(nl, Quotient::gamma, grid);
  std::tie(cert.q_lo, cert.q_hi) = estimate_limits(nl, Quotient::q, grid);
  std::tie(cert.m_lo, cert.m_hi) = estimate_limits(nl, Quotient::m, grid);
  cert.cr_condition_holds = cert.gamma_lo > 1.0 + 1e-3;
  if (theta) {
    cert.theta = *theta;
  } else if (cert.cr_condition_holds) {
    cert.theta = 0.9 * (cert.gamma_lo - 1.0);
  } else {
    cert.theta = 0.0;
  }
  const KResult k = find_K(nl, cert.theta, grid);
  cert.K = k.K;
  cert.K_unbounded = k.unbounded;
  const KResult ks = find_K_shifted(nl, cert.theta, grid);
  cert.K_tilde = ks.K;
  cert.K_tilde_unbounded = ks.unbounded;
  cert.t0 = concavity_onset(nl, cert.theta, grid);
  return cert;
}

// ---------------------------------------------------------------------------
// Dimension thresholds
// ---------------------------------------------------------------------------

double np_threshold(double p) {
  if (!(p > 0.0)) throw num::DomainError("threshold requires p > 0");
  const double r = p / (1.0 + p);
  return 2.0 + 4.0 * r + 4.0 * std::sqrt(r);
}

double castorina_threshold(double gamma_lo, double m_lo) {
  if (!(gamma_lo > 1.0))
    throw num::DomainError("threshold requires gamma > 1");
  if (!(m_lo >= 1.0)) throw num::DomainError("threshold requires m >= 1");
  const double gap = gamma_lo - 1.0 - 1.0 / m_lo;
  const double neg = std::max(-gap, 0.0);
  return 2.0 / (1.0 + 1.0 / m_lo) *
         (gamma_lo + 2.0 + 2.0 * std::sqrt(gamma_lo) + neg);
}

RelationDefects relation_check(const Nonlinearity& nl, const TailGrid& grid) {
  RelationDefects d;
  d.limits_exist = nl.family() != Family::castorina;
  const double ratio = std::log(grid.floor / grid.start);
  bool any = false;
  for (int i = 0; i < grid.points; ++i) {
    const double t = 1.0 - grid.start * std::exp(ratio * i / (grid.points - 1));
    try {
      const double g = nl.cr_quotient(t);
      const double q = nl.q_quotient(t);
      const double m = nl.m_quotient(t);
      if (q == 0.0) throw num::DomainError("q vanishes");
      if (!std::isfinite(g) || !std::isfinite(q) || !std::isfinite(m)) continue;
      d.gamma_defect = std::max(d.gamma_defect, std::abs(g - (1.0 + 1.0 / q)));
      d.mq_defect = std::max(d.mq_defect, std::abs(m - q));
      any = true;
    } catch (const num::DomainError&) {
      throw num::DomainError("growth relations undefined for " + nl.tag());
    }
  }
  if (!any) throw num::DomainError("growth relations undefined for " + nl.tag());
  return d;
}

// ---------------------------------------------------------------------------
// Oscillation intervals
// ---------------------------------------------------------------------------

OscillationIntervals oscillation_intervals(double a, double b, double eps,
                                           double s_lo, double s_hi) {
  if (!(a > 0.0) || !(b >= a) || !(eps > 0.0))
    throw num::DomainError("oscillation band requires 0 < a <= b, eps > 0");
  if (!(s_lo >= 0.0) || !(s_hi > s_lo))
    throw num::DomainError("oscillation range requires 0 <= s_lo < s_hi");

  OscillationIntervals out;
  if (a == b) {
    if (a >= 1.0) {
      out.regime = OscillationRegime::degenerate_halfline;
      out.s_intervals.emplace_back(s_lo, s_hi);
    } else {
      out.regime = OscillationRegime::integrable_flagged;
    }
    return out;
  }

  const double A = 0.5 * (b - a), B = 0.5 * (b + a);
  const double kappa = (1.0 - B) / A;  // h >= 1 iff sin(tau) >= kappa
  if (kappa >= 1.0) {
    out.regime = OscillationRegime::integrable_flagged;
    return out;
  }

  // per-period tau windows where sin(tau) >= kappa
  double win_lo, win_hi;
  if (kappa <= -1.0) {
    out.regime = OscillationRegime::persistent;
    win_lo = -0.5 * kPi;  // whole period
    win_hi = 1.5 * kPi;
  } else {
    out.regime = OscillationRegime::oscillating;
    win_lo = std::asin(kappa);
    win_hi = kPi - win_lo;
  }

  const double tau_lo = tau_of_s(s_lo, eps);
  const double tau_hi = tau_of_s(s_hi, eps);
  long k0 = long(std::floor((tau_lo - win_hi) / (2.0 * kPi)));
  std::vector<double> raw_lengths;
  for (long k = k0; k < k0 + 10000; ++k) {
    const double wa = win_lo + 2.0 * kPi * k;
    const double wb = win_hi + 2.0 * kPi * k;
    if (wb <= tau_lo) continue;
    if (wa >= tau_hi) break;
    const double sa = s_of_tau(wa, eps);
    const double sb = s_of_tau(wb, eps);
    if (std::isfinite(sa) && std::isfinite(sb)) raw_lengths.push_back(sb - sa);
    const double clo = std::max(sa, s_lo);
    const double chi = std::min(std::isfinite(sb) ? sb : s_hi, s_hi);
    if (chi > clo) out.s_intervals.emplace_back(clo, chi);
    if (!std::isfinite(sb)) break;
  }

  out.lengths_increasing = raw_lengths.size() >= 2;
  for (std::size_t i = 1; i < raw_lengths.size(); ++i)
    if (!(raw_lengths[i] > raw_lengths[i - 1])) out.lengths_increasing = false;
  return out;
}

}  // namespace memslab::nonlin
