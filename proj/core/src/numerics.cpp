#include "memslab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace memslab::num {

// ---------------------------------------------------------------------------
// CubicInterpolant
// ---------------------------------------------------------------------------

namespace {

void check_grid(const std::vector<double>& x, std::size_t ny) {
  if (x.size() < 2) throw DomainError("interpolant needs at least two points");
  if (x.size() != ny) throw DomainError("interpolant size mismatch");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw DomainError("interpolant abscissae must be strictly increasing");
}

// Fritsch-Carlson monotone slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0)
      d = 0.0;
    else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0))
      d = 3.0 * d0;
    return d;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

CubicInterpolant::CubicInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  check_grid(x_, y_.size());
  dy_ = pchip_slopes(x_, y_);
}

CubicInterpolant::CubicInterpolant(std::vector<double> x, std::vector<double> y,
                                   std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
  check_grid(x_, y_.size());
  if (dy_.size() != x_.size()) throw DomainError("derivative size mismatch");
}

std::size_t CubicInterpolant::locate(double xq) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  std::size_t i = (it == x_.begin()) ? 0 : std::size_t(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double CubicInterpolant::value(double xq) const {
  std::size_t i = locate(xq);
  double h = x_[i + 1] - x_[i];
  double t = (xq - x_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2 * t3 - 3 * t2 + 1;
  double h10 = t3 - 2 * t2 + t;
  double h01 = -2 * t3 + 3 * t2;
  double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * dy_[i] + h01 * y_[i + 1] + h11 * h * dy_[i + 1];
}

double CubicInterpolant::derivative(double xq) const {
  std::size_t i = locate(xq);
  double h = x_[i + 1] - x_[i];
  double t = (xq - x_[i]) / h;
  double t2 = t * t;
  double dh00 = (6 * t2 - 6 * t) / h;
  double dh10 = 3 * t2 - 4 * t + 1;
  double dh01 = (-6 * t2 + 6 * t) / h;
  double dh11 = 3 * t2 - 2 * t;
  return dh00 * y_[i] + dh10 * dy_[i] + dh01 * y_[i + 1] + dh11 * dy_[i + 1];
}

double CubicInterpolant::second_derivative(double xq) const {
  std::size_t i = locate(xq);
  double h = x_[i + 1] - x_[i];
  double t = (xq - x_[i]) / h;
  double ddh00 = (12 * t - 6) / (h * h);
  double ddh10 = (6 * t - 4) / h;
  double ddh01 = (-12 * t + 6) / (h * h);
  double ddh11 = (6 * t - 2) / h;
  return ddh00 * y_[i] + ddh10 * dy_[i] + ddh01 * y_[i + 1] + ddh11 * dy_[i + 1];
}

CubicInterpolant GridFunction::interpolant() const {
  if (!dy.empty()) return CubicInterpolant(x, y, dy);
  return CubicInterpolant(x, y);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 4(5) with event detection
// ---------------------------------------------------------------------------

namespace {

// Butcher tableau for the Dormand-Prince RK5(4)7M pair.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
  const OdeRhs& rhs;
  std::size_t dim;
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;

  Stepper(const OdeRhs& f, std::size_t d)
      : rhs(f),
        dim(d),
        k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), k7(d),
        ytmp(d), ynew(d), yerr(d) {}

  // One trial step from (x, y) with size h. k1 must hold rhs(x, y) on entry
  // (FSAL). Returns the scaled error norm; ynew and k7 are filled.
  double step(double x, std::span<const double> y, double h,
              const Tolerance& tol) {
    auto stage = [&](double cs, std::vector<double>& k,
                     std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = y[i];
        for (const auto& [coef, kv] : terms) acc += h * coef * (*kv)[i];
        ytmp[i] = acc;
      }
      rhs(x + cs * h, ytmp, k);
    };
    stage(c2, k2, {{a21, &k1}});
    stage(c3, k3, {{a31, &k1}, {a32, &k2}});
    stage(c4, k4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    stage(c5, k5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    stage(1.0, k6, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    for (std::size_t i = 0; i < dim; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    rhs(x + h, ynew, k7);
    double err = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                     e6 * k6[i] + e7 * k7[i]);
      double sc = tol.abs_tol +
                  tol.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double r = yerr[i] / sc;
      err += r * r;
    }
    return std::sqrt(err / double(dim));
  }
};

}  // namespace

OdeSolution ode_integrate(
    const OdeRhs& rhs, std::vector<double> y0, double x0, double x1,
    const std::vector<OdeEvent>& events, const Tolerance& tol,
    const std::function<double(double, std::span<const double>)>& max_step) {
  const std::size_t dim = y0.size();
  if (dim == 0) throw DomainError("empty initial state");
  const double dir = (x1 >= x0) ? 1.0 : -1.0;

  OdeSolution out;
  out.achieved_tol = tol.rel_tol;
  Stepper st(rhs, dim);

  std::vector<double> y = std::move(y0);
  double x = x0;
  rhs(x, y, st.k1);
  for (double v : st.k1)
    if (!std::isfinite(v))
      throw NumericalError("rhs not finite at initial state", 0.0);

  out.x.push_back(x);
  out.states.push_back(y);

  std::vector<double> evprev(events.size());
  for (std::size_t j = 0; j < events.size(); ++j) evprev[j] = events[j](x, y);

  double h = dir * std::min(std::abs(x1 - x0) / 10.0, 1e-2);
  if (h == 0.0) h = dir * 1e-8;

  int steps = 0;
  while (dir * (x1 - x) > 1e-14 * std::max(1.0, std::abs(x1))) {
    if (++steps > tol.max_steps)
      throw NumericalError("ode_integrate: max steps exceeded", std::abs(h));
    if (dir * (x + h - x1) > 0.0) h = x1 - x;
    if (max_step) {
      double hm = max_step(x, y);
      if (std::abs(h) > hm) h = dir * hm;
    }
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(x)))
      throw NumericalError("ode_integrate: step underflow", std::abs(h));

    double err = st.step(x, y, h, tol);
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
      continue;
    }

    double xnew = x + h;
    // Event check on the accepted step.
    int hit = -1;
    double exloc = xnew;
    std::vector<double> estate;
    for (std::size_t j = 0; j < events.size(); ++j) {
      double evnew = events[j](xnew, st.ynew);
      if (evprev[j] == 0.0) evprev[j] = evnew;  // grazing start
      if (evprev[j] * evnew < 0.0 || evnew == 0.0) {
        // Refine by Brent on g(tau) = event(integrate from (x, y) to tau).
        auto g = [&](double tau) {
          if (tau <= x) return evprev[j];
          if (tau >= xnew) return evnew;
          Tolerance sub = tol;
          sub.max_steps = 10000;
          std::vector<double> ys = y;
          Stepper sst(rhs, dim);
          double xs = x, hs = tau - x;
          rhs(xs, ys, sst.k1);
          while (tau - xs > 1e-15 * std::max(1.0, std::abs(tau))) {
            if (xs + hs > tau) hs = tau - xs;
            double e = sst.step(xs, ys, hs, sub);
            if (std::isfinite(e) && e <= 1.0) {
              xs += hs;
              ys = sst.ynew;
              sst.k1 = sst.k7;
              hs *= std::min(5.0, 0.9 * std::pow(std::max(e, 1e-10), -0.2));
            } else {
              hs *= 0.25;
            }
          }
          return events[j](tau, ys);
        };
        Tolerance rtol = tol;
        double xe = root_bracket(g, x, xnew, rtol);
        if (hit < 0 || dir * (xe - exloc) < 0.0) {
          hit = int(j);
          exloc = xe;
        }
      }
      evprev[j] = evnew;
    }

    if (hit >= 0) {
      // Integrate once more, cleanly, to the event location.
      Tolerance sub = tol;
      std::vector<double> ys = y;
      Stepper sst(rhs, dim);
      double xs = x, hs = (exloc - x) / 4.0;
      rhs(xs, ys, sst.k1);
      while (exloc - xs > 1e-15 * std::max(1.0, std::abs(exloc))) {
        if (xs + hs > exloc) hs = exloc - xs;
        double e = sst.step(xs, ys, hs, sub);
        if (std::isfinite(e) && e <= 1.0) {
          xs += hs;
          ys = sst.ynew;
          sst.k1 = sst.k7;
          hs *= std::min(5.0, 0.9 * std::pow(std::max(e, 1e-10), -0.2));
        } else {
          hs *= 0.25;
        }
      }
      out.x.push_back(exloc);
      out.states.push_back(ys);
      out.events.push_back({hit, exloc, ys});
      out.terminated_by_event = true;
      return out;
    }

    x = xnew;
    y = st.ynew;
    st.k1 = st.k7;  // FSAL
    out.x.push_back(x);
    out.states.push_back(y);
    h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
  }
  return out;
}

GridFunction OdeSolution::component(std::size_t value_idx,
                                    std::size_t deriv_idx) const {
  GridFunction gf;
  gf.x = x;
  gf.y.reserve(x.size());
  gf.dy.reserve(x.size());
  for (const auto& s : states) {
    gf.y.push_back(s[value_idx]);
    gf.dy.push_back(s[deriv_idx]);
  }
  return gf;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace {

// Gauss-Kronrod 7/15 nodes and weights (Fullerton / QUADPACK values).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GK15 {
  double value;
  double error;
};

GK15 gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    double f1 = f(c - x), f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  double value = resk * h;
  double err = std::abs((resk - resg) * h);
  return {value, err};
}

struct QuadCell {
  double a, b, value, error;
};

}  // namespace

QuadResult quad_adaptive(const std::function<double(double)>& g, double a,
                         double b, const Tolerance& tol) {
  if (!(b > a)) {
    if (a == b) return {0.0, 0.0};
    auto r = quad_adaptive(g, b, a, tol);
    return {-r.value, r.error};
  }
  auto safe = [&](double x) {
    double v = g(x);
    return std::isfinite(v) ? v : 0.0;
  };

  auto cmp = [](const QuadCell& l, const QuadCell& r) {
    return l.error < r.error;
  };
  std::vector<QuadCell> heap;
  double total = 0.0, toterr = 0.0;
  auto push = [&](double lo, double hi) {
    auto r = gk15(safe, lo, hi);
    heap.push_back({lo, hi, r.value, r.error});
    std::push_heap(heap.begin(), heap.end(), cmp);
    total += r.value;
    toterr += r.error;
  };
  push(a, b);

  const std::size_t max_cells = 30000;
  while (true) {
    double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
    if (toterr <= target) return {total, toterr};
    if (heap.size() >= max_cells)
      throw NumericalError("quad_adaptive: did not converge", toterr);
    std::pop_heap(heap.begin(), heap.end(), cmp);
    QuadCell w = heap.back();
    heap.pop_back();
    total -= w.value;
    toterr -= w.error;
    double width = w.b - w.a;
    if (width < 1e-15 * std::max(1.0, std::abs(w.a))) {
      // Cannot subdivide further; accept what we have.
      double tot = w.value, te = w.error;
      for (auto& cc : heap) tot += cc.value, te += cc.error;
      double tgt = std::max(tol.abs_tol, tol.rel_tol * std::abs(tot));
      if (te > tgt)
        throw NumericalError("quad_adaptive: did not converge", te);
      return {tot, te};
    }
    // Grade toward original endpoints (ratio 1/4), bisect elsewhere.
    double split;
    if (w.a == a && w.b != b)
      split = w.a + 0.25 * width;
    else if (w.b == b && w.a != a)
      split = w.b - 0.25 * width;
    else
      split = w.a + 0.5 * width;
    push(w.a, split);
    push(split, w.b);
  }
}

double sphere_area(double n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double radial_integral(const std::function<double(double)>& h, double n,
                       double a, double rho, const Tolerance& tol) {
  if (!(a + n - 1.0 > -1.0))
    throw DomainError("radial_integral: non-integrable weight at origin");
  double expo = a + n - 1.0;
  auto integrand = [&](double r) { return h(r) * std::pow(r, expo); };
  auto q = quad_adaptive(integrand, 0.0, rho, tol);
  return sphere_area(n) * q.value;
}

double radial_integral(const GridFunction& gf, double n, double a, double rho,
                       const Tolerance& tol) {
  CubicInterpolant interp = gf.interpolant();
  auto h = [&](double r) {
    if (r <= interp.x_min()) return gf.y.front();
    if (r >= interp.x_max()) return gf.y.back();
    return interp.value(r);
  };
  return radial_integral(h, n, a, rho, tol);
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

double root_bracket(const std::function<double(double)>& g, double a, double b,
                    const Tolerance& tol) {
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw DomainError("root_bracket: no sign change on bracket");

  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                  0.5 * tol.abs_tol;
    double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = g(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
  }
  return b;
}

double golden_max(const std::function<double(double)>& g, double a, double b,
                  double xtol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = g(x1);
    }
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Tridiagonal eigensolver
// ---------------------------------------------------------------------------

int sturm_count(std::span<const double> diag, std::span<const double> off,
                std::span<const double> mass, double x) {
  const std::size_t m = diag.size();
  int count = 0;
  double d = diag[0] - x * mass[0];
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < m; ++i) {
    double b = off[i - 1];
    if (d == 0.0) d = 1e-300;
    d = (diag[i] - x * mass[i]) - b * b / d;
    if (d < 0.0) ++count;
  }
  return count;
}

EigResult eig_tridiag_smallest(std::span<const double> diag,
                               std::span<const double> off,
                               std::span<const double> mass,
                               double eig_tol) {
  const std::size_t m = diag.size();
  if (m == 0) throw DomainError("empty system");
  if (off.size() + 1 != m || mass.size() != m)
    throw DomainError("eig_tridiag_smallest: size mismatch");
  for (double mi : mass)
    if (!(mi > 0.0)) throw DomainError("eig_tridiag_smallest: indefinite mass");

  // Gershgorin bounds for the equivalent standard problem.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < m; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]) / std::sqrt(mass[i] * mass[i - 1]);
    if (i + 1 < m) r += std::abs(off[i]) / std::sqrt(mass[i] * mass[i + 1]);
    double c = diag[i] / mass[i];
    lo = std::min(lo, c - r);
    hi = std::max(hi, c + r);
  }

  double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  while (hi - lo > eig_tol * scale) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off, mass, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  double mu = 0.5 * (lo + hi);

  // Inverse iteration on (A - sigma M) v = M v_prev.
  double sigma = mu - 1e-10 * scale;
  std::vector<double> v(m, 1.0);
  std::vector<double> dd(m), du(m > 1 ? m - 1 : 0), dl(m > 1 ? m - 1 : 0);
  for (int iter = 0; iter < 8; ++iter) {
    for (std::size_t i = 0; i < m; ++i) dd[i] = diag[i] - sigma * mass[i];
    for (std::size_t i = 0; i + 1 < m; ++i) du[i] = dl[i] = off[i];
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = mass[i] * v[i];
    // Thomas solve with a small diagonal guard.
    for (std::size_t i = 1; i < m; ++i) {
      double denom = dd[i - 1];
      if (std::abs(denom) < 1e-300) denom = 1e-300;
      double w = dl[i - 1] / denom;
      dd[i] -= w * du[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    double denom = dd[m - 1];
    if (std::abs(denom) < 1e-300) denom = 1e-300;
    v[m - 1] = rhs[m - 1] / denom;
    for (std::size_t i = m - 1; i-- > 0;) {
      double dn = dd[i];
      if (std::abs(dn) < 1e-300) dn = 1e-300;
      v[i] = (rhs[i] - du[i] * v[i + 1]) / dn;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm += mass[i] * v[i] * v[i];
    norm = std::sqrt(norm);
    for (auto& vi : v) vi /= norm;
  }
  // Sign convention: make the largest-magnitude entry positive.
  double mx = 0.0;
  for (double vi : v)
    if (std::abs(vi) > std::abs(mx)) mx = vi;
  if (mx < 0.0)
    for (auto& vi : v) vi = -vi;
  return {mu, std::move(v)};
}

}  // namespace memslab::num
