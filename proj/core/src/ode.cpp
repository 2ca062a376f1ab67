#include "rfsym/ode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace rfsym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log1p_exp(double z) {  // ln(1 + e^z) for z <= 0
  return std::log1p(std::exp(z));
}

// ---------------------------------------------------------------------------
// Grid construction
// ---------------------------------------------------------------------------

std::vector<double> build_grid(const GridSpec& gs, double x_max) {
  if (!(x_max > 0)) throw std::invalid_argument("grid: x_max must be positive");
  std::vector<double> x;
  x.push_back(0.0);
  const double band = std::min(1.0, x_max);
  const int ng = std::max(8, gs.n_graded);
  for (int i = 1; i <= ng; ++i) {
    double s = static_cast<double>(i) / ng;
    x.push_back(band * s * s);
  }
  if (x_max > band) {
    const double h = std::max(1e-4, gs.h);
    int n = std::max(1, static_cast<int>(std::ceil((x_max - band) / h)));
    double he = (x_max - band) / n;
    for (int i = 1; i <= n; ++i) x.push_back(band + he * i);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

size_t locate(const std::vector<double>& x, double xv) {
  auto it = std::upper_bound(x.begin(), x.end(), xv);
  size_t i = (it == x.begin()) ? 0 : static_cast<size_t>(it - x.begin() - 1);
  if (i >= x.size() - 1) i = x.size() - 2;
  return i;
}

double hermite(const std::vector<double>& x, const std::vector<double>& f,
               const std::vector<double>& df, double xv) {
  size_t i = locate(x, xv);
  double h = x[i + 1] - x[i], s = (xv - x[i]) / h;
  double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * f[i] + (s3 - 2 * s2 + s) * h * df[i] +
         (-2 * s3 + 3 * s2) * f[i + 1] + (s3 - s2) * h * df[i + 1];
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// Boole's rule over one panel using 5 equispaced evaluations.
double boole_panel(const std::function<double(double)>& f, double a, double b) {
  double q = (b - a) / 4.0;
  return (b - a) / 90.0 *
         (7 * f(a) + 32 * f(a + q) + 12 * f(a + 2 * q) + 32 * f(a + 3 * q) +
          7 * f(b));
}

std::vector<double> panels_boole(const std::vector<double>& x,
                                 const std::function<double(double)>& f) {
  std::vector<double> p(x.size() - 1, 0.0);
  for (size_t i = 0; i + 1 < x.size(); ++i) p[i] = boole_panel(f, x[i], x[i + 1]);
  return p;
}

std::vector<double> cumulative_boole(const std::vector<double>& x,
                                     const std::function<double(double)>& f) {
  std::vector<double> s(x.size(), 0.0);
  for (size_t i = 0; i + 1 < x.size(); ++i)
    s[i + 1] = s[i] + boole_panel(f, x[i], x[i + 1]);
  return s;
}

// Panel integral of exp(lf(.)) in log space (guards against overflow).
double log_boole_panel(const std::function<double(double)>& lf, double a,
                       double b) {
  static const double w[5] = {7, 32, 12, 32, 7};
  double q = (b - a) / 4.0, m = -kInf, v[5];
  for (int j = 0; j < 5; ++j) {
    v[j] = lf(a + q * j);
    m = std::max(m, v[j]);
  }
  if (m == -kInf) return -kInf;
  double acc = 0;
  for (int j = 0; j < 5; ++j) acc += w[j] * std::exp(v[j] - m);
  return m + std::log((b - a) / 90.0 * acc);
}

double logsumexp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth) {
  double c = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fc = f(c);
  std::function<double(double, double, double, double, double, double, double,
                       int)>
      rec = [&](double a1, double b1, double fa1, double fb1, double fc1,
                double whole, double tol1, int d) -> double {
    double c1 = 0.5 * (a1 + b1);
    double fl = f(0.5 * (a1 + c1)), fr = f(0.5 * (c1 + b1));
    double left = (c1 - a1) / 6 * (fa1 + 4 * fl + fc1);
    double right = (b1 - c1) / 6 * (fc1 + 4 * fr + fb1);
    if (d <= 0 || std::abs(left + right - whole) < 15 * tol1)
      return left + right + (left + right - whole) / 15.0;
    return rec(a1, c1, fa1, fc1, fl, left, tol1 / 2, d - 1) +
           rec(c1, b1, fc1, fb1, fr, right, tol1 / 2, d - 1);
  };
  double whole = (b - a) / 6 * (fa + 4 * fc + fb);
  return rec(a, b, fa, fb, fc, whole, tol, depth);
}

// ---------------------------------------------------------------------------
// Facet polynomial helpers
// ---------------------------------------------------------------------------

struct PolyCtx {
  std::vector<double> p;   // P coefficients
  std::vector<double> q;   // primitive of P, q(0) = 0
  std::vector<double> rc;  // R(z) = Q(lam) - Q(lam - z), exact shifted coeffs
  double lam = 0;          // lambda
  double q_lam = 0;        // q(lambda) == V
  int n1 = 0, n2 = 0, k = 0;
  double c_origin = 0;     // P^{(n1+n2)}(0)/(n1+n2)!
  double v = 0;            // exact volume as double
  double delta = 0;
};

double horner(const std::vector<double>& c, double x) {
  double r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

PolyCtx make_ctx(const FacetData& f) {
  PolyCtx c;
  c.p = f.P.double_coeffs();
  c.q.assign(c.p.size() + 1, 0.0);
  for (size_t i = 0; i < c.p.size(); ++i) c.q[i + 1] = c.p[i] / (i + 1.0);
  c.lam = f.lambda.to_double();
  c.q_lam = horner(c.q, c.lam);
  c.n1 = static_cast<int>(f.n1);
  c.n2 = static_cast<int>(f.n2);
  c.k = static_cast<int>(f.k);
  c.c_origin = c.p[static_cast<size_t>(c.n1 + c.n2)];
  c.v = f.V.to_double();
  c.delta = f.delta.to_double();
  // Exact Taylor shift: coefficients of P(lambda - z) via Horner in UniPoly,
  // then R(z) = int_0^z P(lambda - w) dw.
  UniPoly shifted;  // zero
  UniPoly lin({f.lambda, Rational(-1)});
  for (long i = f.P.degree(); i >= 0; --i)
    shifted = shifted * lin + UniPoly({f.P.coeff(i)});
  c.rc.assign(static_cast<size_t>(shifted.degree()) + 2, 0.0);
  for (long m = 0; m <= shifted.degree(); ++m)
    c.rc[static_cast<size_t>(m) + 1] = shifted.coeff(m).to_double() / (m + 1.0);
  return c;
}

double r_deriv(const PolyCtx& c, double z) {  // equals P(lambda - z)
  double r = 0;
  for (size_t j = c.rc.size(); j-- > 1;) r = r * z + j * c.rc[j];
  return r * 1.0;
}

double r_eval(const PolyCtx& c, double z) {
  double r = 0;
  for (size_t j = c.rc.size(); j-- > 1;) r = r * z + c.rc[j];
  return r * z;
}

// Solve R(z) = w for small w > 0 (tail inversion without cancellation).
double r_inverse(const PolyCtx& c, double w) {
  if (w <= 0) return 0.0;
  size_t j0 = static_cast<size_t>(c.k) + 1;
  double z = std::pow(w / c.rc[j0], 1.0 / static_cast<double>(j0));
  double lo = 0, hi = c.lam;
  for (int it = 0; it < 60; ++it) {
    double fz = r_eval(c, z) - w;
    if (fz > 0)
      hi = z;
    else
      lo = z;
    double dz = r_deriv(c, z);
    double zn = (dz > 0) ? z - fz / dz : 0.5 * (lo + hi);
    // Declare convergence before the bracket fallback: a Newton step that
    // rounds back onto z would otherwise collide with the bracket endpoint
    // just assigned from z and trigger a spurious bisection jump.
    if (std::abs(zn - z) < 1e-15 * (z + 1e-300)) return zn;
    if (!(zn > lo && zn < hi)) zn = 0.5 * (lo + hi);
    z = zn;
  }
  return z;
}

// Monotone inversion of the primitive on [0, lambda].
double q_inverse(const PolyCtx& c, double s, double guess) {
  if (s <= 0) return 0;
  if (s >= c.q_lam) return c.lam;
  double lo = 0, hi = c.lam;
  double y = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double fy = horner(c.q, y) - s;
    if (fy > 0)
      hi = y;
    else
      lo = y;
    double py = horner(c.p, y);
    double yn = (py > 0) ? y - fy / py : 0.5 * (lo + hi);
    if (!(yn > lo && yn < hi)) yn = 0.5 * (lo + hi);
    if (std::abs(yn - y) < 1e-16 * c.lam) return yn;
    y = yn;
  }
  return y;
}

double uref_val(double lam, double c_ref, double x) {
  return lam * x + log1p_exp(-2 * lam * x) + c_ref;
}

double log_jac(int n1, int n2, double x) {
  if (x <= 0) return (n1 + n2 > 0) ? -kInf : 0.0;
  return n1 * lsinh(x) + n2 * lsinh(2 * x);
}

double default_xmax(const PolyCtx& c) { return 20.0 / c.delta; }

// ---------------------------------------------------------------------------
// Picard iteration at fixed t
// ---------------------------------------------------------------------------

struct PicardOut {
  bool ok = false;
  std::vector<double> u, du, ddu;
  double defect = 0;
  int iters = 0;
};

double ddu_origin(const PolyCtx& c, double nu0_exp) {
  // u''(0)^{1+n1+n2} = e^{-nu(0)} 2^{n2} / c_origin with nu(0) = t u(0)+(1-t)u_ref(0)
  double v = nu0_exp * std::pow(2.0, c.n2) / c.c_origin;
  return std::pow(v, 1.0 / (1.0 + c.n1 + c.n2));
}

PicardOut picard(const PolyCtx& c, const std::vector<double>& x, double t,
                 double c_ref, std::vector<double> u, std::vector<double> du,
                 std::vector<double> ddu, int max_iter = 400) {
  const size_t n = x.size();
  const double rate = c.lam - (c.n1 + 2.0 * c.n2);
  const double tol = 1e-10 * (1.0 + c.lam);
  PicardOut out;
  for (int iter = 1; iter <= max_iter; ++iter) {
    auto g = [&](double xv) {
      double lj = log_jac(c.n1, c.n2, xv);
      if (lj == -kInf) return 0.0;
      double uv = hermite(x, u, du, xv);
      return std::exp(-t * uv - (1 - t) * uref_val(c.lam, c_ref, xv) + lj);
    };
    std::vector<double> pans = panels_boole(x, g);
    double tail = g(x.back()) / rate;
    std::vector<double> s(n, 0.0), suf(n, tail);
    for (size_t i = 0; i + 1 < n; ++i) s[i + 1] = s[i] + pans[i];
    for (size_t i = n - 1; i-- > 0;) suf[i] = suf[i + 1] + pans[i];
    double mass = suf[0];
    if (!std::isfinite(mass) || mass <= 0) return out;
    double sigma = c.v / mass;
    double cadd = (t > 0) ? std::log(mass / c.v) / t : 0.0;
    std::vector<double> du_new(n, 0.0), ddu_new(n, 0.0), u_new(n, 0.0);
    double u0_new = u[0] + cadd;
    ddu_new[0] = ddu_origin(c, std::exp(-t * u0_new -
                                        (1 - t) * uref_val(c.lam, c_ref, 0)));
    double guess = 0;
    for (size_t i = 1; i < n; ++i) {
      double py;
      if (sigma * s[i] < 0.5 * c.q_lam) {
        du_new[i] = q_inverse(c, sigma * s[i], guess);
        py = horner(c.p, du_new[i]);
      } else {
        double z = r_inverse(c, sigma * suf[i]);
        du_new[i] = c.lam - z;
        py = r_deriv(c, z);
      }
      guess = du_new[i];
      double lj = log_jac(c.n1, c.n2, x[i]);
      // density of the shifted candidate equals sigma * g at the nodes
      double gv = sigma * std::exp(-t * u[i] - (1 - t) *
                                   uref_val(c.lam, c_ref, x[i]) + lj);
      ddu_new[i] = (py > 0) ? gv / py : ddu_new[i - 1];
    }
    auto gd = [&](double xv) { return hermite(x, du_new, ddu_new, xv); };
    std::vector<double> cu = cumulative_boole(x, gd);
    for (size_t i = 0; i < n; ++i) u_new[i] = u0_new + cu[i];
    double defect = 0;
    for (size_t i = 0; i < n; ++i)
      defect = std::max(defect, std::abs(du_new[i] - du[i]));
    // under-relaxation 0.5
    for (size_t i = 0; i < n; ++i) {
      du[i] += 0.5 * (du_new[i] - du[i]);
      u[i] += 0.5 * (u_new[i] - u[i]);
      ddu[i] = ddu_new[i];
    }
    if (!std::isfinite(u[0]) || u[0] < -500.0) return out;
    if (defect < tol) {
      out.ok = true;
      out.u = std::move(u);
      out.du = std::move(du);
      out.ddu = std::move(ddu);
      out.defect = defect;
      out.iters = iter;
      return out;
    }
  }
  return out;
}

void fill_diag(const PolyCtx& c, double t, double c_ref, ODESolution& s) {
  double m = kInf, xm = 0;
  for (size_t i = 1; i < s.grid.size(); ++i) {
    double nu = t * s.u[i] + (1 - t) * uref_val(c.lam, c_ref, s.grid[i]) -
                log_jac(c.n1, c.n2, s.grid[i]);
    if (nu < m) {
      m = nu;
      xm = s.grid[i];
    }
  }
  s.diag.m_t = m;
  s.diag.x_t = xm;
}

}  // namespace

double lsinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
  return std::log(std::sinh(x));
}

double ODESolution::eval_u(double x) const { return hermite(grid, u, du, x); }
double ODESolution::eval_du(double x) const { return hermite(grid, du, ddu, x); }

double normalize_uref(const FacetData& f) {
  PolyCtx c = make_ctx(f);
  double rate = c.lam - (c.n1 + 2.0 * c.n2);
  if (!(rate > 0))
    throw std::domain_error("normalize_uref: lambda <= n1 + 2 n2");
  double xend = default_xmax(c) + 40.0 / rate + 10.0;
  auto f0 = [&](double x) {
    double lj = log_jac(c.n1, c.n2, x);
    if (lj == -kInf) return 0.0;
    return std::exp(lj - c.lam * x - log1p_exp(-2 * c.lam * x));
  };
  double i1 = adaptive_simpson(f0, 0.0, 1.0, 1e-13, 40);
  double i2 = adaptive_simpson(f0, 1.0, xend, 1e-13, 48);
  return std::log((i1 + i2) / c.v);
}

ODESolution solve_t0(const FacetData& f, const GridSpec& gs) {
  PolyCtx c = make_ctx(f);
  double c_ref = normalize_uref(f);
  double x_max = gs.x_max > 0 ? gs.x_max : default_xmax(c);
  ODESolution s;
  s.grid = build_grid(gs, x_max);
  s.lambda = f.lambda;
  s.n1 = c.n1;
  s.n2 = c.n2;
  s.t_reached = 0.0;
  const size_t n = s.grid.size();
  auto g = [&](double x) {
    double lj = log_jac(c.n1, c.n2, x);
    if (lj == -kInf) return 0.0;
    return std::exp(lj - uref_val(c.lam, c_ref, x));
  };
  std::vector<double> pans = panels_boole(s.grid, g);
  const double rate = c.lam - (c.n1 + 2.0 * c.n2);
  double tail = g(s.grid.back()) / rate;
  std::vector<double> cum(n, 0.0), suf(n, tail);
  for (size_t i = 0; i + 1 < n; ++i) cum[i + 1] = cum[i] + pans[i];
  for (size_t i = n - 1; i-- > 0;) suf[i] = suf[i + 1] + pans[i];
  s.du.assign(n, 0.0);
  s.ddu.assign(n, 0.0);
  s.u.assign(n, 0.0);
  s.ddu[0] = ddu_origin(c, std::exp(-uref_val(c.lam, c_ref, 0)));
  double guess = 0;
  for (size_t i = 1; i < n; ++i) {
    double py;
    if (cum[i] < 0.5 * c.q_lam) {
      s.du[i] = q_inverse(c, cum[i], guess);
      py = horner(c.p, s.du[i]);
    } else {
      double z = r_inverse(c, suf[i]);
      s.du[i] = c.lam - z;
      py = r_deriv(c, z);
    }
    guess = s.du[i];
    s.ddu[i] = (py > 0) ? g(s.grid[i]) / py : s.ddu[i - 1];
  }
  auto gd = [&](double x) { return hermite(s.grid, s.du, s.ddu, x); };
  std::vector<double> cu = cumulative_boole(s.grid, gd);
  for (size_t i = 0; i < n; ++i) s.u[i] = cu[i];  // u(0) = 0
  s.delta = c.delta;
  fill_diag(c, 0.0, c_ref, s);
  return s;
}

ContinuityResult continuity_solve(const FacetData& f, double t_target,
                                  const GridSpec& gs) {
  if (t_target < 0 || t_target > 1)
    throw std::invalid_argument("continuity_solve: t_target outside [0,1]");
  ContinuityResult res;
  ODESolution s = solve_t0(f, gs);
  if (t_target == 0) {
    res.solution = std::move(s);
    return res;
  }
  PolyCtx c = make_ctx(f);
  double c_ref = normalize_uref(f);
  double t = 0, dt = 0.05;
  int steps = 0;
  std::vector<double> u = s.u, du = s.du, ddu = s.ddu;
  while (t < t_target - 1e-15) {
    double tn = std::min(t + dt, t_target);
    PicardOut p = picard(c, s.grid, tn, c_ref, u, du, ddu);
    if (p.ok) {
      t = tn;
      ++steps;
      u = std::move(p.u);
      du = std::move(p.du);
      ddu = std::move(p.ddu);
      s.diag.fixed_point_defect = p.defect;
      s.diag.iterations = p.iters;
    } else {
      dt *= 0.5;
      if (dt < 1e-4) {
        Rational tb = (f.lambda - Rational(f.n1) - Rational(2 * f.n2)) /
                      (f.lambda - f.bar_dh);
        StallReport sr;
        sr.t_achieved = t;
        sr.t_bound = tb.to_double();
        sr.t_bound_exact = tb;
        sr.message = "continuity method stalled at the barycenter bound";
        res.stall = sr;
        return res;
      }
    }
  }
  s.u = std::move(u);
  s.du = std::move(du);
  s.ddu = std::move(ddu);
  s.t_reached = t_target;
  s.diag.t_steps = steps;
  fill_diag(c, t_target, c_ref, s);
  s.delta = c.delta;
  if (s.grid.back() * c.delta >= 18.0) s.expansion = expansion_fit(s, 3);
  res.solution = std::move(s);
  return res;
}

ODESolution stenzel_solve(long m1, long m2, double C, const GridSpec& gs) {
  if (m1 < 0 || m2 < 0 || m1 + m2 < 1)
    throw std::invalid_argument("stenzel_solve: need m1 >= 1 or m2 >= 1");
  if (!(C > 0)) throw std::invalid_argument("stenzel_solve: C must be positive");
  if (!(gs.x_max > 0))
    throw std::invalid_argument("stenzel_solve: grid x_max required");
  ODESolution s;
  s.grid = build_grid(gs, gs.x_max);
  const size_t n = s.grid.size();
  const int sdeg = static_cast<int>(m1 + m2);
  s.n1 = static_cast<int>(m1);
  s.n2 = static_cast<int>(m2);
  s.t_reached = 1.0;
  auto lj = [&](double x) { return log_jac(s.n1, s.n2, x); };
  std::vector<double> lcum(n, -kInf);
  for (size_t i = 0; i + 1 < n; ++i)
    lcum[i + 1] =
        logsumexp(lcum[i], log_boole_panel(lj, s.grid[i], s.grid[i + 1]));
  s.du.assign(n, 0.0);
  s.ddu.assign(n, 0.0);
  s.u.assign(n, 0.0);
  double lc = std::log((sdeg + 1.0) * C);
  for (size_t i = 1; i < n; ++i)
    s.du[i] = std::exp((lc + lcum[i]) / (sdeg + 1.0));
  s.ddu[0] = std::pow(C * std::pow(2.0, s.n2), 1.0 / (sdeg + 1.0));
  for (size_t i = 1; i < n; ++i)
    s.ddu[i] = std::exp(std::log(C) + lj(s.grid[i]) - sdeg * std::log(s.du[i]));
  auto gd = [&](double x) { return hermite(s.grid, s.du, s.ddu, x); };
  std::vector<double> cu = cumulative_boole(s.grid, gd);
  for (size_t i = 0; i < n; ++i) s.u[i] = cu[i];
  return s;
}

double ode_residual(const ODESolution& sol, const FacetData& f, double t) {
  PolyCtx c = make_ctx(f);
  double c_ref = (t < 1.0) ? normalize_uref(f) : 0.0;
  double worst = 0;
  for (size_t i = 1; i < sol.grid.size(); ++i) {
    double x = sol.grid[i];
    double rhs = std::exp(-t * sol.u[i] - (1 - t) * uref_val(c.lam, c_ref, x) +
                          log_jac(c.n1, c.n2, x));
    double lhs = sol.ddu[i] * horner(c.p, sol.du[i]);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

double stenzel_residual(const ODESolution& sol, long m1, long m2, double C) {
  double worst = 0;
  int sdeg = static_cast<int>(m1 + m2);
  for (size_t i = 1; i < sol.grid.size(); ++i) {
    double x = sol.grid[i];
    double rhs = C * std::exp(log_jac(static_cast<int>(m1),
                                      static_cast<int>(m2), x));
    double lhs = sol.ddu[i] * std::pow(sol.du[i], sdeg);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

std::vector<std::pair<double, double>> expansion_fit(const ODESolution& sol,
                                                     int j_max) {
  const double lam = sol.lambda.to_double();
  const double del = sol.delta;
  if (!(del > 0)) throw std::domain_error("expansion_fit: no decay rate");
  const double x_max = sol.grid.back(), x_lo = 0.5 * x_max;
  if (x_max * del < 18.0)
    throw std::domain_error("expansion_fit: tail not resolvable");
  // Candidate exponents j*delta + 2k up to j_max*delta, pruned and deduped.
  std::vector<double> exps;
  double cap = j_max * del + 1e-12;
  for (int j = 0; j <= j_max; ++j)
    for (int k = 0; j * del + 2.0 * k <= cap; ++k) {
      double e = j * del + 2.0 * k;
      if (e < 1e-12) continue;                       // the constant term
      if (std::exp(-e * x_lo) < 1e-9) continue;      // numerically invisible
      bool dup = false;
      for (double e0 : exps)
        if (std::abs(e0 - e) < 1e-9) dup = true;
      if (!dup) exps.push_back(e);
    }
  std::sort(exps.begin(), exps.end());
  // Least squares on the tail window.
  std::vector<size_t> idx;
  for (size_t i = 0; i < sol.grid.size(); ++i)
    if (sol.grid[i] >= x_lo) idx.push_back(i);
  size_t m = exps.size() + 1;
  std::vector<std::vector<long double>> ata(m, std::vector<long double>(m, 0));
  std::vector<long double> atb(m, 0);
  for (size_t r : idx) {
    double x = sol.grid[r], y = sol.u[r] - lam * x;
    std::vector<long double> row(m);
    row[0] = 1.0L;
    for (size_t j = 0; j < exps.size(); ++j)
      row[j + 1] = std::exp(-exps[j] * (x - x_lo));  // scaled column
    for (size_t a = 0; a < m; ++a) {
      atb[a] += row[a] * y;
      for (size_t b = 0; b < m; ++b) ata[a][b] += row[a] * row[b];
    }
  }
  // Gaussian elimination with partial pivoting.
  std::vector<long double> sln(m, 0);
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    for (size_t r2 = col + 1; r2 < m; ++r2)
      if (std::abs((double)ata[r2][col]) > std::abs((double)ata[piv][col]))
        piv = r2;
    std::swap(ata[col], ata[piv]);
    std::swap(atb[col], atb[piv]);
    if (ata[col][col] == 0) throw std::runtime_error("expansion_fit: singular");
    for (size_t r2 = col + 1; r2 < m; ++r2) {
      long double fct = ata[r2][col] / ata[col][col];
      for (size_t c2 = col; c2 < m; ++c2) ata[r2][c2] -= fct * ata[col][c2];
      atb[r2] -= fct * atb[col];
    }
  }
  for (size_t col = m; col-- > 0;) {
    long double acc = atb[col];
    for (size_t c2 = col + 1; c2 < m; ++c2) acc -= ata[col][c2] * sln[c2];
    sln[col] = acc / ata[col][col];
  }
  std::vector<std::pair<double, double>> out;
  out.emplace_back(0.0, static_cast<double>(sln[0]));
  for (size_t j = 0; j < exps.size(); ++j)
    out.emplace_back(exps[j], static_cast<double>(sln[j + 1]) *
                                  std::exp(exps[j] * x_lo));  // unscale
  return out;
}

std::pair<double, double> integral_identities(const ODESolution& sol,
                                              const FacetData& f, double t) {
  PolyCtx c = make_ctx(f);
  double c_ref = (t < 1.0) ? normalize_uref(f) : 0.0;
  auto dens = [&](double x) {
    double lj = log_jac(c.n1, c.n2, x);
    if (lj == -kInf) return 0.0;
    double uv = hermite(sol.grid, sol.u, sol.du, x);
    return std::exp(-t * uv - (1 - t) * uref_val(c.lam, c_ref, x) + lj);
  };
  auto mom = [&](double x) {
    return dens(x) * hermite(sol.grid, sol.du, sol.ddu, x);
  };
  double rate = c.lam - (c.n1 + 2.0 * c.n2);
  double mass = cumulative_boole(sol.grid, dens).back();
  double first = cumulative_boole(sol.grid, mom).back();
  double tail = dens(sol.grid.back()) / rate;
  return {mass + tail, first + c.lam * tail};
}

std::vector<double> integrate_samples_cum(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const size_t n = x.size();
  if (y.size() != n || n < 4)
    throw std::invalid_argument("integrate_samples_cum: need >= 4 samples");
  std::vector<double> s(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    size_t j0 = (i == 0) ? 0 : (i + 2 < n ? i - 1 : n - 4);
    double a = x[i], b = x[i + 1], panel = 0;
    for (size_t j = j0; j < j0 + 4; ++j) {
      // integral over [a,b] of the Lagrange basis through the 4 stencil nodes
      double roots[3];
      int rn = 0;
      double denom = 1;
      for (size_t mth = j0; mth < j0 + 4; ++mth) {
        if (mth == j) continue;
        roots[rn++] = x[mth];
        denom *= x[j] - x[mth];
      }
      // numerator (t-r0)(t-r1)(t-r2) expanded
      double c3 = 1;
      double c2 = -(roots[0] + roots[1] + roots[2]);
      double c1 = roots[0] * roots[1] + roots[0] * roots[2] +
                  roots[1] * roots[2];
      double c0 = -roots[0] * roots[1] * roots[2];
      auto prim = [&](double t) {
        return ((c3 * t / 4 + c2 / 3) * t + c1 / 2) * t * t + c0 * t;
      };
      panel += y[j] * (prim(b) - prim(a)) / denom;
    }
    s[i + 1] = s[i] + panel;
  }
  return s;
}

std::vector<double> solve_delta2(const ODESolution& w,
                                 const std::vector<double>& g, double d2) {
  const size_t n = w.grid.size();
  if (g.size() != n) throw std::invalid_argument("solve_delta2: size mismatch");
  std::vector<double> integrand(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double wp = w.du[i];
    integrand[i] = (wp > 0 ? std::pow(wp, d2 - 1.0) : (d2 == 1.0 ? 1.0 : 0.0)) *
                   w.ddu[i] * g[i];
  }
  std::vector<double> h = integrate_samples_cum(w.grid, integrand);
  std::vector<double> fp(n, 0.0);
  for (size_t i = 1; i < n; ++i) {
    double wp = w.du[i];
    fp[i] = (wp > 1e-300) ? std::pow(wp, 1.0 - d2) * h[i] : 0.0;
  }
  return integrate_samples_cum(w.grid, fp);  // f(0) = 0
}

double legendre_value(const ODESolution& sol, double y) {
  const auto& du = sol.du;
  if (y <= du.front()) return -sol.u.front();
  if (y >= du.back()) {
    double x = sol.grid.back();
    return x * y - sol.u.back();
  }
  size_t lo = 0, hi = du.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (du[mid] <= y ? lo : hi) = mid;
  }
  double a = sol.grid[lo], b = sol.grid[hi];
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (a + b);
    (sol.eval_du(mid) <= y ? a : b) = mid;
  }
  double x = 0.5 * (a + b);
  return x * y - sol.eval_u(x);
}

}  // namespace rfsym
