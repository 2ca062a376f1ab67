#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "rfsym/ansatz.hpp"

namespace rfsym {

namespace {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// --- small dense helpers -----------------------------------------------------

Mat2 outer(const Vec2& a, const Vec2& b) {
  return {{{a[0] * b[0], a[0] * b[1]}, {a[1] * b[0], a[1] * b[1]}}};
}

Mat2 sym_outer(const Vec2& a, const Vec2& b) {
  Mat2 m = outer(a, b);
  return {{{2 * m[0][0], m[0][1] + m[1][0]}, {m[0][1] + m[1][0], 2 * m[1][1]}}};
}

void axpy(double s, const Vec2& v, Vec2& out) {
  out[0] += s * v[0];
  out[1] += s * v[1];
}

void axpy(double s, const Mat2& m, Mat2& out) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] += s * m[i][j];
}

// C2 smoothstep and derivatives on [0, 1].
double sstep(double t) { return t * t * t * (10 + t * (-15 + 6 * t)); }
double dsstep(double t) { return 30 * t * t * (1 + t * (-2 + t)); }
double ddsstep(double t) { return 60 * t * (1 + t * (-3 + 2 * t)); }

// Hermite interpolation of a sampled derivative pair (f, f') at x, plus the
// derivative of the interpolant; grid is strictly increasing.
size_t locate(const std::vector<double>& g, double x) {
  size_t lo = std::upper_bound(g.begin(), g.end(), x) - g.begin();
  if (lo == 0) return 0;
  if (lo >= g.size()) return g.size() - 2;
  return lo - 1;
}

double hermite(const std::vector<double>& g, const std::vector<double>& f,
               const std::vector<double>& df, double x) {
  size_t i = locate(g, x);
  double h = g[i + 1] - g[i], s = (x - g[i]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * f[i] + h * h10 * df[i] + h01 * f[i + 1] + h * h11 * df[i + 1];
}

double hermite_d(const std::vector<double>& g, const std::vector<double>& f,
                 const std::vector<double>& df, double x) {
  size_t i = locate(g, x);
  double h = g[i + 1] - g[i], s = (x - g[i]) / h;
  double d00 = 6 * s * (s - 1) / h, d10 = (1 - s) * (1 - 3 * s);
  double d01 = -d00, d11 = s * (3 * s - 2);
  return d00 * f[i] + d10 * df[i] + d01 * f[i + 1] + d11 * df[i + 1];
}

struct FiberMults {
  long k1 = 0, k2 = 0;
};

FiberMults alpha2_mults(const FacetData& fd) {
  FiberMults f;
  for (const auto& r : fd.sys.roots) {
    if (r.c1 != 0) continue;
    if (r.c2 == 1) f.k1 = r.mult;
    if (r.c2 == 2) f.k2 = r.mult;
  }
  return f;
}

// Least-squares fit of samples y(x) against {e^{e_i x}} for a list of
// exponents, with column scaling, via long double normal equations.
std::vector<double> fit_exponentials(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     const std::vector<double>& exps) {
  const int m = static_cast<int>(exps.size());
  double x_lo = xs.front(), x_hi = xs.back();
  std::vector<double> scale(m);
  for (int i = 0; i < m; ++i)
    scale[i] = std::exp(-exps[i] * (exps[i] > 0 ? x_hi : x_lo));
  std::vector<long double> A(m * m, 0.0L), rhs(m, 0.0L);
  std::vector<double> col(m);
  for (size_t s = 0; s < xs.size(); ++s) {
    for (int i = 0; i < m; ++i)
      col[i] = std::exp(exps[i] * xs[s]) * scale[i];
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) A[i * m + j] += (long double)col[i] * col[j];
      rhs[i] += (long double)col[i] * ys[s];
    }
  }
  for (int c = 0; c < m; ++c) {  // Gaussian elimination with partial pivoting
    int piv = c;
    for (int i = c + 1; i < m; ++i)
      if (std::fabs((double)A[i * m + c]) > std::fabs((double)A[piv * m + c]))
        piv = i;
    for (int j = 0; j < m; ++j) std::swap(A[c * m + j], A[piv * m + j]);
    std::swap(rhs[c], rhs[piv]);
    for (int i = c + 1; i < m; ++i) {
      long double f = A[i * m + c] / A[c * m + c];
      for (int j = c; j < m; ++j) A[i * m + j] -= f * A[c * m + j];
      rhs[i] -= f * rhs[c];
    }
  }
  std::vector<long double> cs(m);
  for (int i = m - 1; i >= 0; --i) {
    long double s = rhs[i];
    for (int j = i + 1; j < m; ++j) s -= A[i * m + j] * cs[j];
    cs[i] = s / A[i * m + i];
  }
  // cs are coefficients against the scaled columns; undo the scaling.
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = (double)cs[i] * scale[i];
  return out;
}

double chamber_coord(double v) { return v < 0 ? 0.0 : v; }

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::interior: return "interior";
    case Region::blend: return "blend";
    case Region::glue_band: return "glue-band";
    case Region::model1: return "model1";
    case Region::model2: return "model2";
  }
  return "?";
}

// --- potential accessors -----------------------------------------------------

double GluedPotential::psi(double x) const {
  x = std::fabs(x);
  double n = double(c.geo.n);
  if (x >= u_sol.grid.back())
    return c.geo.b1.to_double() * x + c.K1 +
           c.K2 * std::exp(-c.geo.a1.to_double() * x);
  return (u_sol.eval_u(x) - c.C_u) / n;
}

double GluedPotential::dpsi(double x) const {
  double sgn = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  double a1 = c.geo.a1.to_double();
  if (x >= u_sol.grid.back())
    return sgn * (c.geo.b1.to_double() - a1 * c.K2 * std::exp(-a1 * x));
  return sgn * u_sol.eval_du(x) / double(c.geo.n);
}

double GluedPotential::ddpsi(double x) const {
  x = std::fabs(x);
  double a1 = c.geo.a1.to_double();
  if (x >= u_sol.grid.back()) return a1 * a1 * c.K2 * std::exp(-a1 * x);
  return hermite_d(u_sol.grid, u_sol.du, u_sol.ddu, x) / double(c.geo.n);
}

double GluedPotential::w(double x) const {
  x = std::fabs(x);
  double rate = (c.geo.a1 * c.geo.zeta).to_double();
  if (x >= w_sol.grid.back()) return c.K2_w * std::exp(rate * x);
  return hermite(w_sol.grid, w_sol.u, w_sol.du, x);
}

double GluedPotential::dw(double x) const {
  double sgn = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  double rate = (c.geo.a1 * c.geo.zeta).to_double();
  if (x >= w_sol.grid.back())
    return sgn * rate * c.K2_w * std::exp(rate * x);
  return sgn * hermite(w_sol.grid, w_sol.du, w_sol.ddu, x);
}

double GluedPotential::ddw(double x) const {
  x = std::fabs(x);
  double rate = (c.geo.a1 * c.geo.zeta).to_double();
  if (x >= w_sol.grid.back())
    return rate * rate * c.K2_w * std::exp(rate * x);
  return hermite_d(w_sol.grid, w_sol.du, w_sol.ddu, x);
}

// --- build -------------------------------------------------------------------

GluedPotential build_glued(const RestrictedRootSystem& rs, int fiber,
                           const GluedOptions& opt) {
  GluedPotential p;
  p.fd = facet(rs, fiber);
  p.c.geo = ansatz_constants(p.fd);
  const auto& geo = p.c.geo;

  if (!ke_exists(p.fd))
    throw KeNonexistenceError(
        "build_glued: the reduced equation on this facet has no solution "
        "(barycenter margin " + barycenter_margin(p.fd).str() + " <= 0)");
  p.injectivity_ok = !(geo.a1 > geo.a0);

  double delta = p.fd.delta.to_double();
  GridSpec pg = opt.psi_grid;
  if (pg.x_max <= 0) pg.x_max = std::max(32.0, 20.0 / delta);
  auto cont = continuity_solve(p.fd, 1.0, pg);
  if (!cont.solution)
    throw KeNonexistenceError("build_glued: continuity method stalled at t = " +
                              std::to_string(cont.stall->t_achieved));
  p.u_sol = std::move(*cont.solution);

  // Re-enforce the pointwise equation at t = 1 so the stored second derivative
  // is exactly consistent with (u, u'); the last Picard update can lag by one
  // iteration otherwise.
  {
    auto pc = p.fd.P.double_coeffs();
    for (size_t i = 1; i < p.u_sol.grid.size(); ++i) {
      double x = p.u_sol.grid[i];
      double j = double(p.fd.n1) * lsinh(x) + double(p.fd.n2) * lsinh(2 * x);
      double pd = 0;
      for (size_t d = pc.size(); d-- > 0;) pd = pd * p.u_sol.du[i] + pc[d];
      if (pd > 0) p.u_sol.ddu[i] = std::exp(-p.u_sol.u[i] + j) / pd;
    }
  }

  p.c.C_u = -std::log(geo.cu_arg.to_double());
  p.c.k_trunc = opt.k_trunc;
  p.c.M = opt.M;
  p.c.blend_eps = opt.blend_eps;
  p.c.eta = opt.eta > 0 ? opt.eta : geo.eta_max.to_double() / 2;
  if (!(p.c.eta > 0) || !(p.c.eta < geo.eta_max.to_double()))
    throw std::invalid_argument("build_glued: eta outside (0, eta_max)");

  // K1, K2 from a dedicated least-squares tail fit of u - lambda x against
  // {1, e^{-delta x}, e^{-2 delta x}, e^{-3 delta x}, e^{-(delta+2) x}} over
  // the window [8/delta, 16/delta], where the leading correction is resolved
  // above the quadrature noise floor regardless of the decay rate.
  double K00 = 0, K2u = 0;
  {
    double lam = p.fd.lambda.to_double();
    double x_lo = 8.0 / delta;
    double x_hi = std::min(16.0 / delta, p.u_sol.grid.back());
    std::vector<double> exps{0.0, -delta, -2 * delta, -3 * delta,
                             -(delta + 2.0)};
    std::sort(exps.begin(), exps.end(), std::greater<>());
    exps.erase(std::unique(exps.begin(), exps.end(),
                           [](double a, double b) {
                             return std::fabs(a - b) < 1e-12 * (1 + std::fabs(a));
                           }),
               exps.end());
    std::vector<double> xs, ys;
    for (size_t i = 0; i < p.u_sol.grid.size(); ++i) {
      double xv = p.u_sol.grid[i];
      if (xv >= x_lo && xv <= x_hi) {
        xs.push_back(xv);
        ys.push_back(p.u_sol.u[i] - lam * xv);
      }
    }
    auto fit = fit_exponentials(xs, ys, exps);
    K00 = fit[0];
    K2u = fit[1];
  }
  double n = double(geo.n);
  p.c.K1 = (K00 - p.c.C_u) / n;
  p.c.K2 = K2u / n;
  if (!(p.c.K2 > 0))
    throw std::logic_error("build_glued: nonpositive matching coefficient K2");

  // Independent tail-slope fit of the decay rate.
  {
    double lam = p.fd.lambda.to_double();
    double x_end = p.u_sol.grid.back();
    // Sample where lambda - u' is resolved above the solver noise floor.
    double x1 = std::min(6.0 / delta, 0.55 * x_end);
    double x2 = std::min(12.0 / delta, 0.9 * x_end);
    double z1 = lam - p.u_sol.eval_du(x1), z2 = lam - p.u_sol.eval_du(x2);
    p.c.a1_fit = (std::log(z1) - std::log(z2)) / (x2 - x1);
    double a1 = geo.a1.to_double();
    if (std::fabs(p.c.a1_fit - a1) > 0.02 * a1)
      throw std::logic_error(
          "build_glued: fitted decay rate deviates from the model constant by "
          "more than 2%");
  }

  // Fiber profile. w'' (w')^k = (1/C_w) sinh^{k1} sinh^{k2}(2 .).
  auto fm = alpha2_mults(p.fd);
  Rational rate_exact = geo.a1 * geo.zeta;
  if (rate_exact != Rational(fm.k1 + 2 * fm.k2, geo.k + 1))
    throw std::logic_error("build_glued: fiber growth rate mismatch");
  double rate = rate_exact.to_double();
  p.c.C_w = geo.cw_rat.to_double() * std::exp(n * p.c.K1);
  GridSpec wg = opt.w_grid;
  if (wg.x_max <= 0) wg.x_max = std::max(32.0, 20.0 / rate);
  p.w_sol = stenzel_solve(fm.k1, fm.k2, 1.0 / p.c.C_w, wg);

  // Align the additive constant so w ~ K2_w e^{rate x} with no constant term.
  {
    std::vector<double> xs, ys;
    double x_end = p.w_sol.grid.back();
    for (size_t i = 0; i < p.w_sol.grid.size(); ++i)
      if (p.w_sol.grid[i] >= x_end - 6.0) {
        xs.push_back(p.w_sol.grid[i]);
        ys.push_back(p.w_sol.u[i]);
      }
    auto fit = fit_exponentials(xs, ys, {0.0, rate, rate - 2.0});
    p.c.w_shift = fit[0];
    p.c.K2_w = fit[1];
    for (auto& v : p.w_sol.u) v -= p.c.w_shift;
  }
  p.wmats = weyl_matrices_values(p.fd.sys);
  return p;
}

// --- evaluation --------------------------------------------------------------

namespace {

EvalResult eval_model2(const GluedPotential& p, const Vec2& y) {
  const auto& g = p.c.geo;
  double b = g.b.to_double();
  double t21 = -(g.g12 / g.g11).to_double();  // alpha2~ = (t21, 1)
  double beta = b * (t21 * y[0] + y[1]) + p.psi(y[0]);
  Vec2 gb{p.dpsi(y[0]) + b * t21, b};
  double rho = std::exp(beta);
  EvalResult e;
  e.rho = rho;
  e.grad = {rho * gb[0], rho * gb[1]};
  e.hess = outer(gb, gb);
  e.hess[0][0] += p.ddpsi(y[0]);
  for (auto& row : e.hess)
    for (auto& v : row) v *= rho;
  e.region = Region::model2;
  return e;
}

EvalResult eval_model1(const GluedPotential& p, const Vec2& y) {
  const auto& g = p.c.geo;
  double a0 = g.a0.to_double(), a1 = g.a1.to_double(), z = g.zeta.to_double();
  double at1 = y[0] + z * y[1];
  double A = p.c.K1 + a0 * at1;
  double L = -a1 * at1;
  Vec2 gA{a0, a0 * z}, gAL{a0 - a1, (a0 - a1) * z};
  double W = p.w(y[1]), W1 = p.dw(y[1]), W2 = p.ddw(y[1]);
  double f0 = std::exp(A), f1 = std::exp(A + L);
  EvalResult e;
  e.rho = f0 + f1 * W;
  e.grad = {f0 * gA[0] + f1 * (gAL[0] * W),
            f0 * gA[1] + f1 * (gAL[1] * W + W1)};
  e.hess = outer(gA, gA);
  for (auto& row : e.hess)
    for (auto& v : row) v *= f0;
  Mat2 h1 = outer(gAL, gAL);
  for (auto& row : h1)
    for (auto& v : row) v *= W;
  axpy(W1, sym_outer(gAL, Vec2{0, 1}), h1);
  h1[1][1] += W2;
  axpy(f1, h1, e.hess);
  e.region = Region::model1;
  return e;
}

EvalResult eval_interior(const GluedPotential& p, const Vec2& y,
                         const std::vector<Mat2>& wmats) {
  // rho_int = M + ln sum_w e^{(w alpha1)(x)}; (w alpha1)(x) is the first value
  // coordinate of w^{-1} x, and w^{-1} ranges over the whole group.
  std::vector<double> ell(wmats.size());
  std::vector<Vec2> lin(wmats.size());
  double mx = -1e300;
  for (size_t i = 0; i < wmats.size(); ++i) {
    lin[i] = {wmats[i][0][0], wmats[i][0][1]};
    ell[i] = lin[i][0] * y[0] + lin[i][1] * y[1];
    mx = std::max(mx, ell[i]);
  }
  double sum = 0;
  std::vector<double> pr(wmats.size());
  for (size_t i = 0; i < wmats.size(); ++i) {
    pr[i] = std::exp(ell[i] - mx);
    sum += pr[i];
  }
  EvalResult e;
  e.rho = p.c.M + mx + std::log(sum);
  Vec2 mean{0, 0};
  for (size_t i = 0; i < wmats.size(); ++i) {
    pr[i] /= sum;
    axpy(pr[i], lin[i], mean);
  }
  e.grad = mean;
  e.hess = {{{0, 0}, {0, 0}}};
  for (size_t i = 0; i < wmats.size(); ++i) axpy(pr[i], outer(lin[i], lin[i]), e.hess);
  axpy(-1.0, outer(mean, mean), e.hess);
  e.region = Region::interior;
  return e;
}

EvalResult eval_chamber(const GluedPotential& p, const Vec2& y) {
  double t = y[0] - p.c.eta * y[1];
  EvalResult glued;
  if (t <= 0) {
    glued = eval_model2(p, y);
  } else if (t >= 1) {
    glued = eval_model1(p, y);
  } else {
    EvalResult m1 = eval_model1(p, y), m2 = eval_model2(p, y);
    double chi = sstep(t), dchi = dsstep(t), ddchi = ddsstep(t);
    Vec2 gt{1, -p.c.eta};
    EvalResult e;
    double d = m1.rho - m2.rho;
    e.rho = chi * m1.rho + (1 - chi) * m2.rho;
    e.grad = {chi * m1.grad[0] + (1 - chi) * m2.grad[0] + dchi * gt[0] * d,
              chi * m1.grad[1] + (1 - chi) * m2.grad[1] + dchi * gt[1] * d};
    e.hess = {{{0, 0}, {0, 0}}};
    axpy(chi, m1.hess, e.hess);
    axpy(1 - chi, m2.hess, e.hess);
    axpy(ddchi * d, outer(gt, gt), e.hess);
    Vec2 gd{m1.grad[0] - m2.grad[0], m1.grad[1] - m2.grad[1]};
    axpy(dchi, sym_outer(gt, gd), e.hess);
    e.region = Region::glue_band;
    glued = e;
  }

  EvalResult inter = eval_interior(p, y, p.wmats);
  double d = glued.rho - inter.rho;
  // Mollified max over the band |d| < c, c = eps * max(|glued|, |inter|, 1);
  // rho = inter + theta(s) d with s = d/(2c) + 1/2. The derivatives carry the
  // exact chain-rule terms of s (including the scale factor) within each
  // branch of the max, so the splice is C^2 away from branch switches.
  double eps = p.c.blend_eps;
  double m1a = std::fabs(glued.rho), m2a = std::fabs(inter.rho);
  double c;
  Vec2 gc;
  Mat2 hc;
  if (m1a >= m2a && m1a >= 1.0) {
    double sg = glued.rho < 0 ? -1.0 : 1.0;
    c = eps * m1a;
    gc = {eps * sg * glued.grad[0], eps * sg * glued.grad[1]};
    hc = glued.hess;
    for (auto& row : hc)
      for (auto& v : row) v *= eps * sg;
  } else if (m2a >= 1.0) {
    double sg = inter.rho < 0 ? -1.0 : 1.0;
    c = eps * m2a;
    gc = {eps * sg * inter.grad[0], eps * sg * inter.grad[1]};
    hc = inter.hess;
    for (auto& row : hc)
      for (auto& v : row) v *= eps * sg;
  } else {
    c = eps;
    gc = {0, 0};
    hc = {{{0, 0}, {0, 0}}};
  }
  if (d >= c) return glued;
  if (d <= -c) return inter;
  double s = (d / c + 1) / 2;
  double th = sstep(s), th1 = dsstep(s), th2 = ddsstep(s);
  Vec2 gd{glued.grad[0] - inter.grad[0], glued.grad[1] - inter.grad[1]};
  Mat2 hd{};
  axpy(1.0, glued.hess, hd);
  axpy(-1.0, inter.hess, hd);
  // grad s and hess s.
  Vec2 gs{gd[0] / (2 * c) - d * gc[0] / (2 * c * c),
          gd[1] / (2 * c) - d * gc[1] / (2 * c * c)};
  Mat2 hs{};
  axpy(1.0 / (2 * c), hd, hs);
  axpy(-1.0 / (2 * c * c), sym_outer(gd, gc), hs);
  axpy(d / (c * c * c), outer(gc, gc), hs);
  axpy(-d / (2 * c * c), hc, hs);
  EvalResult e;
  e.rho = inter.rho + th * d;
  e.grad = {inter.grad[0] + th * gd[0] + th1 * d * gs[0],
            inter.grad[1] + th * gd[1] + th1 * d * gs[1]};
  e.hess = inter.hess;
  axpy(th, hd, e.hess);
  axpy(th1, sym_outer(gs, gd), e.hess);
  axpy(th2 * d, outer(gs, gs), e.hess);
  axpy(th1 * d, hs, e.hess);
  e.region = Region::blend;
  return e;
}

}  // namespace

EvalResult evaluate(const GluedPotential& p, const std::array<double, 2>& x) {
  auto red = weyl_reduce(p.fd.sys, x);
  Vec2 y{chamber_coord(red.p[0]), chamber_coord(red.p[1])};
  EvalResult e = eval_chamber(p, y);
  const auto& A = red.map;
  Vec2 g{A[0][0] * e.grad[0] + A[1][0] * e.grad[1],
         A[0][1] * e.grad[0] + A[1][1] * e.grad[1]};
  Mat2 h{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += A[a][i] * e.hess[a][b] * A[b][j];
      h[i][j] = s;
    }
  e.grad = g;
  e.hess = h;
  return e;
}

// --- Monge-Ampere residual ---------------------------------------------------

namespace {

double residual_core(const RestrictedRootSystem& S, const EvalResult& e,
                     const Vec2& y, double C) {
  double detH = e.hess[0][0] * e.hess[1][1] - e.hess[0][1] * e.hess[1][0];
  if (!(detH > 0) || !(e.hess[0][0] > 0))
    return std::numeric_limits<double>::quiet_NaN();
  double detG = (S.gram[0][0] * S.gram[1][1] - S.gram[0][1] * S.gram[0][1])
                    .to_double();
  double res = std::log(detH * detG) - std::log(C);
  double g11 = S.gram[0][0].to_double(), g12 = S.gram[0][1].to_double(),
         g22 = S.gram[1][1].to_double();
  for (const auto& r : S.roots) {
    double q1 = r.c1, q2 = r.c2;
    if (r.doubled) { q1 /= 2; q2 /= 2; }
    double pair = (q1 * g11 + q2 * g12) * e.grad[0] +
                  (q1 * g12 + q2 * g22) * e.grad[1];
    double val = r.c1 * y[0] + r.c2 * y[1];
    if (!(pair > 0) || !(val > 0))
      return std::numeric_limits<double>::quiet_NaN();
    res += double(r.mult) * (std::log(pair) - lsinh(val));
  }
  return res;
}

}  // namespace

double ma_residual(const GluedPotential& p, const std::array<double, 2>& x,
                   double C) {
  auto red = weyl_reduce(p.fd.sys, x);
  Vec2 y{chamber_coord(red.p[0]), chamber_coord(red.p[1])};
  EvalResult e = eval_chamber(p, y);
  return residual_core(p.fd.sys, e, y, C);
}

double ma_residual(const RestrictedRootSystem& rs,
                   const std::function<EvalResult(std::array<double, 2>)>& f,
                   const std::array<double, 2>& x, double C) {
  return residual_core(rs, f(x), {x[0], x[1]}, C);
}

double ma_residual_1d(long m1, long m2, double C, double x, double drho,
                      double ddrho) {
  return std::log(ddrho) + double(m1 + m2) * std::log(drho) - std::log(C) -
         double(m1) * lsinh(x) - double(m2) * lsinh(2 * x);
}

MetricSample metric_sample(const GluedPotential& p,
                           const std::array<double, 2>& x) {
  auto red = weyl_reduce(p.fd.sys, x);
  Vec2 y{chamber_coord(red.p[0]), chamber_coord(red.p[1])};
  EvalResult e = eval_chamber(p, y);
  MetricSample m;
  m.hess = e.hess;
  const auto& S = p.fd.sys;
  double g11 = S.gram[0][0].to_double(), g12 = S.gram[0][1].to_double(),
         g22 = S.gram[1][1].to_double();
  for (const auto& r : S.roots) {
    double val = r.c1 * y[0] + r.c2 * y[1];
    double pair = (r.c1 * g11 + r.c2 * g12) * e.grad[0] +
                  (r.c1 * g12 + r.c2 * g22) * e.grad[1];
    m.weights.push_back({{r.c1, r.c2}, std::tanh(val / 2) * pair});
  }
  m.beta = std::log(e.rho);
  m.r = 2 * std::exp(m.beta / 2);
  return m;
}

}  // namespace rfsym
