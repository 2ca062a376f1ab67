#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rfsym/criterion.hpp"
#include "rfsym/ode.hpp"

using namespace rfsym;

namespace {

FacetData b2_facet() {
  auto b2 = build_system(RootSystemKind::B2, {2, 2, 0});
  return facet(b2, 1);
}

}  // namespace

TEST_CASE("reference normalization: mass post-check") {
  auto fd = b2_facet();
  double C = normalize_uref(fd);
  CHECK(std::isfinite(C));
  // The normalized reference density integrates to V.
  auto s0 = solve_t0(fd, {});
  auto ii = integral_identities(s0, fd, 0.0);
  CHECK(std::abs(ii.first / fd.V.to_double() - 1.0) < 1e-8);
}

TEST_CASE("t = 0 solution: residual, range, origin") {
  auto fd = b2_facet();
  auto s = solve_t0(fd, {});
  double lam = fd.lambda.to_double();
  CHECK(ode_residual(s, fd, 0.0) < 1e-8);
  CHECK(s.du.front() == 0.0);  // evenness
  CHECK(s.du.back() < lam);
  CHECK(lam - s.du.back() < 1e-6);
  // strict convexity on samples
  for (size_t i = 0; i + 1 < s.du.size(); ++i) CHECK(s.du[i] < s.du[i + 1]);
  // moment identities hold already at t = 0
  auto ii = integral_identities(s, fd, 0.0);
  CHECK(std::abs(ii.first / fd.V.to_double() - 1.0) < 1e-6);
  double moment = fd.V.to_double() * fd.bar_dh.to_double();
  CHECK(std::abs(ii.second / moment - 1.0) < 1e-6);
}

TEST_CASE("continuity: degenerate target reproduces t = 0") {
  auto fd = b2_facet();
  auto s0 = solve_t0(fd, {});
  auto r = continuity_solve(fd, 0.0, {});
  REQUIRE(r.solution.has_value());
  double worst = 0;
  for (size_t i = 0; i < s0.u.size(); ++i)
    worst = std::max(worst, std::abs(s0.u[i] - r.solution->u[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("continuity to t = 1 on a positive-margin facet") {
  auto fd = b2_facet();
  auto r = continuity_solve(fd, 1.0, {});
  REQUIRE(r.solution.has_value());
  const auto& s = *r.solution;
  double lam = fd.lambda.to_double();
  CHECK(ode_residual(s, fd, 1.0) < 1e-7);
  auto ii = integral_identities(s, fd, 1.0);
  CHECK(std::abs(ii.first / fd.V.to_double() - 1.0) < 1e-4);
  double moment = fd.V.to_double() * fd.bar_dh.to_double();
  CHECK(std::abs(ii.second / moment - 1.0) < 1e-4);
  // Bound respect: 1 < (lambda - n1 - 2 n2)/(lambda - barDH) for this facet.
  Rational tb = (fd.lambda - Rational(fd.n1) - Rational(2 * fd.n2)) /
                (fd.lambda - fd.bar_dh);
  CHECK(tb > Rational(1));
  // Tail exponent: independent log-slope oracle against delta = 2/3.
  double x1 = 8.0, x2 = 16.0;
  double slope = (std::log(lam - s.eval_du(x2)) - std::log(lam - s.eval_du(x1))) /
                 (x2 - x1);
  CHECK(std::abs(-slope - fd.delta.to_double()) < 0.01 * fd.delta.to_double());
  // Fitted expansion: constant first, leading exponent = delta, negative slope
  // coefficient for u' - lambda.
  REQUIRE(s.expansion.size() >= 2);
  CHECK(s.expansion[0].first == 0.0);
  CHECK(s.expansion[1].first == doctest::Approx(fd.delta.to_double()));
  CHECK(s.expansion[1].second > 0);  // u - lambda x approaches K00 from above
  // C2 comparability with the t = 0 member.
  auto s0 = solve_t0(fd, {});
  double rmax = 0, rmin = 1e300;
  for (size_t i = 0; i < s.grid.size(); ++i) {
    double q = s.ddu[i] / s0.ddu[i];
    rmax = std::max(rmax, q);
    rmin = std::min(rmin, q);
  }
  CHECK(rmax < 1e3);
  CHECK(rmin > 1e-3);
  // Legendre duality: sup |u_t - u_0| == sup |v_t - v_0| within 1e-4.
  double du_sup = 0;
  for (size_t i = 0; i < s.grid.size(); ++i)
    du_sup = std::max(du_sup, std::abs(s.u[i] - s0.u[i]));
  double dv_sup = 0;
  for (int j = 0; j <= 400; ++j) {
    double y = lam * (1 - 1e-4) * j / 400.0;
    dv_sup = std::max(dv_sup,
                      std::abs(legendre_value(s, y) - legendre_value(s0, y)));
  }
  CHECK(std::abs(du_sup - dv_sup) < 1e-4 * (1 + du_sup));
}

TEST_CASE("continuity stalls near the exact bound on a negative-margin facet") {
  auto g2 = build_system(RootSystemKind::G2, {1});
  auto fd = facet(g2, 1);
  Rational tb = (fd.lambda - Rational(fd.n1) - Rational(2 * fd.n2)) /
                (fd.lambda - fd.bar_dh);
  CHECK(tb == Rational(182, 215));
  GridSpec coarse{0.0, 80, 0.05};
  auto r = continuity_solve(fd, 1.0, coarse);
  REQUIRE(r.stall.has_value());
  CHECK(r.stall->t_bound_exact == tb);
  CHECK(r.stall->t_achieved < tb.to_double());
  CHECK(tb.to_double() - r.stall->t_achieved < 0.05);
  // Monotone continuity: finer grid never achieves less.
  GridSpec finer{0.0, 120, 0.03};
  auto r2 = continuity_solve(fd, 1.0, finer);
  REQUIRE(r2.stall.has_value());
  CHECK(r2.stall->t_achieved >= r.stall->t_achieved - 1e-9);
}

TEST_CASE("fiber profile: closed-form anchors and homogeneity") {
  GridSpec gs{15.0, 160, 0.02};
  for (long m1 : {2L, 4L}) {
    auto s = stenzel_solve(m1, 1, 0.5, gs);
    double worst = 0;
    for (size_t i = 0; i < s.grid.size(); ++i) {
      double sh = std::sinh(s.grid[i]);
      worst = std::max(worst, std::abs(s.du[i] - sh) / (1 + sh));
    }
    CHECK(worst < 1e-10);
    CHECK(stenzel_residual(s, m1, 1, 0.5) < 1e-12);
  }
  // Scaling C by s^{m1+m2+1} scales rho' by s.
  double sc = 1.7, p = std::pow(sc, 4.0);  // m1 + m2 + 1 = 4
  auto a = stenzel_solve(2, 1, 0.5, gs);
  auto b = stenzel_solve(2, 1, 0.5 * p, gs);
  for (size_t i = 0; i < a.grid.size(); i += 50)
    CHECK(b.du[i] == doctest::Approx(sc * a.du[i]).epsilon(1e-12));
}

TEST_CASE("residual evaluator: first-order sensitivity") {
  auto fd = b2_facet();
  auto s = solve_t0(fd, {});
  double base = ode_residual(s, fd, 0.0);
  auto perturb = [&](double eps) {
    ODESolution p = s;
    for (size_t i = 0; i < p.grid.size(); ++i) {
      double x = p.grid[i];
      p.u[i] += eps * x * x;
      p.du[i] += 2 * eps * x;
      p.ddu[i] += 2 * eps;
    }
    return ode_residual(p, fd, 0.0);
  };
  double r1 = perturb(1e-6), r2 = perturb(2e-6);
  CHECK(r1 > 100 * base);
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("expansion fit recovers synthetic data") {
  ODESolution s;
  double lam = 4.0, del = 2.0 / 3.0;
  s.lambda = Rational(4);
  s.delta = del;
  for (int i = 0; i <= 3000; ++i) {
    double x = 30.0 * i / 3000.0;
    s.grid.push_back(x);
    s.u.push_back(lam * x + 1.0 + 0.3 * std::exp(-del * x));
    s.du.push_back(lam - 0.3 * del * std::exp(-del * x));
    s.ddu.push_back(0.3 * del * del * std::exp(-del * x));
  }
  auto fit = expansion_fit(s, 3);
  REQUIRE(fit.size() >= 2);
  CHECK(fit[0].second == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit[1].first == doctest::Approx(del));
  CHECK(fit[1].second == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("radial fiber Laplacian solve") {
  GridSpec gs{12.0, 160, 0.02};
  auto w = stenzel_solve(2, 1, 0.5, gs);  // w' = sinh, w'' = cosh
  const size_t n = w.grid.size();
  // g = 0 -> f = 0
  std::vector<double> zero(n, 0.0);
  auto f0 = solve_delta2(w, zero, 3.0);
  for (double v : f0) CHECK(v == 0.0);
  // Manufactured solution: f = exp(-x^2/4); g = f''/w'' + (d2-1) f'/w'.
  double d2 = 3.0;
  std::vector<double> g(n), fref(n);
  for (size_t i = 0; i < n; ++i) {
    double x = w.grid[i];
    double f = std::exp(-x * x / 4);
    double fp = -0.5 * x * f;
    double fpp = (-0.5 + 0.25 * x * x) * f;
    fref[i] = f - 1.0;  // normalized to vanish at 0
    g[i] = fpp / std::cosh(x) + (x > 0 ? (d2 - 1) * fp / std::sinh(x)
                                       : (d2 - 1) * fpp);  // limit f'/w' -> f''/w''(0)=f''
  }
  auto f = solve_delta2(w, g, d2);
  double worst = 0;
  for (size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(f[i] - fref[i]));
  CHECK(worst < 1e-5);
  // d2 = 1 telescoping: Delta_2 f = f''/w''.
  auto f1 = solve_delta2(w, g, 1.0);
  // residual check by finite differences of f1 on interior uniform part
  double res = 0;
  for (size_t i = 200; i + 1 < n - 1; ++i) {
    double h1 = w.grid[i] - w.grid[i - 1], h2 = w.grid[i + 1] - w.grid[i];
    double fpp = 2 * (h1 * f1[i + 1] + h2 * f1[i - 1] - (h1 + h2) * f1[i]) /
                 (h1 * h2 * (h1 + h2));
    res = std::max(res, std::abs(fpp / w.ddu[i] - g[i]));
  }
  CHECK(res < 1e-3);
}
