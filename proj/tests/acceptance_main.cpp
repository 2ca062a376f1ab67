// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries a wall-clock budget that is part of the
// verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rfsym/ansatz.hpp"
#include "rfsym/catalog.hpp"
#include "rfsym/criterion.hpp"
#include "rfsym/ode.hpp"

using namespace rfsym;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, double secs, double budget,
            const std::string& detail) {
  bool in_budget = secs <= budget;
  bool pass = ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%d/9] %-28s %s (%.2f s / budget %.0f s)%s%s\n", idx, name,
              pass ? "PASS" : "FAIL", secs, budget,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (ok && !in_budget)
    std::printf("      checks passed but the time budget was exceeded\n");
  std::fflush(stdout);
}

template <typename F>
void run(int idx, const char* name, double budget, F body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  report(idx, name, ok, secs, budget, detail);
}

// Deterministic uniform variates in [0, 1) (64-bit LCG, fixed seed).
struct Lcg {
  unsigned long long s = 0x9e3779b97f4a7c15ULL;
  double next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(s >> 11) / 9007199254740992.0;
  }
};

// The closed-form model solution rho = cosh(y1 + y2) + cosh(y2) on BC2.
EvalResult bc2_cosh(std::array<double, 2> y) {
  double c1 = std::cosh(y[0] + y[1]), s1 = std::sinh(y[0] + y[1]);
  double c2 = std::cosh(y[1]), s2 = std::sinh(y[1]);
  EvalResult e;
  e.rho = c1 + c2;
  e.grad = {s1, s1 + s2};
  e.hess = {{{c1, c1}, {c1, c1 + c2}}};
  return e;
}

bool crit1_exact_values(std::string& detail) {
  struct BetaCase {
    long m1, m2, m3;
    Rational first, second;
  };
  const BetaCase beta_cases[] = {
      {2, 2, 0, Rational(41, 1260), Rational(1, 140)},
      {3, 4, 0, Rational(43, 7700), Rational(83, 30030)},
      {4, 4, 1, Rational(101, 63063), Rational(2533, 1801800)},
      {6, 8, 1, Rational(5513, 70114902), Rational(63407, 743642900)},
  };
  for (const auto& c : beta_cases) {
    auto m = beta_condition_margins(c.m1, c.m2, c.m3);
    if (m.first != c.first || m.second != c.second) {
      detail = "beta_condition_margins mismatch at (" + std::to_string(c.m1) +
               "," + std::to_string(c.m2) + "," + std::to_string(c.m3) + ")";
      return false;
    }
  }
  auto g1 = condG2_margins(1);
  if (g1.first != Rational(12879, 1792) ||
      g1.second != Rational(-171875, 435456)) {
    detail = "condG2_margins(1) mismatch";
    return false;
  }
  auto g2 = condG2_margins(2);
  if (g2.first != Rational(192283227, 308) ||
      g2.second != Rational(-79443359375LL, 6062364)) {
    detail = "condG2_margins(2) mismatch";
    return false;
  }
  if (condition_quotient_cii(4) != Rational(385, 256)) {
    detail = "condition_quotient_cii(4) mismatch";
    return false;
  }
  return true;
}

bool crit2_catalog_verdicts(std::string& detail) {
  // Expected injectivity verdicts (a1 <= a0) for the B2/BC2 catalog rows,
  // keyed by (name, facet); A2 rows are always false and G2 rows always true.
  struct Inj {
    const char* name;
    bool f1, f2;
  };
  const Inj bc_expect[] = {
      {"SL5/S(GL2xGL3)", true, true}, {"Sp10/Sp4xSp6", false, false},
      {"SO10/GL5", true, false},      {"E6/SO10xSO2", true, false},
      {"SO5/S(O2xO3)", true, true},   {"SO5xSO5/SO5", true, false},
      {"Sp8/Sp4xSp4", true, false},
  };
  auto entries = catalog_all();
  if (entries.size() != 13) {
    detail = "catalog size " + std::to_string(entries.size()) + " != 13";
    return false;
  }
  for (const auto& e : entries) {
    for (int f = 1; f <= 2; ++f) {
      auto fd = facet(e.system(), f);
      bool ke = ke_exists(fd);
      bool ke_expect = !(e.kind == RootSystemKind::G2 && f == 1);
      if (ke != ke_expect) {
        detail = "ke verdict mismatch for " + e.name + " facet " +
                 std::to_string(f);
        return false;
      }
      auto c = ansatz_constants(fd);
      bool inj = !(c.a1 > c.a0);
      bool inj_expect;
      if (e.kind == RootSystemKind::A2) {
        inj_expect = false;
      } else if (e.kind == RootSystemKind::G2) {
        inj_expect = true;
      } else {
        inj_expect = false;
        bool found = false;
        for (const auto& x : bc_expect)
          if (e.name == x.name) {
            inj_expect = (f == 1) ? x.f1 : x.f2;
            found = true;
          }
        if (!found) {
          detail = "no injectivity expectation recorded for " + e.name;
          return false;
        }
      }
      if (inj != inj_expect) {
        detail = "a1<=a0 verdict mismatch for " + e.name + " facet " +
                 std::to_string(f);
        return false;
      }
    }
  }
  return true;
}

bool crit3_family_sweeps(std::string& detail) {
  for (long r = 5; r <= 50; ++r) {
    auto aiii = beta_condition_margins(2, 2 * r - 8, 1);
    auto cii = beta_condition_margins(4, 4 * r - 16, 3);
    auto bdi = beta_condition_margins(1, r - 4, 0);
    if (!(aiii.first > Rational(0)) || !(aiii.second > Rational(0)) ||
        !(cii.first > Rational(0)) || !(cii.second > Rational(0)) ||
        !(bdi.first > Rational(0)) || !(bdi.second > Rational(0))) {
      detail = "non-positive family margin at r = " + std::to_string(r);
      return false;
    }
  }
  for (long m : {1L, 2L, 4L, 8L})
    if (!(condA_margin(m) > Rational(0))) {
      detail = "condA_margin(" + std::to_string(m) + ") not positive";
      return false;
    }
  Rational prev = condition_quotient_cii(4);
  for (long m = 5; m <= 20; ++m) {
    Rational q = condition_quotient_cii(m);
    if (!(q > prev)) {
      detail = "condition_quotient_cii not increasing at m = " +
               std::to_string(m);
      return false;
    }
    prev = q;
  }
  return true;
}

bool crit4_stenzel(std::string& detail) {
  GridSpec gs{15.0, 160, 0.02};
  for (long m1 : {2L, 4L}) {
    auto s = stenzel_solve(m1, 1, 0.5, gs);
    double worst = 0;
    for (size_t i = 0; i < s.grid.size(); ++i) {
      double sh = std::sinh(s.grid[i]);
      worst = std::max(worst, std::abs(s.du[i] - sh) / (1 + sh));
    }
    if (worst >= 1e-10) {
      detail = "m1 = " + std::to_string(m1) +
               " profile deviates from sinh: " + std::to_string(worst);
      return false;
    }
  }
  return true;
}

bool crit5_cosh_anchor(std::string& detail) {
  for (auto mults : {std::vector<long>{2, 2, 1}, std::vector<long>{2, 4, 1}}) {
    auto rs = build_system(RootSystemKind::BC2, mults);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        double a = 0.5 + 4.5 * i / 19.0, b = 0.5 + 4.5 * j / 19.0;
        double r = ma_residual(rs, bc2_cosh, {a, b}, 0.25);
        if (!std::isfinite(r) || std::fabs(r) >= 1e-8) {
          detail = "residual " + std::to_string(r) + " at grid node (" +
                   std::to_string(i) + "," + std::to_string(j) + ")";
          return false;
        }
      }
  }
  return true;
}

// Shared with criterion 9 (Legendre duality uses the t = 1 solution).
ODESolution g_b2_solution;

bool crit6_continuity(std::string& detail) {
  auto b2 = build_system(RootSystemKind::B2, {2, 2, 0});
  auto fd = facet(b2, 1);
  auto r = continuity_solve(fd, 1.0);
  if (!r.solution) {
    detail = "B2 (2,2,0) facet 1 did not reach t = 1";
    return false;
  }
  const auto& s = *r.solution;
  g_b2_solution = s;
  double res = ode_residual(s, fd, 1.0);
  if (res >= 1e-7) {
    detail = "ode residual " + std::to_string(res);
    return false;
  }
  auto [mass, moment] = integral_identities(s, fd, 1.0);
  double V = fd.V.to_double();
  double M1 = (fd.V * fd.bar_dh).to_double();
  if (std::abs(mass - V) >= 1e-4 * V ||
      std::abs(moment - M1) >= 1e-4 * M1) {
    detail = "integral identities off: mass rel " +
             std::to_string(std::abs(mass - V) / V) + ", moment rel " +
             std::to_string(std::abs(moment - M1) / M1);
    return false;
  }
  auto fit = expansion_fit(s, 4);
  if (fit.size() < 2) {
    detail = "expansion fit returned fewer than two terms";
    return false;
  }
  double lead = fit[1].first, del = fd.delta.to_double();
  if (std::abs(lead - del) >= 0.01 * del) {
    detail = "leading exponent " + std::to_string(lead) + " vs delta " +
             std::to_string(del);
    return false;
  }
  // Negative-margin G2 facet: stall within 0.05 of the exact bound.
  auto g2 = build_system(RootSystemKind::G2, {1});
  auto gfd = facet(g2, 1);
  Rational tb = (gfd.lambda - Rational(gfd.n1) - Rational(2 * gfd.n2)) /
                (gfd.lambda - gfd.bar_dh);
  GridSpec coarse{0.0, 80, 0.05};
  auto gr = continuity_solve(gfd, 1.0, coarse);
  if (!gr.stall) {
    detail = "G2 m=1 facet 1 unexpectedly reached t = 1";
    return false;
  }
  if (gr.stall->t_bound_exact != tb) {
    detail = "stall report bound " + gr.stall->t_bound_exact.str() +
             " != exact " + tb.str();
    return false;
  }
  double gap = tb.to_double() - gr.stall->t_achieved;
  if (!(gap > 0 && gap < 0.05)) {
    detail = "stall t " + std::to_string(gr.stall->t_achieved) +
             " not within 0.05 below bound " + tb.str();
    return false;
  }
  return true;
}

// Built potentials, shared by criteria 7-9.
std::vector<std::pair<std::string, GluedPotential>> g_potentials;

bool check_decay(const GluedPotential& p, const std::string& name,
                 std::string& detail) {
  auto rm = residual_map(p, 4.0, 16.0, 16);
  double a1 = p.c.geo.a1.to_double();
  if (!(rm.ray_alpha2.slope <= -2.0 + 0.1)) {
    detail = name + ": alpha2-ray slope " + std::to_string(rm.ray_alpha2.slope);
    return false;
  }
  if (!(rm.ray_alpha1.slope <= -a1 + 0.1)) {
    detail = name + ": alpha1-ray slope " + std::to_string(rm.ray_alpha1.slope) +
             " vs rate " + std::to_string(a1);
    return false;
  }
  for (const auto& smp : rm.samples)
    if (!(smp.min_eig > 0)) {
      detail = name + ": non-positive Hessian eigenvalue at (" +
               std::to_string(smp.p[0]) + "," + std::to_string(smp.p[1]) + ")";
      return false;
    }
  return true;
}

bool crit7_residual_decay(std::string& detail) {
  // Both spaces have positive margins on facet 1.
  g_potentials.emplace_back(
      "B2 (2,2,0)", build_glued(build_system(RootSystemKind::B2, {2, 2, 0}), 1));
  g_potentials.emplace_back(
      "SL5/S(GL2xGL3) facet 1",
      build_glued(build_system(RootSystemKind::BC2, {2, 2, 1}), 1));
  for (const auto& [name, p] : g_potentials)
    if (!check_decay(p, name, detail)) return false;
  return true;
}

bool crit8_expansion_matching(std::string& detail) {
  // Add further facet types so the matching claim is exercised beyond the
  // decay-suite pair: a k = 3 fiber and the positive G2 facet.
  g_potentials.emplace_back(
      "Sp8/Sp4xSp4 facet 1",
      build_glued(build_system(RootSystemKind::B2, {3, 4, 0}), 1));
  g_potentials.emplace_back(
      "G2/SO4 facet 2", build_glued(build_system(RootSystemKind::G2, {1}), 2));
  for (const auto& [name, p] : g_potentials) {
    double a1 = p.c.geo.a1.to_double();
    if (std::abs(p.c.a1_fit - a1) >= 0.02 * a1) {
      detail = name + ": fitted decay rate " + std::to_string(p.c.a1_fit) +
               " vs " + std::to_string(a1);
      return false;
    }
    if (std::abs(p.c.K2 - p.c.K2_w) >= 0.02 * std::abs(p.c.K2)) {
      detail = name + ": K2 " + std::to_string(p.c.K2) +
               " vs fiber growth coefficient " + std::to_string(p.c.K2_w);
      return false;
    }
  }
  return true;
}

bool crit9_properties(std::string& detail) {
  // Legendre duality on the t = 1 solution from criterion 6: at y = u'(x)
  // the supremum defining v is attained, so u(x) + v(y) = x y.
  const auto& s = g_b2_solution;
  if (s.grid.empty()) {
    detail = "continuity solution unavailable (criterion 6 failed earlier)";
    return false;
  }
  size_t n = s.grid.size();
  for (size_t i = n / 20; i < n - n / 10; i += n / 50) {
    double x = s.grid[i], y = s.du[i];
    double gap = std::abs(s.u[i] + legendre_value(s, y) - x * y);
    if (gap >= 1e-4) {
      detail = "Legendre duality gap " + std::to_string(gap) + " at x = " +
               std::to_string(x);
      return false;
    }
  }
  const auto& p = g_potentials.front().second;
  // Weyl invariance at 100 reflected pairs away from the origin.
  Lcg rng;
  for (int i = 0; i < 100; ++i) {
    std::array<double, 2> x{2.0 + 12.0 * rng.next(), 2.0 + 12.0 * rng.next()};
    const auto& A = p.wmats[i % p.wmats.size()];
    std::array<double, 2> xr{A[0][0] * x[0] + A[0][1] * x[1],
                             A[1][0] * x[0] + A[1][1] * x[1]};
    double r0 = evaluate(p, x).rho, r1 = evaluate(p, xr).rho;
    if (std::abs(r0 - r1) >= 1e-10 * std::max(1.0, std::abs(r0))) {
      detail = "Weyl invariance violated at sample " + std::to_string(i);
      return false;
    }
  }
  // Gradient vs central finite differences at 50 random points.
  for (int i = 0; i < 50; ++i) {
    std::array<double, 2> x{1.0 + 13.0 * rng.next(), 1.0 + 13.0 * rng.next()};
    auto e = evaluate(p, x);
    for (int d = 0; d < 2; ++d) {
      double h = 1e-5;
      auto lo = x, hi = x;
      lo[d] -= h;
      hi[d] += h;
      double fd = (evaluate(p, hi).rho - evaluate(p, lo).rho) / (2 * h);
      double rel = std::abs(e.grad[d] - fd) / std::max(1.0, std::abs(fd));
      if (rel >= 1e-6) {
        detail = "gradient relative error " + std::to_string(rel) + " at (" +
                 std::to_string(x[0]) + "," + std::to_string(x[1]) + ")";
        return false;
      }
    }
  }
  // Manufactured-solution recovery for the radial fiber Laplacian.
  GridSpec gs{12.0, 160, 0.02};
  auto w = stenzel_solve(2, 1, 0.5, gs);  // w' = sinh, w'' = cosh
  size_t m = w.grid.size();
  double d2 = 3.0;
  std::vector<double> g(m), fref(m);
  for (size_t i = 0; i < m; ++i) {
    double x = w.grid[i];
    double f = std::exp(-x * x / 4);
    double fp = -0.5 * x * f;
    double fpp = (-0.5 + 0.25 * x * x) * f;
    fref[i] = f - 1.0;
    g[i] = fpp / std::cosh(x) +
           (x > 0 ? (d2 - 1) * fp / std::sinh(x) : (d2 - 1) * fpp);
  }
  auto f = solve_delta2(w, g, d2);
  double worst = 0;
  for (size_t i = 0; i < m; ++i)
    worst = std::max(worst, std::abs(f[i] - fref[i]));
  if (worst >= 1e-5) {
    detail = "manufactured-solution error " + std::to_string(worst);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  run(1, "exact-rational regression", 1, crit1_exact_values);
  run(2, "catalog verdicts", 1, crit2_catalog_verdicts);
  run(3, "family sweeps", 30, crit3_family_sweeps);
  run(4, "fiber profile closed form", 1, crit4_stenzel);
  run(5, "cosh model anchor", 1, crit5_cosh_anchor);
  run(6, "continuity solver", 180, crit6_continuity);
  run(7, "ansatz residual decay", 600, crit7_residual_decay);
  run(8, "expansion matching", 120, crit8_expansion_matching);
  run(9, "property suite", 60, crit9_properties);
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
