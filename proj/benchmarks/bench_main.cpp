#include <benchmark/benchmark.h>

#include "rfsym/ansatz.hpp"
#include "rfsym/catalog.hpp"
#include "rfsym/criterion.hpp"
#include "rfsym/facet.hpp"
#include "rfsym/ode.hpp"

using namespace rfsym;

static void BM_FacetConstruction(benchmark::State& state) {
  auto rs = build_system(RootSystemKind::BC2, {4, 4 * state.range(0) - 16, 3});
  for (auto _ : state) {
    auto fd = facet(rs, 1);
    benchmark::DoNotOptimize(fd.bar_dh);
  }
}
BENCHMARK(BM_FacetConstruction)->Arg(5)->Arg(15)->Arg(40);

static void BM_BetaMargins(benchmark::State& state) {
  long r = state.range(0);
  for (auto _ : state) {
    auto m = beta_condition_margins(4, 4 * r - 16, 3);
    benchmark::DoNotOptimize(m.first);
  }
}
BENCHMARK(BM_BetaMargins)->Arg(5)->Arg(15)->Arg(40);

static void BM_HexMargins(benchmark::State& state) {
  for (auto _ : state) {
    auto m = condG2_margins(state.range(0));
    benchmark::DoNotOptimize(m.second);
  }
}
BENCHMARK(BM_HexMargins)->Arg(1)->Arg(2)->Arg(3);

static void BM_ReferenceSolve(benchmark::State& state) {
  auto fd = facet(build_system(RootSystemKind::B2, {2, 2, 0}), 1);
  for (auto _ : state) {
    auto s = solve_t0(fd, {});
    benchmark::DoNotOptimize(s.u.back());
  }
}
BENCHMARK(BM_ReferenceSolve)->Unit(benchmark::kMillisecond);

static void BM_FiberProfile(benchmark::State& state) {
  GridSpec gs{15.0, 160, 0.02};
  for (auto _ : state) {
    auto s = stenzel_solve(state.range(0), 1, 0.5, gs);
    benchmark::DoNotOptimize(s.du.back());
  }
}
BENCHMARK(BM_FiberProfile)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Evaluate(benchmark::State& state) {
  static const GluedPotential p =
      build_glued(build_system(RootSystemKind::B2, {2, 2, 0}), 1);
  double a = 0.5;
  for (auto _ : state) {
    a = (a < 14.0) ? a + 0.37 : 0.5;  // walk through all evaluation regions
    auto e = evaluate(p, {a, 14.5 - a});
    benchmark::DoNotOptimize(e.hess);
  }
}
BENCHMARK(BM_Evaluate);

static void BM_Residual(benchmark::State& state) {
  static const GluedPotential p =
      build_glued(build_system(RootSystemKind::B2, {2, 2, 0}), 1);
  double c = p.c.geo.c_model.to_double();
  double a = 4.0;
  for (auto _ : state) {
    a = (a < 14.0) ? a + 0.37 : 4.0;
    benchmark::DoNotOptimize(ma_residual(p, {a, 18.0 - a}, c));
  }
}
BENCHMARK(BM_Residual);

BENCHMARK_MAIN();
