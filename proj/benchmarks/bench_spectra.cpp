#include <benchmark/benchmark.h>

#include "monopole/heunspec.hpp"
#include "monopole/mixing.hpp"
#include "monopole/oracle.hpp"
#include "monopole/radial.hpp"
#include "monopole/specfun.hpp"

using namespace monopole;

namespace {

Scenario lob_coulomb() {
  Scenario sc;
  sc.geometry = Geometry::Lobachevsky;
  sc.potential = PotentialKind::Coulomb;
  sc.alpha = 10;
  sc.M = 1;
  return sc;
}

void BM_MixingRoots(benchmark::State& state) {
  const auto k = MonopoleCharge::from_twice(2);
  const HalfInt j = HalfInt::integer(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto inv = cubic_invariants(j, k);
    const auto rt = roots(inv);
    benchmark::DoNotOptimize(transform_matrix(inv.c, inv.d, rt));
  }
}
BENCHMARK(BM_MixingRoots)->Arg(2)->Arg(20);

void BM_FdEigen(benchmark::State& state) {
  const auto p = build_problem(lob_coulomb(), Channel::ParityOdd, HalfInt::integer(0));
  const Grid g{0, 40, static_cast<int>(state.range(0))};
  FdOptions opt;
  opt.check_resolution = false;
  for (auto _ : state) benchmark::DoNotOptimize(fd_eigen(p, g, 3, opt));
}
BENCHMARK(BM_FdEigen)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_AnalyticSolution(benchmark::State& state) {
  const auto sc = lob_coulomb();
  const auto p = build_problem(sc, Channel::ParityOdd, HalfInt::integer(1));
  const auto lv = compute_level(sc, HalfInt::integer(1), 0, Channel::ParityOdd);
  const auto grid = uniform_grid(1e-3, 20, 20000);
  for (auto _ : state) {
    const auto s = analytic_solution(p, lv, grid);
    benchmark::DoNotOptimize(residual(p, s, lv));
  }
}
BENCHMARK(BM_AnalyticSolution)->Unit(benchmark::kMillisecond);

void BM_HeunLocal(benchmark::State& state) {
  const auto set = heun_params_coulomb(-200, 50, 1, HalfInt::integer(1), Channel::Heun1);
  const double z = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(heun_local(set.params, z));
}
BENCHMARK(BM_HeunLocal)->Arg(-10)->Arg(-75)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
