#include <benchmark/benchmark.h>

#include "conecalc/cfk.hpp"
#include "conecalc/cobordism.hpp"
#include "conecalc/f2u.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/surgery.hpp"

using namespace conecalc;

static void BM_ConeHomology(benchmark::State& state) {
  const auto c = cfk::builtin("t34");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(surgery::cone_homology(c, n));
}
BENCHMARK(BM_ConeHomology)->Arg(1)->Arg(3)->Arg(7);

static void BM_VanishingReport(benchmark::State& state) {
  const auto c = cfk::builtin("t25");
  for (auto _ : state) benchmark::DoNotOptimize(cobordism::vanishing_report(c, 2));
}
BENCHMARK(BM_VanishingReport);

static void BM_TruncatedBoundary(benchmark::State& state) {
  const auto c = cfk::builtin("t34");
  const auto cone = surgery::build_cone(c, 2);
  const auto tower = f2u::homology(surgery::build_B(c).differential).representative(0);
  const auto z = cone.include_B(1, tower);
  const f2u::TruncatedSolver solver(cone.differential,
                                    f2u::truncation_bound(cone.differential.max_power(), 3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(solver.is_boundary(z));
}
BENCHMARK(BM_TruncatedBoundary);

static void BM_E8Rejection(benchmark::State& state) {
  const auto e8 = lattice::e8();
  for (auto _ : state) benchmark::DoNotOptimize(lattice::is_standard_diagonal(e8));
}
BENCHMARK(BM_E8Rejection);

static void BM_ScrambledSplit(benchmark::State& state) {
  const auto sc = lattice::scramble(lattice::IntMatrix::standard(6, 2), 99);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::handle_split_report(sc.matrix));
}
BENCHMARK(BM_ScrambledSplit);

BENCHMARK_MAIN();
