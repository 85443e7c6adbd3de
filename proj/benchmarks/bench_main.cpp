#include <benchmark/benchmark.h>

#include "dciga/assembly.hpp"
#include "dciga/eigensolve.hpp"
#include "dciga/tensorize.hpp"

using namespace dciga;

namespace {

void BM_AssembleDc(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SplineSpace sp(p, BreakpointGrid::uniform(static_cast<std::size_t>(state.range(1))));
  const PenaltyConfig cfg = PenaltyConfig::defaults(ProblemKind::Dirichlet, p);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dc(sp, cfg));
}
BENCHMARK(BM_AssembleDc)->Args({3, 100})->Args({6, 100})->Args({3, 400});

void BM_Gevp(benchmark::State& state) {
  const SplineSpace sp(3, BreakpointGrid::uniform(static_cast<std::size_t>(state.range(0))));
  const MatrixPair pair = assemble_dc(sp, PenaltyConfig::defaults(ProblemKind::Dirichlet, 3));
  const bool vectors = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(gevp(pair, vectors));
}
BENCHMARK(BM_Gevp)->Args({64, 0})->Args({64, 1})->Args({200, 0})->Unit(benchmark::kMillisecond);

void BM_SeparableSpectrum3d(benchmark::State& state) {
  const SplineSpace sp(3, BreakpointGrid::uniform(static_cast<std::size_t>(state.range(0))));
  const MatrixPair pair = assemble_dc(sp, PenaltyConfig::defaults(ProblemKind::Dirichlet, 3));
  const Spectrum s = gevp(pair, false);
  const TensorSystem t({pair, pair, pair});
  const std::vector<Spectrum> per{s, s, s};
  for (auto _ : state) benchmark::DoNotOptimize(separable_spectrum(t, per));
}
BENCHMARK(BM_SeparableSpectrum3d)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_DenseKronSum2d(benchmark::State& state) {
  const SplineSpace sp(3, BreakpointGrid::uniform(static_cast<std::size_t>(state.range(0))));
  const MatrixPair pair = assemble_standard(sp, ProblemKind::Dirichlet);
  const TensorSystem t({pair, pair});
  for (auto _ : state) benchmark::DoNotOptimize(gevp(kron_sum_matrices(t), false));
}
BENCHMARK(BM_DenseKronSum2d)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
