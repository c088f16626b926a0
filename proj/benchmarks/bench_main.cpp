#include <benchmark/benchmark.h>

#include "suites.hpp"

using namespace cmdef;
using namespace cmdef::cli;

namespace {

void BM_VeroneseRing(benchmark::State& state) {
  for (auto _ : state) {
    RingPtr A = veronese_ring(int(state.range(0)));
    benchmark::DoNotOptimize(A->gb().size());
  }
}
BENCHMARK(BM_VeroneseRing)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_ResolveResidueField(benchmark::State& state) {
  RingPtr A = veronese_ring(int(state.range(0)));
  Module k = residue_field_module(A);
  for (auto _ : state) benchmark::DoNotOptimize(resolve(k, kDefaultSteps).length());
}
BENCHMARK(BM_ResolveResidueField)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ApproximateResidueField(benchmark::State& state) {
  RingPtr A = veronese_ring(int(state.range(0)));
  Module k = residue_field_module(A);
  for (auto _ : state) benchmark::DoNotOptimize(mu(mcm_approx_cm(k, 2).M));
}
BENCHMARK(BM_ApproximateResidueField)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ExtOfApproximation(benchmark::State& state) {
  RingPtr A = veronese_ring(int(state.range(0)));
  Module M = mcm_approx_cm(residue_field_module(A), 2).M;
  for (auto _ : state) benchmark::DoNotOptimize(ext_dim(1, M, M));
}
BENCHMARK(BM_ExtOfApproximation)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_ObstructionSuites(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_suites(int(state.range(0))).lifting.identities.size());
}
BENCHMARK(BM_ObstructionSuites)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_KnorrerSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(knorrer_suite(state.range(0) == 2 ? "x^2" : "x^3").ok());
}
BENCHMARK(BM_KnorrerSuite)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
