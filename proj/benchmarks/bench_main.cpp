#include <random>

#include <benchmark/benchmark.h>

#include "spectra_cert/bernstein.hpp"
#include "spectra_cert/enumerate.hpp"
#include "spectra_cert/graph.hpp"
#include "spectra_cert/interval_cert.hpp"
#include "spectra_cert/matching.hpp"
#include "spectra_cert/spectral.hpp"

using namespace spectra_cert;

static void BM_AdjacencySpectrumCycle(benchmark::State& state) {
  const Graph g = make_cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adjacency_spectrum(g));
}
BENCHMARK(BM_AdjacencySpectrumCycle)->Arg(8)->Arg(32)->Arg(64);

static void BM_PEnergyRandomBipartite(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Graph g = random_connected_bipartite(static_cast<int>(state.range(0)), 0.3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(p_energy(g, 3.5));
}
BENCHMARK(BM_PEnergyRandomBipartite)->Arg(8)->Arg(16)->Arg(32);

static void BM_MatchingPolyTree(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Graph t = random_tree(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(matching_poly(t));
}
BENCHMARK(BM_MatchingPolyTree)->Arg(10)->Arg(20)->Arg(40);

static void BM_GramCharpolyTree(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Graph t = random_tree(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(gram_charpoly(t));
}
BENCHMARK(BM_GramCharpolyTree)->Arg(10)->Arg(20);

static void BM_EnumerateConnected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_connected(n, GraphClass::all));
}
BENCHMARK(BM_EnumerateConnected)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_EnumerateTrees(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_connected(n, GraphClass::trees));
}
BENCHMARK(BM_EnumerateTrees)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_BernsteinAppendixC(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_appendix_c());
}
BENCHMARK(BM_BernsteinAppendixC)->Unit(benchmark::kMillisecond);

static void BM_IntervalAppendixA(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_appendix_a(static_cast<mpfr_prec_t>(state.range(0))));
}
BENCHMARK(BM_IntervalAppendixA)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
