#include <benchmark/benchmark.h>

#include "distspec/exact_oracle.hpp"
#include "distspec/greedy_cover.hpp"
#include "distspec/spectrum_qp.hpp"

using namespace distspec;

namespace {

CodeSpace hamming(std::size_t n) { return CodeSpace(BlockSpace(SymbolAlphabet::of_size(2), n), hamming_measure(2)); }

CodeSpace euclidean_grid(std::size_t m) {
  return CodeSpace(BlockSpace(SymbolAlphabet::of_size(m), 2), Functional{FunctionalForm::EuclideanGrid});
}

void BM_BuildHamming(benchmark::State& state) {
  const auto s = hamming(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ConfusabilityMatrix::build(s, Threshold::rational(3, 1)));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(s.size()));
}
BENCHMARK(BM_BuildHamming)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_BuildEuclideanGrid(benchmark::State& state) {
  const auto s = euclidean_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ConfusabilityMatrix::build(s, Threshold::rational(1, 2)));
}
BENCHMARK(BM_BuildEuclideanGrid)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OracleHamming(benchmark::State& state) {
  const auto s = hamming(static_cast<std::size_t>(state.range(0)));
  const auto conf = ConfusabilityMatrix::build(s, Threshold::rational(3, 1));
  const auto sym = search_symmetry(s);
  const bool use_symmetry = state.range(1) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(max_distance_code(conf, {}, use_symmetry ? &*sym : nullptr).code.size());
}
BENCHMARK(BM_OracleHamming)
    ->ArgsProduct({{6, 7}, {0, 1}})
    ->Args({8, 1})
    ->ArgNames({"n", "symmetry"})
    ->Unit(benchmark::kMillisecond);

void BM_OracleCircularGrid(benchmark::State& state) {
  const CodeSpace s(BlockSpace(SymbolAlphabet::of_size(static_cast<std::size_t>(state.range(0))), 2),
                    Functional{FunctionalForm::RectilinearModGrid});
  for (auto _ : state) benchmark::DoNotOptimize(exact_M(s, Threshold::rational(1, 3)));
}
BENCHMARK(BM_OracleCircularGrid)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_MinimizeSpectrum(benchmark::State& state) {
  const auto conf = ConfusabilityMatrix::build(hamming(static_cast<std::size_t>(state.range(0))), Threshold::rational(3, 1));
  QpConfig cfg;
  cfg.certify_max_vertices = 0;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_spectrum(conf, cfg).value);
}
BENCHMARK(BM_MinimizeSpectrum)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void BM_GreedyGrid(benchmark::State& state) {
  const auto s = euclidean_grid(static_cast<std::size_t>(state.range(0)));
  const auto conf = ConfusabilityMatrix::build(s, Threshold::rational(1, 2));
  const auto p = SimplexPoint::uniform(s.size());
  for (auto _ : state) benchmark::DoNotOptimize(greedy_code(p, conf).code.size());
}
BENCHMARK(BM_GreedyGrid)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
