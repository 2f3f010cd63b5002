// Serial reference against the OpenMP path for the level-n sweeps.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include "ifslab/kernels.hpp"
#include "ifslab/words.hpp"

using namespace ifslab;
using kernels::Exec;

namespace {

  Exec exec_of(benchmark::State const& state) {
    return state.range(1) == 0 ? Exec::serial : Exec::parallel;
  }

  void label(benchmark::State& state) {
    state.SetLabel(state.range(1) == 0 ? "serial" : "omp");
  }

  void BM_LevelMatrices(benchmark::State& state) {
    auto fam = make_family(Rational(1));
    auto n   = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::level_matrices(fam, n, exec_of(state)));
    }
    label(state);
  }

  void BM_LevelLogNorms(benchmark::State& state) {
    auto fam = make_family(Rational(1));
    auto n   = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::level_log_norms(fam, n, exec_of(state)));
    }
    label(state);
  }

  void BM_MaxDistortion(benchmark::State& state) {
    auto fam = make_family(Rational(1));
    auto n   = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::level_max_distortion(fam, n, exec_of(state)));
    }
    label(state);
  }

  void BM_SumOfPowers(benchmark::State& state) {
    auto logs = kernels::level_log_norms(make_family(Rational(1)), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::sum_of_powers(logs, 0.75, exec_of(state)));
    }
    label(state);
  }

  void BM_CountBoxes(benchmark::State& state) {
    auto cyl   = kernels::level_cylinders(make_family(Rational(1)), static_cast<std::size_t>(state.range(0)));
    auto width = make_rational(1, 100000);
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::count_boxes(cyl, width, exec_of(state)));
    }
    label(state);
  }

  void BM_MinPairDistance(benchmark::State& state) {
    auto                               fam = make_family(Rational(1));
    std::vector<std::vector<Rational>> rows;
    for (auto const& m : kernels::level_matrices(fam, static_cast<std::size_t>(state.range(0)))) {
      rows.push_back({m.a, m.b, m.c, m.d});
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::min_pair_distance(rows, {}, exec_of(state)));
    }
    label(state);
  }

}  // namespace

BENCHMARK(BM_LevelMatrices)->ArgsProduct({{6, 8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelLogNorms)->ArgsProduct({{6, 8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxDistortion)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SumOfPowers)->ArgsProduct({{8, 10, 12}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountBoxes)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinPairDistance)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
