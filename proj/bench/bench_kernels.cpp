// Parallel kernels against the serial reference. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ordpat/analysis.hpp"
#include "ordpat/census.hpp"
#include "ordpat/reference.hpp"

namespace {

const std::vector<double>& series(std::size_t n) {
  static std::vector<double> data = [] {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(1'000'000);
    for (auto& x : v) x = u(rng);
    return v;
  }();
  static std::vector<double> view;
  view.assign(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(n));
  return view;
}

void census_args(benchmark::internal::Benchmark* b) {
  for (int d : {4, 6, 8})
    for (long n : {10'000L, 1'000'000L}) b->Args({d, n});
}

void BM_census_kernel(benchmark::State& state) {
  const auto& x = series(state.range(1));
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ordpat::build_census(x, d));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_census_reference(benchmark::State& state) {
  const auto& x = series(state.range(1));
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ordpat::reference::build_census(x, d));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Kernel>
void BM_curve(benchmark::State& state) {
  const auto& x = series(state.range(0));
  const auto grid = ordpat::prefix_grid(5, x.size(), {});
  for (auto _ : state) {
    if constexpr (Kernel)
      benchmark::DoNotOptimize(ordpat::forbidden_curve(x, 5, grid));
    else
      benchmark::DoNotOptimize(ordpat::reference::forbidden_curve(x, 5, grid));
  }
}

template <bool Kernel>
void BM_rolling(benchmark::State& state) {
  const auto& x = series(state.range(0));
  for (auto _ : state) {
    if constexpr (Kernel)
      benchmark::DoNotOptimize(ordpat::rolling_forbidden(x, 5, 200, 1));
    else
      benchmark::DoNotOptimize(ordpat::reference::rolling_forbidden(x, 5, 200, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_census_kernel)->Apply(census_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_reference)->Apply(census_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curve<true>)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curve<false>)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rolling<true>)->Arg(20'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rolling<false>)->Arg(20'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
