// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "ordspec/monitor.hpp"
#include "ordspec/nulldist.hpp"
#include "ordspec/spectrum.hpp"

namespace {

std::vector<double> noise(std::size_t len) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> nd;
  std::vector<double> s(len);
  for (auto& v : s) v = nd(rng);
  return s;
}

void BM_NullSerial(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordspec::sample_null_values_serial(64, trials, 7, ordspec::Descriptor::cid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}

void BM_NullParallel(benchmark::State& state) {
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordspec::sample_null_values(64, trials, 7, ordspec::Descriptor::cid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}

void BM_MonitorSerial(benchmark::State& state) {
  const auto s = noise(static_cast<std::size_t>(state.range(0)));
  const ordspec::MonitorConfig cfg{.window = 1024, .step = 128, .q = 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(ordspec::sliding_descriptors_serial(s, cfg));
}

void BM_MonitorParallel(benchmark::State& state) {
  const auto s = noise(static_cast<std::size_t>(state.range(0)));
  const ordspec::MonitorConfig cfg{.window = 1024, .step = 128, .q = 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(ordspec::sliding_descriptors(s, cfg));
}

void BM_DftNaive(benchmark::State& state) {
  const auto s = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ordspec::dft_naive(s));
}

void BM_DftFast(benchmark::State& state) {
  const auto s = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ordspec::dft_fast(s));
}

}  // namespace

BENCHMARK(BM_NullSerial)->Arg(64000)->Arg(640000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NullParallel)->Arg(64000)->Arg(640000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonitorSerial)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonitorParallel)->Arg(1 << 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DftNaive)->Arg(256)->Arg(1024);
BENCHMARK(BM_DftFast)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
