// Serial reference versus OpenMP path for the parallel kernels. Both paths
// return identical results; the benchmark verifies that before timing.

#include <benchmark/benchmark.h>

#include <random>
#include <stdexcept>

#include "bruhat/exec.hpp"
#include "bruhat/flip_engine.hpp"
#include "bruhat/order.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/realizability.hpp"

using namespace bruhat;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

const char* label(const benchmark::State& state) { return state.range(0) ? "parallel" : "serial"; }

void BM_FindFlips(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const KOrder rho = random_admissible_order(static_cast<int>(state.range(1)), 2, rng);
  if (find_flips(rho, Exec::serial).size() != find_flips(rho, Exec::parallel).size()) {
    throw std::logic_error("find_flips paths disagree");
  }
  for (auto _ : state) benchmark::DoNotOptimize(find_flips(rho, mode(state)));
  state.SetLabel(label(state));
}

void BM_BuildBnk(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const int k = static_cast<int>(state.range(2));
  for (auto _ : state) {
    BuildOptions o;
    o.exec = mode(state);
    benchmark::DoNotOptimize(build_bnk(n, k, o));
  }
  state.SetLabel(label(state));
}

void BM_Classify(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(1));
  const KSetFamily j = random_realizable_set(n, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(classify(j, mode(state)));
  state.SetLabel(label(state));
}

}  // namespace

BENCHMARK(BM_FindFlips)->ArgsProduct({{0, 1}, {7, 8, 9}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildBnk)->ArgsProduct({{0, 1}, {6}, {2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify)->ArgsProduct({{0, 1}, {10, 12}})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
