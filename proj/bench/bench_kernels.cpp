// Serial reference path vs OpenMP path for the data-parallel kernels.
#include <benchmark/benchmark.h>

#include <cmath>
#include <utility>
#include <vector>

#include "ewopt/dtype_map.hpp"
#include "ewopt/inequality.hpp"
#include "ewopt/optimality.hpp"
#include "ewopt/perm.hpp"
#include "ewopt/positivity.hpp"

namespace {

using ewopt::Execution;

ewopt::Execution policy(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

ewopt::Permutation n_cycle(std::size_t n) {
  std::vector<int> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<int>((i + 1) % n + 1);
  return ewopt::Permutation(std::move(images));
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_BlockPositivity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto w = ewopt::choi_matrix(ewopt::DTypeMap(1.0, n_cycle(n)));
  const ewopt::SearchConfig config{.restarts = 64, .max_iters = 200, .tol = 1e-12, .seed = 42};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewopt::numeric_block_positivity(w, config, policy(state)));
  }
  label(state);
}
BENCHMARK(BM_BlockPositivity)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

void BM_CertificateSweep(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewopt::certificate_sweep(0.5, std::sqrt(0.5), 20000, 42, policy(state)));
  }
  label(state);
}
BENCHMARK(BM_CertificateSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConstrainedScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewopt::constrained_scan(0.5, 200000, 3.0, 42, 1e-6, policy(state)));
  }
  label(state);
}
BENCHMARK(BM_ConstrainedScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ZeroLocus(benchmark::State& state) {
  const auto w = ewopt::choi_matrix(ewopt::DTypeMap(1.0, n_cycle(3)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewopt::zero_locus_span(w, {.seed = 42}, 200, policy(state)));
  }
  label(state);
}
BENCHMARK(BM_ZeroLocus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
