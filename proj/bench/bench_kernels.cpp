// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "hindex/norms.hpp"
#include "hindex/oracle.hpp"
#include "hindex/random.hpp"
#include "hindex/spectral_index.hpp"

using namespace hindex;

namespace {

Execution policy(const benchmark::State& state) {
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void BM_Combinatorial(benchmark::State& state) {
  Rng rng(7);
  const HermitianMatrix a = random_nonnegative_psd(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_index_combinatorial(a, 16, policy(state)).value);
}
BENCHMARK(BM_Combinatorial)->ArgsProduct({{10, 12, 14}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SphereRestarts(benchmark::State& state) {
  Rng rng(8);
  const int n = static_cast<int>(state.range(0));
  const HermitianMatrix a = random_psd(rng, n, n, false);
  const NormDescriptor norm = NormDescriptor::schatten(3);
  SphereObjective obj;
  obj.value = [&](const VectorR& x) {
    const VectorC c = x.cast<Complex>();
    return norm.evaluate(hadamard(a, HermitianMatrix(MatrixC(c * c.adjoint()))));
  };
  OracleConfig cfg;
  cfg.restarts = 16;
  cfg.saturation_window = 1000;
  cfg.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_minimize(obj, n, cfg).value);
}
BENCHMARK(BM_SphereRestarts)->ArgsProduct({{3, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PsdProbe(benchmark::State& state) {
  Rng rng(9);
  const int n = static_cast<int>(state.range(0));
  const HermitianMatrix a = random_psd(rng, n, n, true);
  const NormDescriptor norm = NormDescriptor::frobenius();
  const auto obj = [&](const HermitianMatrix& b) { return norm.evaluate(hadamard(a, b)); };
  OracleConfig cfg;
  cfg.sample_budget = 500;
  cfg.restarts = 8;
  cfg.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(random_psd_probe(obj, n, cfg, norm).value);
}
BENCHMARK(BM_PsdProbe)->ArgsProduct({{3, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
