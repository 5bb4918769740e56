#include <benchmark/benchmark.h>

#include <vector>

#include "calogero/evolution.hpp"
#include "calogero/oracle.hpp"
#include "calogero/propagator.hpp"

using namespace calogero;

namespace {

std::vector<double> ramp(int n, double lo, double step) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + step * i + 0.01 * i * i);
  return v;
}

void BM_Psi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int ell = static_cast<int>(state.range(1));
  const Wavefunction wf(ModelParams(n, ell));
  const auto x = ramp(n, -2.0, 1.1), p = ramp(n, 1.5, -0.9);
  for (auto _ : state) benchmark::DoNotOptimize(wf(x, p));
}
BENCHMARK(BM_Psi)->Args({2, 1})->Args({2, 6})->Args({3, 1})->Args({3, 3})->Args({4, 1})->Args({5, 1});

void BM_Kernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Propagator prop(ModelParams(n, 1, 1.0));
  const auto x = ramp(n, -2.0, 1.1), y = ramp(n, -1.5, 0.9);
  const auto chart = TimeChart::make(0.3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(prop(x, y, chart));
}
BENCHMARK(BM_Kernel)->DenseRange(2, 5);

void BM_KernelExplicit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams params(n, 1, 1.0);
  const auto table = closed_form_laurent_table(n, 1);
  const auto x = ramp(n, -2.0, 1.1), y = ramp(n, -1.5, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_explicit(x, y, 0.3, params, *table));
}
BENCHMARK(BM_KernelExplicit)->DenseRange(2, 4);

void BM_OracleSolve(benchmark::State& state) {
  const ModelParams params(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_coefficients(params).unknowns);
}
BENCHMARK(BM_OracleSolve)->Args({3, 1})->Args({3, 3})->Args({4, 1})->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const ModelParams params(2, 1, 1.0);
  const auto packet = WavePacket::gaussian({-1.5, 1.5}, {0.6, 0.6}, {0.0, 0.0}, Exchange::Symmetric);
  const std::vector<std::vector<double>> out{{-1.2, 1.4}, {0.3, 1.9}, {-2.0, 0.5}, {0.9, -1.1}};
  EvolveOptions opts;
  opts.richardson = false;
  opts.method = state.range(0) ? IntegrationMethod::Separated : IntegrationMethod::Tensor;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(packet, 0.3, params, out, opts).values);
}
BENCHMARK(BM_Evolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
