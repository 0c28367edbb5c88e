// Serial reference kernels against their OpenMP counterparts.
// Run with --benchmark_filter=activation to narrow the set.

#include <benchmark/benchmark.h>

#include <random>

#include "gnet/kernels.hpp"

namespace {

gnet::Matrix uniform(gnet::Index rows, gnet::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  gnet::Matrix M(rows, cols);
  for (gnet::Index j = 0; j < cols; ++j)
    for (gnet::Index i = 0; i < rows; ++i) M(i, j) = u(rng);
  return M;
}

template <auto Kernel>
void activation(benchmark::State& state) {
  const auto S = static_cast<gnet::Index>(state.range(0));
  const gnet::Matrix X = uniform(S, 4, 1);
  const gnet::BasisSpec spec(gnet::GegenbauerParam(0.05), 4, 500);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(X, spec));
  state.SetItemsProcessed(state.iterations() * S * 500);
}

template <auto Kernel>
void gaussian(benchmark::State& state) {
  const auto S = static_cast<gnet::Index>(state.range(0));
  const gnet::Matrix A = uniform(S, 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(A, A, 0.5));
  state.SetItemsProcessed(state.iterations() * S * S);
}

template <auto Kernel>
void random_features(benchmark::State& state) {
  const auto S = static_cast<gnet::Index>(state.range(0));
  const gnet::Matrix X = uniform(S, 8, 3);
  const gnet::Matrix W = uniform(8, 1000, 4);
  const gnet::Vector b = uniform(1000, 1, 5).col(0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(X, W, b, gnet::Activation::Sigmoid));
  state.SetItemsProcessed(state.iterations() * S * 1000);
}

namespace serial = gnet::kernels::serial;
namespace parallel = gnet::kernels::parallel;

BENCHMARK(activation<serial::activation_matrix>)->Name("activation/serial")->Arg(500)->Arg(2000);
BENCHMARK(activation<parallel::activation_matrix>)->Name("activation/parallel")->Arg(500)->Arg(2000)->UseRealTime();
BENCHMARK(gaussian<serial::gaussian_kernel>)->Name("gaussian/serial")->Arg(500)->Arg(2000);
BENCHMARK(gaussian<parallel::gaussian_kernel>)->Name("gaussian/parallel")->Arg(500)->Arg(2000)->UseRealTime();
BENCHMARK(random_features<serial::random_features>)->Name("random_features/serial")->Arg(500)->Arg(2000);
BENCHMARK(random_features<parallel::random_features>)
    ->Name("random_features/parallel")
    ->Arg(500)
    ->Arg(2000)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
