// OpenMP kernels against the serial reference implementations.

#include "prsvd/kernels.hpp"
#include "prsvd/qr.hpp"
#include "prsvd/rng.hpp"
#include "prsvd/rsvd.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace prsvd;

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  RngStream rng(seed);
  return gaussian_matrix(r, c, rng);
}

void BM_MatmulParallel(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 1);
  const Matrix b = random_matrix(n, n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matmul(a, b));
  }
  state.SetItemsProcessed(state.iterations() * 2 * n * n * n);
}

void BM_MatmulReference(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 1);
  const Matrix b = random_matrix(n, n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::matmul(a, b));
  }
  state.SetItemsProcessed(state.iterations() * 2 * n * n * n);
}

void BM_MatmulTnParallel(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 3);
  const Matrix z = random_matrix(n, 64, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matmul_tn(a, z));
  }
}

void BM_MatmulTnReference(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 3);
  const Matrix z = random_matrix(n, 64, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::matmul_tn(a, z));
  }
}

void BM_FrobeniusParallel(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(frobenius_sq(a));
  }
}

void BM_FrobeniusReference(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::frobenius_sq(a));
  }
}

void BM_ThinQr(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix y = random_matrix(n, state.range(1), 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(thin_qr(y));
  }
}

void BM_SketchError(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, n, 7);
  const Matrix om = random_matrix(n, 50, 8);
  const auto spec = FilterSpec::power(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sketch_error(a, om, spec));
  }
}

} // namespace

BENCHMARK(BM_MatmulParallel)->Arg(128)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulReference)->Arg(128)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulTnParallel)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulTnReference)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrobeniusParallel)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrobeniusReference)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThinQr)->Args({300, 300})->Args({1000, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SketchError)->Args({300, 0})->Args({300, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
