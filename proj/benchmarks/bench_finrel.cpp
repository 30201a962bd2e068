#include <benchmark/benchmark.h>

#include <random>

#include "cichon/finrel.hpp"

using namespace cichon;

namespace {

FinSys random_sys(std::mt19937& rng, std::size_t xs, std::size_t ys) {
  std::bernoulli_distribution bit(0.4);
  FinSys r(xs, ys);
  for (std::size_t x = 0; x < xs; ++x) {
    for (std::size_t y = 0; y < ys; ++y) r.set(x, y, bit(rng));
  }
  return r;
}

void BM_DominatingNumber(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const FinSys r = random_sys(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(d_num(r));
}
BENCHMARK(BM_DominatingNumber)->DenseRange(4, 12, 4);

void BM_UnboundingNumber(benchmark::State& state) {
  std::mt19937 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const FinSys r = random_sys(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(b_num(r));
}
BENCHMARK(BM_UnboundingNumber)->DenseRange(4, 12, 4);

void BM_ProductDominating(benchmark::State& state) {
  std::mt19937 rng(3);
  const FinSys p = product(random_sys(rng, 4, 4), random_sys(rng, 4, 4));
  Limits lim;
  lim.max_side = 16;
  for (auto _ : state) benchmark::DoNotOptimize(d_num(p, lim));
}
BENCHMARK(BM_ProductDominating);

void BM_TukeySearchIntoCover(benchmark::State& state) {
  std::mt19937 rng(4);
  const FinSys r = random_sys(rng, 4, 4);
  const FinSys cover = ideal_systems(4, static_cast<std::size_t>(state.range(0))).cover;
  Limits lim;
  lim.search_space = 1e12;
  for (auto _ : state) benchmark::DoNotOptimize(tukey_search(r, cover, lim));
}
BENCHMARK(BM_TukeySearchIntoCover)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
