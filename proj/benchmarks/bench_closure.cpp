#include <benchmark/benchmark.h>

#include "cichon/forge.hpp"
#include "cichon/submodel.hpp"

using namespace cichon;

namespace {

void BM_Mod1(benchmark::State& state) {
  ContextSpec s;
  const std::vector<CardinalName> l{"l1", "l2", "l3", "l4", "l5"};
  for (const auto& x : l) s.card(x, true);
  s.le(kAleph1, "l1").le("l1", "l2").le("l2", "l3").le("l3", "l4").le("l4", "l5").pow_lt("l5", "l3");
  const auto ctx = std::make_shared<const CardContext>(build_context(s));
  for (auto _ : state) benchmark::DoNotOptimize(run_recipe(ctx, mod1_recipe(l)).db.facts().size());
}
BENCHMARK(BM_Mod1)->Unit(benchmark::kMillisecond);

void BM_CichonMaxPlan(benchmark::State& state) {
  const auto ctx = std::make_shared<const CardContext>(build_context(cichon_max_context()));
  const Plan p = canonical_plan();
  for (auto _ : state) benchmark::DoNotOptimize(run_plan(ctx, p).db.facts().size());
}
BENCHMARK(BM_CichonMaxPlan)->Unit(benchmark::kMillisecond);

void BM_Replay(benchmark::State& state) {
  const auto ctx = std::make_shared<const CardContext>(build_context(cichon_max_context()));
  const PlanResult r = run_plan(ctx, canonical_plan());
  for (auto _ : state) benchmark::DoNotOptimize(r.db.replay().checked);
}
BENCHMARK(BM_Replay)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
