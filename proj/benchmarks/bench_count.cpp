#include <benchmark/benchmark.h>

#include "toric/enumerate.hpp"

namespace {

void BM_CountTorus(benchmark::State& state, const char* fan_name) {
  const toric::Fan fan = toric::builtin_fan(fan_name);
  toric::BoundSpec spec{toric::BigInt(static_cast<long>(state.range(0))),
                        toric::RatVec(fan.ray_count(), toric::Rational(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(toric::count_torus(fan, spec).torus_count);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CountTorus, p1, "p1")->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CountTorus, p2, "p2")->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CountTorus, p1xp1, "p1xp1")->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
