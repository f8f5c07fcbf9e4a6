#include <benchmark/benchmark.h>

#include "toric/analytic.hpp"

namespace {

void BM_LocalFactor(benchmark::State& state) {
  const toric::Fan fan = toric::builtin_fan("p1xp1");
  const toric::QPolynomial q = toric::q_polynomial(fan);
  const std::vector<toric::Complex> s(fan.ray_count(), toric::Complex(1.5, 2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(toric::local_factor(fan, q, s, 101));
  }
}

void BM_SingularConstant(benchmark::State& state) {
  const toric::Fan fan = toric::builtin_fan("p2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(toric::singular_constant(fan, static_cast<std::uint32_t>(state.range(0))));
  }
}

void BM_ArchTransform(benchmark::State& state) {
  const toric::Fan fan = toric::builtin_fan("p2");
  const std::vector<toric::Complex> s(fan.ray_count(), toric::Complex(2.0, 0.5));
  const std::vector<double> m{0.3, -0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(toric::arch_transform(fan, s, m));
  }
}

}  // namespace

BENCHMARK(BM_LocalFactor);
BENCHMARK(BM_SingularConstant)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArchTransform);
