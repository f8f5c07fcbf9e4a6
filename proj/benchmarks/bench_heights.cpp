#include <benchmark/benchmark.h>

#include <random>

#include "toric/fan.hpp"
#include "toric/heights.hpp"

namespace {

std::vector<toric::TorusPoint> random_points(int d, long range, std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  std::vector<toric::TorusPoint> pts;
  while (pts.size() < n) {
    toric::RatVec c(static_cast<std::size_t>(d));
    bool ok = true;
    for (auto& x : c) {
      long a = num(rng);
      if (a == 0) ok = false;
      x = toric::Rational(a, den(rng));
      x.canonicalize();
    }
    if (ok) pts.emplace_back(c);
  }
  return pts;
}

void BM_MultiHeight(benchmark::State& state, const char* fan_name) {
  const toric::Fan fan = toric::builtin_fan(fan_name);
  const auto pts = random_points(fan.dim(), state.range(0), 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(toric::multi_height(fan, pts[i++ % pts.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK_CAPTURE(BM_MultiHeight, p1, "p1")->Arg(1000)->Arg(1000000);
BENCHMARK_CAPTURE(BM_MultiHeight, p2, "p2")->Arg(1000)->Arg(1000000);
BENCHMARK_CAPTURE(BM_MultiHeight, hirzebruch2, "hirzebruch:2")->Arg(1000);
BENCHMARK_CAPTURE(BM_MultiHeight, p3, "p3")->Arg(1000);
