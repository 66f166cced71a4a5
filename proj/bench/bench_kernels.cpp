// Serial reference vs OpenMP kernel, same inputs.

#include <benchmark/benchmark.h>

#include <cmath>

#include "fracweier/jumarie.hpp"
#include "fracweier/roughness.hpp"
#include "fracweier/weierstrass.hpp"

namespace j = fw::jumarie;
namespace r = fw::roughness;
namespace w = fw::weierstrass;

namespace {

const w::WeierstrassParams kParams(2.0, 1.5, 0.7);

template <bool Parallel>
void BM_WeierstrassSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto s = Parallel ? w::sample(kParams, 1.0, n, w::Which::function)
                      : w::sample_serial(kParams, 1.0, n, w::Which::function);
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_DerivNumeric(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = j::GridFunction::sample(0.0, 1.0 / (n - 1), n, [](double x) { return std::sin(3 * x); });
  for (auto _ : state) {
    auto d = Parallel ? j::deriv_numeric(0.5, f) : j::deriv_numeric_serial(0.5, f);
    benchmark::DoNotOptimize(d.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_BoxDimension(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = w::sample(w::WeierstrassParams(2.0, 1.5, 1.0, 30), 1.0, n, w::Which::function);
  const r::SampledSignal sig(s.x0, s.h, std::move(s.values));
  for (auto _ : state) {
    auto d = Parallel ? r::box_dimension(sig) : r::box_dimension_serial(sig);
    benchmark::DoNotOptimize(d.slope);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_WeierstrassSample<false>)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeierstrassSample<true>)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DerivNumeric<false>)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DerivNumeric<true>)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoxDimension<false>)->Arg(65537)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoxDimension<true>)->Arg(65537)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
