#include "alphagamma/chains.hpp"
#include "alphagamma/exact.hpp"
#include "alphagamma/growth.hpp"
#include "alphagamma/urn.hpp"

#include <benchmark/benchmark.h>

using namespace ag;

namespace {

const Params<double> kP{0.7, 0.4};

void BM_GrowNonplanar(benchmark::State& state) {
  Rng rng(1);
  RngChooser ch(rng);
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grow_nonplanar(n, kP, ch));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GrowNonplanar)->Arg(8)->Arg(64)->Arg(512);

void BM_GrowSemiplanar(benchmark::State& state) {
  Rng rng(2);
  RngChooser ch(rng);
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grow_semiplanar(n, kP, ch));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GrowSemiplanar)->Arg(8)->Arg(64);

void BM_NonplanarChainStep(benchmark::State& state) {
  Rng rng(3);
  RngChooser ch(rng);
  auto t = grow_nonplanar(static_cast<int>(state.range(0)), kP, ch);
  for (auto _ : state) {
    t = nonplanar_chain_step(t, kP, ch);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_NonplanarChainStep)->Arg(8)->Arg(64);

void BM_SemiplanarChainStep(benchmark::State& state) {
  Rng rng(4);
  RngChooser ch(rng);
  auto t = grow_semiplanar(static_cast<int>(state.range(0)), kP, ch);
  for (auto _ : state) {
    t = semiplanar_chain_step(t, kP, ch);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SemiplanarChainStep)->Arg(8)->Arg(64);

void BM_DecoratedChainStep(benchmark::State& state) {
  Rng rng(5);
  RngChooser ch(rng);
  auto d = grow_decorated(LabelledTree::parse("(1,2)"), static_cast<int>(state.range(0)), kP, ch);
  for (auto _ : state) {
    d = decorated_chain_step(d, kP, ch);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_DecoratedChainStep)->Arg(30)->Arg(100)->Arg(1000);

void BM_DirMultSample(benchmark::State& state) {
  Rng rng(6);
  RngChooser ch(rng);
  UrnWeights<double> w({0.4, 0.3, 0.3, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(sample_dirmult(state.range(0), w, ch));
}
BENCHMARK(BM_DirMultSample)->Arg(30)->Arg(1000);

void BM_ExactGrowthLaw(benchmark::State& state) {
  Params<Rational> p{Rational(2, 3), Rational(1, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(growth_law_semiplanar(static_cast<int>(state.range(0)), p));
}
BENCHMARK(BM_ExactGrowthLaw)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ExactSemiplanarKernel(benchmark::State& state) {
  Params<Rational> p{Rational(2, 3), Rational(1, 3)};
  auto states = keys(growth_law_semiplanar(static_cast<int>(state.range(0)), p));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_semiplanar(states, p));
  state.counters["states"] = static_cast<double>(states.size());
}
BENCHMARK(BM_ExactSemiplanarKernel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
