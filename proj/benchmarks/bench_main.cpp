#include <benchmark/benchmark.h>

#include <random>

#include "opetope/catalog.hpp"
#include "opetope/coherence.hpp"
#include "opetope/nerve.hpp"
#include "opetope/sampling.hpp"
#include "opetope/set_ops.hpp"

using namespace opetope;

static void BM_EnumerateDim2(benchmark::State& state) {
  auto cat = catalogFor("I");
  for (auto _ : state) {
    long n = 0;
    enumerateOpetopes(*cat, 2, static_cast<int>(state.range(0)), [&](const Opetope&) { return ++n, true; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateDim2)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_EnumerateDim3(benchmark::State& state) {
  auto cat = catalogFor("I");
  for (auto _ : state) {
    long n = 0;
    enumerateOpetopes(*cat, 3, static_cast<int>(state.range(0)), [&](const Opetope&) { return ++n, true; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateDim3)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_MetatreeRoundTrip(benchmark::State& state) {
  auto cat = catalogFor("I");
  auto all = enumerateOpetopes(*cat, 3, 2);
  size_t i = 0;
  for (auto _ : state) {
    const Opetope& w = all[i++ % all.size()];
    auto text = printMetatree(operationToMetatree(w.value, w.dim, cat));
    benchmark::DoNotOptimize(metatreeToOperation(parseMetatree(text)));
  }
}
BENCHMARK(BM_MetatreeRoundTrip);

static void BM_LawSampleSlice(benchmark::State& state) {
  LawSampler sampler(operadByName("I++"), 5);
  auto o = operadByName("I++");
  std::mt19937 rng(7);
  for (auto _ : state) {
    auto x = sampler.sample(rng);
    benchmark::DoNotOptimize(checkLaw(*o, OperadLaw::Associativity, x).ok);
  }
}
BENCHMARK(BM_LawSampleSlice);

static void BM_NerveZ2(benchmark::State& state) {
  auto z2 = categoryFromMonoid({"e", "g"}, "e", {{{"g", "g"}, "e"}});
  for (auto _ : state) benchmark::DoNotOptimize(nerveOfCategory(z2).size());
}
BENCHMARK(BM_NerveZ2)->Unit(benchmark::kMillisecond);

static void BM_CoherenceZ2(benchmark::State& state) {
  auto z2 = categoryFromMonoid({"e", "g"}, "e", {{{"g", "g"}, "e"}});
  auto x = nerveOfCategory(z2);
  for (auto _ : state) benchmark::DoNotOptimize(checkNCoherent(x, 1).verdict.value);
}
BENCHMARK(BM_CoherenceZ2)->Unit(benchmark::kMillisecond);

static void BM_TerminalSet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(terminalSet("I", 3, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_TerminalSet)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
