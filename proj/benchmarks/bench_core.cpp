#include <benchmark/benchmark.h>

#include "qcmi/discord.hpp"
#include "qcmi/dynamics.hpp"
#include "qcmi/info.hpp"
#include "qcmi/random.hpp"

using namespace qcmi;

static void BM_HermitianEig(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  auto rng = make_rng(1);
  const Matrix g = ginibre(d, d, rng);
  const Matrix h = (g + g.adjoint()) * Complex(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_Cmi(benchmark::State& state) {
  const auto de = static_cast<std::size_t>(state.range(0));
  auto rng = make_rng(2);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, de}), rng);
  for (auto _ : state) benchmark::DoNotOptimize(cmi(s, {"A"}, {"E"}, {"S"}));
}
BENCHMARK(BM_Cmi)->Arg(2)->Arg(4)->Arg(8);

static void BM_ConditionalJ(benchmark::State& state) {
  auto rng = make_rng(3);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
  const ConditionalEvaluator ev(s, {"A"}, {"E"}, {"S"});
  const Povm m = random_povm(2, 2, {"E"}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ev.j(m.effects()));
}
BENCHMARK(BM_ConditionalJ);

static void BM_ClassicalCmi(benchmark::State& state) {
  auto rng = make_rng(4);
  const auto s = random_density(SubsystemLayout({"A", "S", "E"}, {2, 2, 2}), rng);
  OptimizerConfig cfg;
  cfg.restarts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classical_cmi(s, {"A"}, {"E"}, {"S"}, cfg));
}
BENCHMARK(BM_ClassicalCmi)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_WorkedExampleClassical(benchmark::State& state) {
  const auto s = paper_example(0.5);
  OptimizerConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(classical_cmi(s, {"A"}, {"E1"}, {"S"}, cfg));
}
BENCHMARK(BM_WorkedExampleClassical)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
