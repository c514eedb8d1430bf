#include <benchmark/benchmark.h>

#include "allostasis/agent.hpp"
#include "allostasis/config.hpp"
#include "allostasis/experiment.hpp"

namespace {

using namespace allostasis;

void BM_ExpectedFreeEnergy(benchmark::State& state) {
  const auto gm = build_generative_model(ModelKnobs{});
  const Categorical q{0.5, 0.3, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(gm.evaluate_actions(q));
}
BENCHMARK(BM_ExpectedFreeEnergy);

void BM_StateInference(benchmark::State& state) {
  const auto gm = build_generative_model(ModelKnobs{});
  const auto obs = ObservationBundle::make(true, false, true, false);
  const auto prior = gm.predictive_state(Categorical{0.5, 0.3, 0.2}, Action::Eat);
  for (auto _ : state) benchmark::DoNotOptimize(gm.infer_state(obs, prior));
}
BENCHMARK(BM_StateInference);

void BM_Episode(benchmark::State& state) {
  const SimulationConfig cfg;
  const auto variant = *ModelVariant::preset(std::string(1, static_cast<char>('A' + state.range(0))));
  std::uint64_t seed = 1;
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto trace = run_episode(cfg, variant, seed++);
    steps += trace.size();
    benchmark::DoNotOptimize(trace.data());
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Episode)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg, {false, false}));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
