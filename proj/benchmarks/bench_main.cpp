#include <benchmark/benchmark.h>

#include "montyhall/analytics.hpp"
#include "montyhall/belief.hpp"
#include "montyhall/game.hpp"
#include "montyhall/oracle.hpp"
#include "montyhall/rng.hpp"
#include "montyhall/simulation.hpp"

using namespace montyhall;

static void BM_PlayGame(benchmark::State& state) {
  auto host = ShowmasterStrategy::moody(Probability(1, 2));
  auto guest = GuestStrategy::mixed(Probability(1, 3));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(play_game(host, guest, rng::derive_seed(42, i++)));
}
BENCHMARK(BM_PlayGame);

static void BM_RunBatch(benchmark::State& state) {
  auto host = ShowmasterStrategy::moody(Probability(1, 2));
  auto guest = GuestStrategy::switcher();
  auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulation::run_batch(host, guest, n, 7, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunBatch)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_Enumerate(benchmark::State& state) {
  auto host = ShowmasterStrategy::mind_reader(Probability(2, 3));
  auto guest = GuestStrategy::mixed(Probability(5, 7));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::enumerate(host, guest));
}
BENCHMARK(BM_Enumerate);

static void BM_ExactWinProbabilityGrid(benchmark::State& state) {
  auto grid = analytics::farey_grid(12);
  for (auto _ : state)
    for (const auto& p : grid)
      for (const auto& q : grid) benchmark::DoNotOptimize(analytics::win_probability(p, q));
}
BENCHMARK(BM_ExactWinProbabilityGrid);

static void BM_BeliefUpdate(benchmark::State& state) {
  auto s0 = belief::BeliefState::from_prior(Probability(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(belief::update(s0, OpenedOtherDoor{DoorId(2)}));
}
BENCHMARK(BM_BeliefUpdate);
BENCHMARK_MAIN();
