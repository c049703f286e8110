#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "foresight/civps.hpp"
#include "foresight/monte_carlo.hpp"
#include "foresight/serialization.hpp"
#include "foresight/store.hpp"

namespace {

using namespace foresight;

McConfig bench_config(std::uint64_t n) {
  McConfig c;
  c.c_incident = 1'000'000.0;
  c.p_incident = 0.1;
  c.c_investment = 50'000.0;
  c.r_investment = 0.5;
  c.n = n;
  c.seed = 42;
  return c;
}

void BM_SimulateBv(benchmark::State& state) {
  const auto config = bench_config(static_cast<std::uint64_t>(state.range(0)));
  SimulationOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_bv(config, options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBv)
    ->ArgsProduct({{100'000, 1'000'000, 10'000'000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_Sweep(benchmark::State& state) {
  SweepGrid grid;
  grid.c_incident = {5e5, 1e6, 2e6};
  grid.p_incident = {0.05, 0.1, 0.2};
  grid.c_investment = {2e4, 5e4};
  grid.r_investment = {0.25, 0.5, 0.75};
  grid.semantics = {McSemantics::PaperVerbatim, McSemantics::PreventedEvent};
  grid.n = 100'000;
  grid.master_seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(grid));
  }
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond)->UseRealTime();

std::vector<Scorecard> random_cards(std::size_t m) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> score(kMinScore, kMaxScore);
  std::vector<Scorecard> cards(m);
  for (std::size_t i = 0; i < m; ++i) {
    cards[i].scorer_id = "scorer-" + std::to_string(i);
    for (std::size_t d = 0; d < kDimensionCount; ++d) cards[i].score(static_cast<Dimension>(d)) = score(rng);
  }
  return cards;
}

void BM_ComputeCivps(benchmark::State& state) {
  const auto cards = random_cards(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_civps(cards));
  }
}
BENCHMARK(BM_ComputeCivps)->Range(1, 1024);

void BM_SerializePortfolio(benchmark::State& state) {
  PortfolioFile portfolio;
  for (int i = 0; i < state.range(0); ++i) {
    Idea idea;
    idea.id = "idea-" + std::to_string(10000 + i);
    idea.title = "Idea " + std::to_string(i);
    idea.category = kAllCategories[static_cast<std::size_t>(i) % kAllCategories.size()];
    portfolio.ideas.push_back(idea);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize_portfolio(portfolio));
  }
}
BENCHMARK(BM_SerializePortfolio)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
