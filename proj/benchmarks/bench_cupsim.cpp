#include <benchmark/benchmark.h>

#include "cupsim/batch.hpp"
#include "cupsim/formats.hpp"
#include "cupsim/match.hpp"
#include "cupsim/schedule.hpp"
#include "cupsim/tournament.hpp"

using namespace cupsim;

namespace {

Format format_arg(const benchmark::State& state) {
  return kAllFormats[static_cast<std::size_t>(state.range(0))];
}

void BM_PlayMatch(benchmark::State& state) {
  RngStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(play_match(5, 30, DecisionMode::must_decide, rng));
  }
}
BENCHMARK(BM_PlayMatch);

void BM_BuildPlan(benchmark::State& state) {
  const Format f = format_arg(state);
  state.SetLabel(std::string(format_name(f)));
  for (auto _ : state) benchmark::DoNotOptimize(build_plan(f));
}
BENCHMARK(BM_BuildPlan)->DenseRange(0, 2);

void BM_RunTournament(benchmark::State& state) {
  const Format f = format_arg(state);
  state.SetLabel(std::string(format_name(f)));
  const FormatPlan plan = build_plan(f);
  const Roster roster = Roster::by_rank(kCupTeams);
  const RngStream root(7);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng = root.substream(i++);
    benchmark::DoNotOptimize(run_tournament(plan, roster, rng));
  }
}
BENCHMARK(BM_RunTournament)->DenseRange(0, 2);

void BM_Schedule(benchmark::State& state) {
  const Format f = format_arg(state);
  state.SetLabel(std::string(format_name(f)));
  const FormatPlan plan = build_plan(f);
  ScheduleParams params;
  params.max_per_day = 4;
  params.repechage_rest_days = 3;
  for (auto _ : state) benchmark::DoNotOptimize(schedule(plan, params));
}
BENCHMARK(BM_Schedule)->DenseRange(0, 2);

void BM_RunBatch(benchmark::State& state) {
  const Roster roster = Roster::by_rank(kCupTeams);
  BatchConfig cfg;
  cfg.format = Format::double_elim_48;
  cfg.n_runs = 200;
  cfg.base_seed = 3;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(cfg, roster));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_runs));
}
BENCHMARK(BM_RunBatch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
