#include <benchmark/benchmark.h>

#include "rtplan/rtfmt.hpp"
#include "rtplan/rtrrt.hpp"
#include "rtplan/simulator.hpp"

namespace {

using namespace rtplan;

Scenario maze_scenario(int samples) { return make_scenario(Env::Maze, 0, samples, false, 7); }

void BM_segment_free(benchmark::State& state) {
    const World world = make_maze(0);
    const CollisionMap map(world, world.robot.radius);
    Rng rng(3);
    std::vector<std::pair<Config, Config>> pairs;
    for (int i = 0; i < 256; ++i) {
        pairs.emplace_back(Config{rng.uniform(0, 30), rng.uniform(0, 30)},
                           Config{rng.uniform(0, 30), rng.uniform(0, 30)});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [u, v] = pairs[i++ & 255];
        benchmark::DoNotOptimize(map.segment_free(u, v));
    }
}
BENCHMARK(BM_segment_free);

void BM_near_query(benchmark::State& state) {
    const Scenario s = maze_scenario(static_cast<int>(state.range(0)));
    RtFmtPlanner planner(s.world, s.planner, 11);
    for (int i = 0; i < 2000; ++i) planner.expand_fmt(s.world);
    Rng rng(5);
    for (auto _ : state) {
        const Config center{rng.uniform(0, 30), rng.uniform(0, 30)};
        benchmark::DoNotOptimize(planner.tree().near(center, kInTree));
    }
}
BENCHMARK(BM_near_query)->Arg(500)->Arg(2500);

void BM_expand_step(benchmark::State& state) {
    const Scenario s = maze_scenario(static_cast<int>(state.range(0)));
    RtFmtPlanner planner(s.world, s.planner, 13);
    for (auto _ : state) {
        if (planner.expansion_exhausted()) {
            state.PauseTiming();
            planner = RtFmtPlanner(s.world, s.planner, 13);
            state.ResumeTiming();
        }
        planner.expand_fmt(s.world);
    }
}
BENCHMARK(BM_expand_step)->Arg(2500);

void BM_rtfmt_plan_tick(benchmark::State& state) {
    const Scenario s = maze_scenario(static_cast<int>(state.range(0)));
    World world = s.world;
    RtFmtPlanner planner(world, s.planner, 17);
    for (auto _ : state) {
        benchmark::DoNotOptimize(planner.plan_tick(world));
    }
}
BENCHMARK(BM_rtfmt_plan_tick)->Arg(500)->Arg(4500);

void BM_rtrrt_plan_tick(benchmark::State& state) {
    Scenario s = maze_scenario(static_cast<int>(state.range(0)));
    World world = s.world;
    RtRrtPlanner planner(world, s.planner, 19, s.rtrrt);
    for (auto _ : state) {
        benchmark::DoNotOptimize(planner.plan_tick(world));
    }
}
BENCHMARK(BM_rtrrt_plan_tick)->Arg(500)->Arg(4500);

void BM_maze_planning_phase(benchmark::State& state) {
    const Scenario s = maze_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        World world = s.world;
        RtFmtPlanner planner(world, s.planner, 23);
        long guard = 0;
        while (!planner.planning_complete() && ++guard < 100000) planner.plan_tick(world);
        benchmark::DoNotOptimize(guard);
    }
}
BENCHMARK(BM_maze_planning_phase)->Arg(500)->Arg(2500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
