#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rtplan/rtrrt.hpp"
#include "rtplan/simulator.hpp"

using namespace rtplan;

namespace {

Scenario empty_scenario(int samples) {
    Scenario s;
    s.world.bounds = WorldBounds{40, 40};
    s.world.robot = RobotState{Config{5, 5}, 2.0, 0.5};
    s.world.start = Config{5, 5};
    s.world.goal = Config{35, 35};
    s.world.mu_free = 1600.0;
    s.planner.samples = samples;
    s.planner.blocking_radius = 2.0;
    s.planner.sensing_range = 10.0;
    s.sim.max_time = 120.0;
    s.sim.goal_tolerance = 0.5;
    s.seed = 21;
    return s;
}

}  // namespace

TEST_SUITE("rtrrt") {

TEST_CASE("reaches the goal in an empty world with a generous attempt budget") {
    const Scenario s = empty_scenario(2000);
    const RunMetrics m = run_simulation(s, PlannerKind::RtRrt, SimMode::RealTime, ClockMode::Virtual);
    REQUIRE(m.success);
    CHECK(m.executed_cost_m >= dist(s.world.start, s.world.goal) - s.sim.goal_tolerance);
}

TEST_CASE("zero attempts means the robot never moves") {
    Scenario s = empty_scenario(0);
    s.sim.max_time = 10.0;
    const RunMetrics m = run_simulation(s, PlannerKind::RtRrt, SimMode::RealTime, ClockMode::Virtual);
    CHECK_FALSE(m.success);
    CHECK(m.failure_reason == FailureReason::Timeout);
    CHECK(m.executed_cost_m == 0.0);
}

TEST_CASE("sample-attempt accounting is exact") {
    const Scenario s = empty_scenario(100);
    World world = s.world;

    SUBCASE("attempts accumulate per tick until the budget runs out") {
        RtRrtPlanner planner(world, s.planner, 5);
        planner.plan_tick(world);
        CHECK(planner.attempts_used() == 32);
        planner.plan_tick(world);
        CHECK(planner.attempts_used() == 64);
        for (int i = 0; i < 10; ++i) planner.plan_tick(world);
        CHECK(planner.attempts_used() == 100);  // capped at the budget
    }

    SUBCASE("every draw counts, successes and failures alike") {
        World walled = world;
        walled.static_obstacles.push_back(StaticObstacle{Config{15, 0}, Config{17, 35}});
        walled.mu_free = -1.0;
        PlannerParams params = s.planner;
        params.samples = 64;
        RtRrtPlanner planner(walled, params, 5);
        planner.plan_tick(walled);
        planner.plan_tick(walled);
        CHECK(planner.attempts_used() == 64);
        CHECK(planner.tree().size() < 65);  // collisions cost attempts without adding nodes
    }
}

TEST_CASE("tree invariants hold after a full run") {
    Scenario s = make_scenario(Env::Maze, 0, 1500, true, 77);
    s.sim.max_time = 90.0;
    World world = s.world;
    Rng rng(mix_seed(s.seed, 1));
    initialize_dynamics(world, rng);
    RtRrtPlanner planner(world, s.planner, mix_seed(s.seed, 2));
    for (int tick = 0; tick < 1200; ++tick) {
        const Config target = planner.plan_tick(world);
        step_robot(world.robot, target, s.sim.dt);
        step_dynamics(world, s.sim.dt, rng);
    }
    const PlanTree& tree = planner.tree();
    CHECK(oracle::acyclic(tree));
    std::string error;
    CHECK_MESSAGE(oracle::costs_consistent(tree, 1e-9, &error), error);
    // No tree edge crosses a static obstacle.
    for (int id = 0; id < tree.size(); ++id) {
        const int parent = tree.node(id).parent;
        if (parent >= 0) {
            CHECK(segment_free(tree.node(parent).config, tree.node(id).config, world,
                               world.robot.radius));
        }
    }
}

TEST_CASE("edge lengths are not capped") {
    const Scenario s = empty_scenario(400);
    World world = s.world;
    RtRrtPlanner planner(world, s.planner, 99);
    for (int i = 0; i < 20; ++i) planner.plan_tick(world);
    double longest = 0.0;
    const PlanTree& tree = planner.tree();
    for (int id = 0; id < tree.size(); ++id) {
        const int parent = tree.node(id).parent;
        if (parent >= 0) longest = std::max(longest, dist(tree.node(parent).config, tree.node(id).config));
    }
    CHECK(longest > planner.extras().min_radius);  // far beyond any steering clamp
}

TEST_CASE("retarget rejects blocked goals and switches the heuristic") {
    const Scenario s = empty_scenario(500);
    World world = s.world;
    RtRrtPlanner planner(world, s.planner, 13);
    for (int i = 0; i < 30; ++i) planner.plan_tick(world);

    World walled = world;
    walled.static_obstacles.push_back(StaticObstacle{Config{19, 19}, Config{21, 21}});
    RtRrtPlanner walled_planner(walled, s.planner, 13);
    CHECK_THROWS(walled_planner.retarget(Config{20, 20}, walled));

    planner.retarget(Config{6, 30}, world);
    CHECK_FALSE(planner.has_global_path());
    const Path path = planner.generate_path();
    CHECK(path.kind == PathKind::Local);
}

}  // TEST_SUITE
