#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rtplan/scenario_io.hpp"
#include "rtplan/simulator.hpp"

using namespace rtplan;

TEST_SUITE("scenario_io") {

TEST_CASE("round trip preserves the scenario") {
    const Scenario original = make_scenario(Env::Maze, 2, 800, true, 4242);
    const Scenario loaded = scenario_from_json(scenario_to_json(original));

    CHECK(loaded.world.bounds.width == original.world.bounds.width);
    CHECK(loaded.world.bounds.height == original.world.bounds.height);
    REQUIRE(loaded.world.static_obstacles.size() == original.world.static_obstacles.size());
    for (std::size_t i = 0; i < loaded.world.static_obstacles.size(); ++i) {
        CHECK(loaded.world.static_obstacles[i].min == original.world.static_obstacles[i].min);
        CHECK(loaded.world.static_obstacles[i].max == original.world.static_obstacles[i].max);
    }
    REQUIRE(loaded.world.dynamic_obstacles.size() == original.world.dynamic_obstacles.size());
    for (std::size_t i = 0; i < loaded.world.dynamic_obstacles.size(); ++i) {
        CHECK(loaded.world.dynamic_obstacles[i].center == original.world.dynamic_obstacles[i].center);
        CHECK(loaded.world.dynamic_obstacles[i].radius == original.world.dynamic_obstacles[i].radius);
        CHECK(loaded.world.dynamic_obstacles[i].speed == original.world.dynamic_obstacles[i].speed);
        CHECK(loaded.world.dynamic_obstacles[i].policy == original.world.dynamic_obstacles[i].policy);
    }
    CHECK(loaded.world.start == original.world.start);
    CHECK(loaded.world.goal == original.world.goal);
    CHECK(loaded.world.robot.radius == original.world.robot.radius);
    CHECK(loaded.world.robot.speed == original.world.robot.speed);
    CHECK(loaded.world.mu_free == original.world.mu_free);
    CHECK(loaded.planner.samples == original.planner.samples);
    CHECK(loaded.planner.blocking_radius == original.planner.blocking_radius);
    CHECK(loaded.planner.sensing_range == original.planner.sensing_range);
    CHECK(loaded.rtrrt.min_radius == original.rtrrt.min_radius);
    CHECK(loaded.sim.dt == original.sim.dt);
    CHECK(loaded.sim.max_time == original.sim.max_time);
    CHECK(loaded.seed == original.seed);
}

TEST_CASE("a run from a reloaded scenario reproduces the original metrics") {
    Scenario original = make_scenario(Env::Maze, 1, 400, true, 777);
    original.sim.max_time = 90.0;
    const Scenario loaded = scenario_from_json(scenario_to_json(original));
    const RunMetrics a =
        run_simulation(original, PlannerKind::RtFmt, SimMode::RealTime, ClockMode::Virtual);
    const RunMetrics b =
        run_simulation(loaded, PlannerKind::RtFmt, SimMode::RealTime, ClockMode::Virtual);
    CHECK(a.success == b.success);
    CHECK(a.executed_cost_m == b.executed_cost_m);
    CHECK(a.arrival_time_s == b.arrival_time_s);
    CHECK(a.ticks == b.ticks);
}

TEST_CASE("save and load through the filesystem") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "rtplan_scenario_io_test.json";
    const Scenario original = make_scenario(Env::Mine, 0, 1000, true, 5);
    save_scenario(original, path.string());
    const Scenario loaded = load_scenario(path.string());
    CHECK(loaded.world.static_obstacles.size() == original.world.static_obstacles.size());
    CHECK(loaded.seed == original.seed);
    fs::remove(path);
    CHECK_THROWS(load_scenario(path.string()));
}

TEST_CASE("validation rejects malformed documents") {
    Scenario s = make_scenario(Env::Maze, 0, 100, false, 1);

    SUBCASE("negative bounds") {
        std::string text = scenario_to_json(s);
        const auto pos = text.find("\"width\"");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, std::string("\"width\": 40.0").size(), "\"width\": -1.0");
        CHECK_THROWS(scenario_from_json(text));
    }

    SUBCASE("start inside an obstacle") {
        Scenario bad = s;
        bad.world.static_obstacles.push_back(
            StaticObstacle{Config{bad.world.start.x - 1, bad.world.start.y - 1},
                           Config{bad.world.start.x + 1, bad.world.start.y + 1}});
        CHECK_THROWS(scenario_from_json(scenario_to_json(bad)));
    }

    SUBCASE("unknown motion policy") {
        std::string text = scenario_to_json(s);
        CHECK_THROWS(scenario_from_json(text + "garbage"));
    }
}

}  // TEST_SUITE
