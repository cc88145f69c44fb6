#include "rtplan/scenario_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rtplan {

namespace {

using nlohmann::json;

json config_to_json(const Config& c) { return json::array({c.x, c.y}); }

Config config_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y] pair");
    return Config{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["bounds"] = {{"width", s.world.bounds.width}, {"height", s.world.bounds.height}};
    j["static_obstacles"] = json::array();
    for (const auto& obs : s.world.static_obstacles) {
        j["static_obstacles"].push_back(
            {{"min", config_to_json(obs.min)}, {"max", config_to_json(obs.max)}});
    }
    j["dynamic_obstacles"] = json::array();
    for (const auto& obs : s.world.dynamic_obstacles) {
        j["dynamic_obstacles"].push_back({{"center", config_to_json(obs.center)},
                                          {"radius", obs.radius},
                                          {"speed", obs.speed},
                                          {"policy", to_string(obs.policy)},
                                          {"heading", config_to_json(obs.heading)}});
    }
    j["start"] = config_to_json(s.world.start);
    j["goal"] = config_to_json(s.world.goal);
    j["robot"] = {{"radius", s.world.robot.radius}, {"speed", s.world.robot.speed}};
    j["planner"] = {{"iterations_per_tick", s.planner.iterations_per_tick},
                    {"blocking_radius", s.planner.blocking_radius},
                    {"sensing_range", s.planner.sensing_range},
                    {"near_root_threshold", s.planner.near_root_threshold},
                    {"gamma_s", s.planner.gamma_s},
                    {"samples", s.planner.samples}};
    j["rtrrt"] = {{"alpha", s.rtrrt.alpha},
                  {"beta", s.rtrrt.beta},
                  {"density_max", s.rtrrt.density_max},
                  {"min_radius", s.rtrrt.min_radius},
                  {"path_depth", s.rtrrt.path_depth}};
    j["sim"] = {{"dt", s.sim.dt},
                {"max_time", s.sim.max_time},
                {"goal_tolerance", s.sim.goal_tolerance}};
    j["seed"] = s.seed;
    if (s.world.mu_free >= 0.0) j["mu_free"] = s.world.mu_free;
    return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
    const json j = json::parse(text);
    Scenario s;
    s.world.bounds.width = j.at("bounds").at("width").get<double>();
    s.world.bounds.height = j.at("bounds").at("height").get<double>();
    if (s.world.bounds.width <= 0.0 || s.world.bounds.height <= 0.0) {
        throw std::invalid_argument("world bounds must be positive");
    }
    for (const auto& o : j.at("static_obstacles")) {
        StaticObstacle obs{config_from_json(o.at("min")), config_from_json(o.at("max"))};
        if (!(obs.min.x < obs.max.x && obs.min.y < obs.max.y)) {
            throw std::invalid_argument("static obstacle min corner must be below max corner");
        }
        s.world.static_obstacles.push_back(obs);
    }
    for (const auto& o : j.at("dynamic_obstacles")) {
        DynamicObstacle obs;
        obs.center = config_from_json(o.at("center"));
        obs.radius = o.at("radius").get<double>();
        obs.speed = o.at("speed").get<double>();
        obs.policy = motion_policy_from_string(o.at("policy").get<std::string>());
        if (o.contains("heading")) obs.heading = config_from_json(o.at("heading"));
        if (obs.radius <= 0.0) throw std::invalid_argument("dynamic obstacle radius must be positive");
        if (obs.speed < 0.0) throw std::invalid_argument("dynamic obstacle speed must be nonnegative");
        s.world.dynamic_obstacles.push_back(obs);
    }
    s.world.start = config_from_json(j.at("start"));
    s.world.goal = config_from_json(j.at("goal"));
    s.world.robot.radius = j.at("robot").at("radius").get<double>();
    s.world.robot.speed = j.at("robot").at("speed").get<double>();
    if (s.world.robot.radius <= 0.0 || s.world.robot.speed <= 0.0) {
        throw std::invalid_argument("robot radius and speed must be positive");
    }
    s.world.robot.position = s.world.start;
    const auto& p = j.at("planner");
    s.planner.iterations_per_tick = p.at("iterations_per_tick").get<int>();
    s.planner.blocking_radius = p.at("blocking_radius").get<double>();
    s.planner.sensing_range = p.at("sensing_range").get<double>();
    s.planner.near_root_threshold = p.value("near_root_threshold", 1e-9);
    s.planner.gamma_s = p.value("gamma_s", 1.1);
    s.planner.samples = p.at("samples").get<int>();
    if (j.contains("rtrrt")) {
        const auto& r = j.at("rtrrt");
        s.rtrrt.alpha = r.value("alpha", 0.1);
        s.rtrrt.beta = r.value("beta", 2.0);
        s.rtrrt.density_max = r.value("density_max", 10);
        s.rtrrt.min_radius = r.value("min_radius", 2.0 * s.world.robot.radius);
        s.rtrrt.path_depth = r.value("path_depth", 5);
    }
    const auto& sim = j.at("sim");
    s.sim.dt = sim.at("dt").get<double>();
    s.sim.max_time = sim.at("max_time").get<double>();
    s.sim.goal_tolerance = sim.value("goal_tolerance", 0.0);
    if (s.sim.dt <= 0.0) throw std::invalid_argument("dt must be positive");
    s.seed = j.value("seed", 0ULL);
    s.world.mu_free = j.value("mu_free", -1.0);

    if (!point_free(s.world.start, s.world, s.world.robot.radius)) {
        throw std::invalid_argument("start configuration is not in free space");
    }
    if (!point_free(s.world.goal, s.world, s.world.robot.radius)) {
        throw std::invalid_argument("goal configuration is not in free space");
    }
    return s;
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open scenario file for writing: " + path);
    out << scenario_to_json(scenario);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_from_json(text);
}

}  // namespace rtplan
