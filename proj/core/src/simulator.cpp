#include "rtplan/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rtplan/rtfmt.hpp"

namespace rtplan {

std::string to_string(Env env) { return env == Env::Maze ? "maze" : "mine"; }

std::string to_string(PlannerKind kind) { return kind == PlannerKind::RtFmt ? "rtfmt" : "rtrrt"; }

std::string to_string(FailureReason reason) {
    switch (reason) {
        case FailureReason::None: return "none";
        case FailureReason::Collision: return "collision";
        case FailureReason::Timeout: return "timeout";
    }
    throw std::logic_error("unknown failure reason");
}

Env env_from_string(const std::string& name) {
    if (name == "maze") return Env::Maze;
    if (name == "mine") return Env::Mine;
    throw std::invalid_argument("unknown environment: " + name);
}

PlannerKind planner_from_string(const std::string& name) {
    if (name == "rtfmt") return PlannerKind::RtFmt;
    if (name == "rtrrt") return PlannerKind::RtRrt;
    throw std::invalid_argument("unknown planner: " + name);
}

namespace {

constexpr double kHeadingRedrawPeriod = 2.0;  // seconds

bool obstacle_position_ok(const World& world, const Config& p, double radius) {
    if (p.x < radius || p.x > world.bounds.width - radius || p.y < radius ||
        p.y > world.bounds.height - radius) {
        return false;
    }
    for (const auto& obs : world.static_obstacles) {
        if (point_rect_distance(p, obs) < radius) return false;
    }
    return true;
}

}  // namespace

void initialize_dynamics(World& world, Rng& rng) {
    for (auto& obs : world.dynamic_obstacles) {
        obs.time_since_redraw = 0.0;
        if (obs.policy == MotionPolicy::RandomDirection) {
            obs.heading = rng.unit_vector();
        } else {
            for (int attempt = 0; attempt < 200; ++attempt) {
                const double y = rng.uniform(obs.radius, world.bounds.height - obs.radius);
                if (obstacle_position_ok(world, Config{obs.center.x, y}, obs.radius)) {
                    obs.center.y = y;
                    break;
                }
            }
            const bool top_half = obs.center.y > 0.5 * world.bounds.height;
            obs.heading = Config{0.0, top_half ? -1.0 : 1.0};
        }
    }
}

void step_dynamics(World& world, double dt, Rng& rng) {
    if (dt <= 0.0) return;
    for (auto& obs : world.dynamic_obstacles) {
        if (obs.policy == MotionPolicy::RandomDirection) {
            obs.time_since_redraw += dt;
            if (obs.time_since_redraw >= kHeadingRedrawPeriod) {
                obs.heading = rng.unit_vector();
                obs.time_since_redraw = 0.0;
            }
        }
        const double step = obs.speed * dt;
        const Config proposed{obs.center.x + obs.heading.x * step, obs.center.y + obs.heading.y * step};
        if (obstacle_position_ok(world, proposed, obs.radius)) {
            obs.center = proposed;
        } else if (obs.policy == MotionPolicy::RandomDirection) {
            obs.heading = rng.unit_vector();
            obs.time_since_redraw = 0.0;
        } else {
            obs.heading.y = -obs.heading.y;
        }
    }
}

double step_robot(RobotState& robot, const Config& target, double dt) {
    const double d = dist(robot.position, target);
    if (d == 0.0 || dt <= 0.0) return 0.0;
    const double step = std::min(robot.speed * dt, d);
    const double scale = step / d;
    robot.position.x += (target.x - robot.position.x) * scale;
    robot.position.y += (target.y - robot.position.y) * scale;
    return step;
}

std::unique_ptr<Planner> make_planner(PlannerKind kind, const World& world,
                                      const PlannerParams& params, std::uint64_t seed,
                                      const RtRrtParams& extras) {
    if (kind == PlannerKind::RtFmt) return std::make_unique<RtFmtPlanner>(world, params, seed);
    return std::make_unique<RtRrtPlanner>(world, params, seed, extras);
}

RunMetrics run_simulation(const Scenario& scenario, PlannerKind kind, SimMode mode,
                          ClockMode clock, const SimHooks* hooks) {
    World world = scenario.world;
    Rng dynamics_rng(mix_seed(scenario.seed, 1));
    initialize_dynamics(world, dynamics_rng);

    const auto wall_start = std::chrono::steady_clock::now();
    RtRrtParams rtrrt_params = scenario.rtrrt;
    if (mode == SimMode::NonRealTime) rtrrt_params.extend_plan_phase = true;
    const std::unique_ptr<Planner> planner =
        make_planner(kind, world, scenario.planner, mix_seed(scenario.seed, 2), rtrrt_params);

    RunMetrics metrics;
    const double dt = scenario.sim.dt;
    if (dt <= 0.0) throw std::invalid_argument("tick length must be positive");
    const double goal_tol =
        scenario.sim.goal_tolerance > 0.0 ? scenario.sim.goal_tolerance : world.robot.radius;

    if (hooks != nullptr && hooks->trajectory != nullptr) {
        *hooks->trajectory << "t,robot_x,robot_y";
        for (std::size_t i = 0; i < world.dynamic_obstacles.size(); ++i) {
            *hooks->trajectory << ",obs" << i << "_x,obs" << i << "_y";
        }
        *hooks->trajectory << "\n";
    }
    if (hooks != nullptr && hooks->events != nullptr) {
        *hooks->events << "tick,tree_size,root_id,path_kind,path_cost\n";
    }

    bool executing = (mode == SimMode::RealTime);
    bool have_planning_time = false;
    double t = 0.0;

    while (t < scenario.sim.max_time) {
        const Config target = planner->plan_tick(world);
        if (!have_planning_time && planner->planning_complete()) {
            have_planning_time = true;
            if (clock == ClockMode::Wall) {
                metrics.planning_time_s =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
                        .count();
            } else {
                metrics.planning_time_s = t + dt;
            }
        }
        if (!executing && have_planning_time) executing = true;
        if (executing) metrics.executed_cost_m += step_robot(world.robot, target, dt);
        step_dynamics(world, dt, dynamics_rng);
        t += dt;
        ++metrics.ticks;

        for (const auto& obs : world.static_obstacles) {
            metrics.min_static_clearance =
                std::min(metrics.min_static_clearance, point_rect_distance(world.robot.position, obs));
        }
        const Path& path = planner->last_path();
        if (path.ids.size() >= 2 && !std::isfinite(path.cost)) ++metrics.path_inf_violations;

        if (hooks != nullptr && hooks->trajectory != nullptr) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f", t, world.robot.position.x,
                          world.robot.position.y);
            *hooks->trajectory << buf;
            for (const auto& obs : world.dynamic_obstacles) {
                std::snprintf(buf, sizeof(buf), ",%.6f,%.6f", obs.center.x, obs.center.y);
                *hooks->trajectory << buf;
            }
            *hooks->trajectory << "\n";
        }
        if (hooks != nullptr && hooks->events != nullptr) {
            const TickStats& s = planner->last_tick_stats();
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%ld,%d,%d,%s,%.6f\n", s.tick, s.tree_size, s.root_id,
                          s.path_kind == PathKind::Global ? "global" : "local", s.path_cost);
            *hooks->events << buf;
        }

        bool collided = false;
        for (const auto& obs : world.dynamic_obstacles) {
            const double clearance = dist(world.robot.position, obs.center) - obs.radius;
            metrics.min_dynamic_clearance = std::min(metrics.min_dynamic_clearance, clearance);
            if (clearance < world.robot.radius) collided = true;
        }
        if (collided) {
            metrics.failure_reason = FailureReason::Collision;
            return metrics;
        }
        if (dist(world.robot.position, world.goal) <= goal_tol) {
            metrics.success = true;
            metrics.failure_reason = FailureReason::None;
            metrics.arrival_time_s = t;
            return metrics;
        }
    }
    metrics.failure_reason = FailureReason::Timeout;
    return metrics;
}

namespace {

// Iterative recursive-backtracker maze over a square cell lattice; returns
// the set of carved lattice edges.
struct MazeEdges {
    std::vector<bool> vertical;    // between (i,j) and (i+1,j): index j*(C-1)+i
    std::vector<bool> horizontal;  // between (i,j) and (i,j+1): index j*C+i
};

MazeEdges carve_maze(int cells, Rng& rng) {
    MazeEdges carved;
    carved.vertical.assign(static_cast<std::size_t>(cells) * (cells - 1), false);
    carved.horizontal.assign(static_cast<std::size_t>(cells) * cells, false);
    std::vector<bool> visited(static_cast<std::size_t>(cells) * cells, false);
    std::vector<int> stack{0};
    visited[0] = true;
    while (!stack.empty()) {
        const int cur = stack.back();
        const int cx = cur % cells;
        const int cy = cur / cells;
        int options[4];
        int count = 0;
        if (cx + 1 < cells && !visited[static_cast<std::size_t>(cur) + 1]) options[count++] = 0;
        if (cx > 0 && !visited[static_cast<std::size_t>(cur) - 1]) options[count++] = 1;
        if (cy + 1 < cells && !visited[static_cast<std::size_t>(cur) + cells]) options[count++] = 2;
        if (cy > 0 && !visited[static_cast<std::size_t>(cur) - cells]) options[count++] = 3;
        if (count == 0) {
            stack.pop_back();
            continue;
        }
        const int dir = options[rng.below(static_cast<std::uint64_t>(count))];
        int next = cur;
        switch (dir) {
            case 0:
                carved.vertical[static_cast<std::size_t>(cy) * (cells - 1) + cx] = true;
                next = cur + 1;
                break;
            case 1:
                carved.vertical[static_cast<std::size_t>(cy) * (cells - 1) + cx - 1] = true;
                next = cur - 1;
                break;
            case 2:
                carved.horizontal[static_cast<std::size_t>(cy) * cells + cx] = true;
                next = cur + cells;
                break;
            case 3:
                carved.horizontal[static_cast<std::size_t>(cy - 1) * cells + cx] = true;
                next = cur - cells;
                break;
        }
        visited[static_cast<std::size_t>(next)] = true;
        stack.push_back(next);
    }
    return carved;
}

}  // namespace

World make_maze(std::uint64_t layout_seed) {
    constexpr int kCells = 6;
    constexpr double kCellSize = 5.0;
    constexpr double kHalfWall = 0.3;
    const double extent = kCells * kCellSize;

    World world;
    world.bounds = WorldBounds{extent, extent};
    world.robot = RobotState{Config{}, 2.0, 0.5};

    Rng rng(mix_seed(layout_seed, 0xAE11));
    MazeEdges carved = carve_maze(kCells, rng);

    // Knock out a few extra walls so alternative routes exist.
    for (int extra = 0; extra < kCells; ++extra) {
        if (rng.uniform01() < 0.5) {
            const std::size_t idx = rng.below(carved.vertical.size());
            carved.vertical[idx] = true;
        } else {
            const std::size_t idx = rng.below(carved.horizontal.size());
            carved.horizontal[idx] = true;
        }
    }

    auto clamp_x = [&](double v) { return std::clamp(v, 0.0, extent); };
    for (int j = 0; j < kCells; ++j) {
        for (int i = 0; i + 1 < kCells; ++i) {
            if (carved.vertical[static_cast<std::size_t>(j) * (kCells - 1) + i]) continue;
            const double x = (i + 1) * kCellSize;
            world.static_obstacles.push_back(
                StaticObstacle{Config{x - kHalfWall, clamp_x(j * kCellSize - kHalfWall)},
                               Config{x + kHalfWall, clamp_x((j + 1) * kCellSize + kHalfWall)}});
        }
    }
    for (int j = 0; j + 1 < kCells; ++j) {
        for (int i = 0; i < kCells; ++i) {
            if (carved.horizontal[static_cast<std::size_t>(j) * kCells + i]) continue;
            const double y = (j + 1) * kCellSize;
            world.static_obstacles.push_back(
                StaticObstacle{Config{clamp_x(i * kCellSize - kHalfWall), y - kHalfWall},
                               Config{clamp_x((i + 1) * kCellSize + kHalfWall), y + kHalfWall}});
        }
    }

    const double center0 = 0.5 * kCellSize;
    world.start = Config{center0, center0};
    world.goal = Config{extent - center0, extent - center0};
    world.robot.position = world.start;

    // Dynamic obstacles sit at fixed cell centers away from start and goal and
    // wander in random directions at half the robot speed.
    constexpr int kObstacles = 3;
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < kObstacles) {
        const int cell = static_cast<int>(rng.below(static_cast<std::uint64_t>(kCells * kCells)));
        const int cx = cell % kCells, cy = cell / kCells;
        if (cx + cy <= 2) continue;                                // near start
        if ((kCells - 1 - cx) + (kCells - 1 - cy) <= 2) continue;  // near goal
        if (std::find(chosen.begin(), chosen.end(), cell) != chosen.end()) continue;
        chosen.push_back(cell);
        DynamicObstacle obs;
        obs.center = Config{(cx + 0.5) * kCellSize, (cy + 0.5) * kCellSize};
        obs.radius = 0.3;
        obs.speed = 1.0;
        obs.policy = MotionPolicy::RandomDirection;
        world.dynamic_obstacles.push_back(obs);
    }

    world.mu_free = free_space_measure(world, 1000);
    return world;
}

World make_mine(std::uint64_t layout_seed) {
    constexpr int kCols = 6;
    constexpr int kRows = 5;
    constexpr double kPillar = 14.0;
    constexpr double kHall = 10.0;
    const double width = kCols * kPillar + (kCols + 1) * kHall;
    const double height = kRows * kPillar + (kRows + 1) * kHall;

    World world;
    world.bounds = WorldBounds{width, height};
    world.robot = RobotState{Config{}, 4.0, 1.5};

    for (int r = 0; r < kRows; ++r) {
        for (int c = 0; c < kCols; ++c) {
            const double x0 = kHall + c * (kPillar + kHall);
            const double y0 = kHall + r * (kPillar + kHall);
            world.static_obstacles.push_back(
                StaticObstacle{Config{x0, y0}, Config{x0 + kPillar, y0 + kPillar}});
        }
    }

    world.start = Config{0.5 * kHall, 0.5 * kHall};
    world.goal = Config{width - 0.5 * kHall, height - 0.5 * kHall};
    world.robot.position = world.start;

    // Trucks sweep the interior vertical hallways; their vertical position is
    // randomized per run by initialize_dynamics.
    Rng rng(mix_seed(layout_seed, 0xB1E5));
    std::vector<int> hallways;
    for (int h = 1; h < kCols; ++h) hallways.push_back(h);  // interior hallway indices
    for (std::size_t i = hallways.size(); i > 1; --i) {
        std::swap(hallways[i - 1], hallways[rng.below(i)]);
    }
    constexpr int kTrucks = 5;
    for (int i = 0; i < kTrucks && i < static_cast<int>(hallways.size()); ++i) {
        const double hx = hallways[static_cast<std::size_t>(i)] * (kPillar + kHall) + 0.5 * kHall;
        DynamicObstacle truck;
        truck.center = Config{hx, 0.5 * height};
        truck.radius = 2.1;
        truck.speed = 2.0;
        truck.policy = MotionPolicy::VerticalSweep;
        truck.heading = Config{0.0, 1.0};
        world.dynamic_obstacles.push_back(truck);
    }

    world.mu_free = free_space_measure(world, 1000);
    return world;
}

Scenario make_scenario(Env env, std::uint64_t layout_seed, int samples, bool with_dynamic_obstacles,
                       std::uint64_t run_seed) {
    Scenario scenario;
    scenario.world = env == Env::Maze ? make_maze(layout_seed) : make_mine(layout_seed);
    if (!with_dynamic_obstacles) scenario.world.dynamic_obstacles.clear();

    scenario.planner.samples = samples;
    scenario.planner.iterations_per_tick = 32;
    scenario.planner.gamma_s = 1.1;
    if (env == Env::Maze) {
        scenario.planner.blocking_radius = 2.0;
        scenario.planner.sensing_range = 10.0;
        scenario.sim.max_time = 300.0;
    } else {
        scenario.planner.blocking_radius = 14.0;
        scenario.planner.sensing_range = 50.0;
        scenario.sim.max_time = 450.0;
    }
    scenario.rtrrt.min_radius = 7.0 * scenario.world.robot.radius;
    scenario.sim.dt = 0.05;
    scenario.sim.goal_tolerance = scenario.world.robot.radius;
    scenario.seed = run_seed;
    return scenario;
}

}  // namespace rtplan
