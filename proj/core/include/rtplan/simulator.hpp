#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

#include "rtplan/planner.hpp"
#include "rtplan/rtrrt.hpp"
#include "rtplan/sampling.hpp"

namespace rtplan {

enum class Env : std::uint8_t { Maze, Mine };
enum class PlannerKind : std::uint8_t { RtFmt, RtRrt };
enum class SimMode : std::uint8_t { NonRealTime, RealTime };
enum class ClockMode : std::uint8_t { Virtual, Wall };
enum class FailureReason : std::uint8_t { None, Collision, Timeout };

std::string to_string(Env env);
std::string to_string(PlannerKind kind);
std::string to_string(FailureReason reason);
Env env_from_string(const std::string& name);
PlannerKind planner_from_string(const std::string& name);

struct SimParams {
    double dt = 0.05;            // seconds per tick
    double max_time = 300.0;     // virtual seconds before timeout
    double goal_tolerance = 0.0; // <= 0 means "robot radius"
};

struct Scenario {
    World world;
    PlannerParams planner;
    RtRrtParams rtrrt;
    SimParams sim;
    std::uint64_t seed = 0;
};

/// Metrics of one simulation run. planning_time_s and arrival_time_s are NaN
/// when the corresponding event never happened.
struct RunMetrics {
    bool success = false;
    FailureReason failure_reason = FailureReason::Timeout;
    double planning_time_s = std::numeric_limits<double>::quiet_NaN();
    double executed_cost_m = 0.0;
    double arrival_time_s = std::numeric_limits<double>::quiet_NaN();
    long ticks = 0;
    double min_static_clearance = std::numeric_limits<double>::infinity();
    double min_dynamic_clearance = std::numeric_limits<double>::infinity();
    long path_inf_violations = 0;  // multi-node paths containing an infinite-cost node
};

/// Optional per-tick output sinks.
struct SimHooks {
    std::ostream* trajectory = nullptr;  // t,robot_x,robot_y,obs<i>_x,obs<i>_y...
    std::ostream* events = nullptr;      // tick,tree_size,root_id,path_kind,path_cost
};

/// Draws the per-run initial conditions of the dynamic obstacles: random
/// headings for the random-direction policy, random vertical position plus a
/// downward heading in the top half (upward otherwise) for vertical sweeps.
void initialize_dynamics(World& world, Rng& rng);

/// Advances every dynamic obstacle by speed*dt along its policy. Random
/// walkers redraw their heading on wall contact or every two seconds; sweeps
/// reverse at hallway ends. Obstacle discs never leave the bounds or enter
/// static obstacles.
void step_dynamics(World& world, double dt, Rng& rng);

/// Moves the robot min(speed*dt, distance) straight towards the target;
/// returns the displacement actually traveled.
double step_robot(RobotState& robot, const Config& target, double dt);

std::unique_ptr<Planner> make_planner(PlannerKind kind, const World& world,
                                      const PlannerParams& params, std::uint64_t seed,
                                      const RtRrtParams& extras);

/// Runs one full simulation. NonRealTime holds the robot until the first
/// global path exists and only then executes; RealTime moves the robot from
/// the first tick along whatever path the planner produces.
RunMetrics run_simulation(const Scenario& scenario, PlannerKind kind, SimMode mode,
                          ClockMode clock, const SimHooks* hooks = nullptr);

/// Parameterized environment generators (layouts vary with the seed, the
/// structural parameters follow the environment family).
World make_maze(std::uint64_t layout_seed);
World make_mine(std::uint64_t layout_seed);

/// Environment-specific scenario defaults (planner radii, robot kinematics,
/// tick rate, timeout) around the generated world.
Scenario make_scenario(Env env, std::uint64_t layout_seed, int samples, bool with_dynamic_obstacles,
                       std::uint64_t run_seed);

}  // namespace rtplan
