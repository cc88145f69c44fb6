#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rtplan/geometry.hpp"

namespace rtplan {

enum class PathKind : std::uint8_t { Global, Local };

/// Path along tree edges starting at the current root. Global paths end at
/// the goal node; local paths end at the heuristic-best node.
struct Path {
    std::vector<int> ids;
    std::vector<Config> points;
    PathKind kind = PathKind::Local;
    double cost = 0.0;

    bool empty() const { return ids.empty(); }
};

struct PlannerParams {
    int iterations_per_tick = 32;        // N_e
    double blocking_radius = 2.0;        // r_b
    double sensing_range = 10.0;         // r_o
    double near_root_threshold = 1e-9;   // promotion distance; robot lands on nodes
    double gamma_s = 1.1;
    int samples = 1000;                  // planner-specific meaning, see README
};

/// Per-tick instrumentation; also the schema of the planner event log.
struct TickStats {
    long tick = 0;
    int tree_size = 0;
    int root_id = -1;
    PathKind path_kind = PathKind::Local;
    double path_cost = 0.0;
    int expand_calls = 0;
    int obstacle_rewire_calls = 0;
    int root_rewire_calls = 0;
    int nodes_added = 0;
};

/// Nodes blocked/unblocked by the dynamic obstacles during one context
/// update, plus the current robot and goal configurations.
struct ContextUpdate {
    Config robot;
    Config goal;
    std::vector<int> blocked;    // N_b: newly blocked this tick
    std::vector<int> unblocked;  // newly unblocked this tick
};

class PlanTree;

/// Blocks every tree node within r_b of a dynamic obstacle that is itself
/// within r_o of the robot, unblocks every blocked node no longer covered,
/// and reports the deltas.
ContextUpdate apply_context_update(PlanTree& tree, const World& world, double sensing_range,
                                   double blocking_radius);

/// Planner-agnostic interface driven by the simulator: one call per control
/// tick, returning the configuration the robot should steer towards.
class Planner {
public:
    virtual ~Planner() = default;

    virtual Config plan_tick(const World& world) = 0;
    virtual void retarget(const Config& new_goal, const World& world) = 0;
    virtual bool has_global_path() const = 0;

    /// True once the planner has consumed its whole sample budget and holds a
    /// global path; gates robot release in plan-then-execute runs.
    virtual bool planning_complete() const = 0;
    virtual const Path& last_path() const = 0;
    virtual const TickStats& last_tick_stats() const = 0;
    virtual std::string name() const = 0;
};

}  // namespace rtplan
