#pragma once

#include <deque>

#include "rtplan/planner.hpp"
#include "rtplan/sampling.hpp"
#include "rtplan/tree.hpp"

namespace rtplan {

/// RT-RRT* specific tuning. The sampling split (alpha, beta) follows the
/// published algorithm; the density bound, minimum neighbor radius and local
/// path depth are recorded here so every run logs the exact values used.
struct RtRrtParams {
    double alpha = 0.1;       // probability of drawing the goal directly
    double beta = 2.0;        // uniform vs informed-ellipse split of the rest
    int density_max = 6;      // max in-tree neighbors tolerated around a new sample
    double min_radius = 2.5;  // floor for the shrinking neighbor radius (r_s)
    int path_depth = 5;       // k: steps of greedy local path
    // Plan-then-execute runs keep sampling past the budget until the goal
    // connects; the budget is a minimum trying effort there, not a cap.
    bool extend_plan_phase = false;
};

/// RT-RRT* baseline: incremental sample-and-extend tree with RRT* parent
/// choice and two rewiring queues (random and from-root), exposed through the
/// same interface as the fast-marching planner. Edge lengths are not capped.
class RtRrtPlanner : public Planner {
public:
    RtRrtPlanner(const World& world, const PlannerParams& params, std::uint64_t seed,
                 const RtRrtParams& extras = {});

    Config plan_tick(const World& world) override;
    void retarget(const Config& new_goal, const World& world) override;
    bool has_global_path() const override;
    bool planning_complete() const override {
        return attempts_used_ >= attempts_budget_ && has_global_path();
    }
    const Path& last_path() const override { return path_; }
    const TickStats& last_tick_stats() const override { return stats_; }
    std::string name() const override { return "rtrrt"; }

    const PlanTree& tree() const { return tree_; }
    long attempts_used() const { return attempts_used_; }
    int goal_id() const { return goal_id_; }
    const RtRrtParams& extras() const { return extras_; }

    // Exposed for unit tests.
    void sample_extend(const World& world);
    void rewire_random_step(const World& world);
    void rewire_root_step(const World& world);
    Path generate_path() const;
    double neighbor_radius() const;
    const CollisionMap& collision_map() const { return collision_; }

private:
    Config draw_sample(const World& world);
    void mark_root_changed(int new_root);

    PlannerParams params_;
    RtRrtParams extras_;
    double inflation_;
    CollisionMap collision_;
    double mu_free_;
    PlanTree tree_;
    Rng rng_;
    Config goal_config_;
    int goal_id_ = -1;
    long attempts_used_ = 0;
    long attempts_budget_ = 0;

    std::deque<int> q_rewire_;  // random-node rewiring
    std::deque<int> q_root_;    // root-cascade rewiring
    std::vector<std::uint64_t> pushed_epoch_;
    std::uint64_t root_epoch_ = 1;

    Path path_;
    TickStats stats_;
    long tick_index_ = 0;
};

}  // namespace rtplan
