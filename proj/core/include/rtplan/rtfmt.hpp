#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>

#include "rtplan/planner.hpp"
#include "rtplan/sampling.hpp"
#include "rtplan/tree.hpp"

namespace rtplan {

/// Real-time fast marching tree planner. The whole sample set is drawn once
/// at construction; each tick runs one context update, a fixed iteration
/// budget of interleaved expansion and rewiring steps, path generation, and
/// possibly one root promotion.
class RtFmtPlanner : public Planner {
public:
    RtFmtPlanner(const World& world, const PlannerParams& params, std::uint64_t seed);

    Config plan_tick(const World& world) override;
    void retarget(const Config& new_goal, const World& world) override;
    bool has_global_path() const override;
    bool planning_complete() const override { return primary_wave_done_ && has_global_path(); }
    const Path& last_path() const override { return path_; }
    const TickStats& last_tick_stats() const override { return stats_; }
    std::string name() const override { return "rtfmt"; }

    // Algorithm building blocks, exposed for unit tests and fixtures.
    ContextUpdate update_context(const World& world);
    void expand_fmt(const World& world);
    void rewire_from_obstacles(const World& world);
    void rewire_from_root(const World& world);
    Path generate_path() const;
    void update_root(int new_root);

    const PlanTree& tree() const { return tree_; }
    PlanTree& tree() { return tree_; }
    int goal_id() const { return goal_id_; }
    double connection_radius() const { return tree_.connection_radius(); }
    bool expansion_exhausted() const { return !z_.has_value() && x_near_.empty() && v_to_open_.empty(); }
    std::optional<int> current_z() const { return z_; }
    std::size_t root_queue_size() const { return q_root_.size(); }
    std::size_t obstacle_queue_size() const { return q_obstacle_.size(); }
    std::size_t pending_obstacle_size() const { return pending_obstacle_.size(); }
    std::size_t to_open_size() const { return v_to_open_.size(); }
    const CollisionMap& collision_map() const { return collision_; }

    // Test hooks mirroring the bookkeeping update_context performs.
    void force_block(int id);
    void force_unblock(int id);

private:
    void close_current_z(const World& world);
    void open_to_open_set();
    std::optional<int> cheapest_parent(int id, unsigned mask, const World& world, double& cost_out) const;

    PlannerParams params_;
    double inflation_;
    CollisionMap collision_;
    PlanTree tree_;
    Config goal_config_;
    int goal_id_ = -1;

    // Persistent expansion state (Algorithm state carried between calls).
    std::optional<int> z_;
    std::vector<int> x_near_;       // popped from the back
    std::vector<int> v_open_new_;   // merged into open when the current z closes
    std::set<int> v_to_open_;       // closed nodes to reopen once expansion drains
    std::map<int, std::uint64_t> to_open_recorded_epoch_;
    std::uint64_t reopen_epoch_ = 1;

    bool primary_wave_done_ = false;  // open set drained once: batch-equivalent point
    std::deque<int> q_obstacle_;
    std::deque<int> q_root_;
    std::set<int> pending_obstacle_;  // blocked nodes owed a rewire once free

    Path path_;
    TickStats stats_;
    long tick_index_ = 0;
};

}  // namespace rtplan
