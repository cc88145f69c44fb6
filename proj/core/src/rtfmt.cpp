#include "rtplan/rtfmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtplan {

namespace {

PlanTree make_plan_tree(const World& world, const PlannerParams& params, std::uint64_t seed) {
    if (params.samples < 2) throw std::invalid_argument("rtfmt requires at least 2 samples");
    if (params.iterations_per_tick < 1) throw std::invalid_argument("iterations per tick must be >= 1");
    if (params.blocking_radius <= 0.0 || params.blocking_radius > params.sensing_range) {
        throw std::invalid_argument("blocking radius must satisfy 0 < r_b <= r_o");
    }
    SamplerParams sp;
    sp.count = params.samples;
    sp.gamma_s = params.gamma_s;
    sp.seed = seed;
    const std::vector<Config> samples = sample_free(world, sp);
    const double mu = world.mu_free >= 0.0 ? world.mu_free : free_space_measure(world, 1000);
    const double r_n = neighborhood_radius(params.samples, 2, mu, params.gamma_s);
    // Ids: 0..N-1 samples, N start (root), N+1 goal.
    return PlanTree(samples, params.samples, r_n, world.bounds);
}

}  // namespace

RtFmtPlanner::RtFmtPlanner(const World& world, const PlannerParams& params, std::uint64_t seed)
    : params_(params),
      inflation_(world.robot.radius),
      collision_(world, world.robot.radius),
      tree_(make_plan_tree(world, params, seed)),
      goal_config_(world.goal),
      goal_id_(params.samples + 1),
      z_(params.samples) {
    stats_.tree_size = 1;
}

ContextUpdate RtFmtPlanner::update_context(const World& world) {
    ContextUpdate ctx =
        apply_context_update(tree_, world, params_.sensing_range, params_.blocking_radius);
    for (int id : ctx.blocked) pending_obstacle_.insert(id);
    if (!ctx.blocked.empty() || !ctx.unblocked.empty()) ++reopen_epoch_;
    return ctx;
}

std::optional<int> RtFmtPlanner::cheapest_parent(int id, unsigned mask, const World& world,
                                                 double& cost_out) const {
    (void)world;
    const Config& x = tree_.node(id).config;
    double best = kInfCost;
    int best_id = -1;
    tree_.for_each_near(x, mask, tree_.connection_radius(), [&](int y, double d_sq) {
        if (y == id) return;
        const Node& yn = tree_.node(y);
        if (!std::isfinite(yn.cost)) return;
        // sqrt(d_sq) is bit-identical to dist() here and reuses the grid's value
        const double through = yn.cost + std::sqrt(d_sq);
        if (through < best || (through == best && y < best_id)) {
            best = through;
            best_id = y;
        }
    });
    if (best_id < 0) return std::nullopt;
    cost_out = best;
    return best_id;
}

void RtFmtPlanner::open_to_open_set() {
    for (int id : v_to_open_) tree_.set_status(id, NodeStatus::Open);
    v_to_open_.clear();
}

void RtFmtPlanner::close_current_z(const World& world) {
    const int z_old = *z_;
    for (int id : v_open_new_) tree_.set_status(id, NodeStatus::Open);
    v_open_new_.clear();
    tree_.set_status(z_old, NodeStatus::Closed);

    // Remember z for reopening when it still has reachable unvisited
    // neighbors; re-recording is suppressed until the context changes so that
    // exhaustion terminates in static worlds.
    auto it = to_open_recorded_epoch_.find(z_old);
    const std::uint64_t last = it == to_open_recorded_epoch_.end() ? 0 : it->second;
    if (last < reopen_epoch_) {
        const Config& zc = tree_.node(z_old).config;
        for (int x : tree_.near(zc, kUnvisited)) {
            if (collision_.segment_free(zc, tree_.node(x).config)) {
                v_to_open_.insert(z_old);
                to_open_recorded_epoch_[z_old] = reopen_epoch_;
                break;
            }
        }
    }

    // When the open set drains the primary wave is exhausted; pending reopens
    // (v_to_open_) are applied by the next expansion call.
    z_ = tree_.open_min();
    if (!z_.has_value()) primary_wave_done_ = true;
}

void RtFmtPlanner::expand_fmt(const World& world) {
    ++stats_.expand_calls;

    if (!z_.has_value() && x_near_.empty()) {
        if (!v_to_open_.empty()) {
            open_to_open_set();
            z_ = tree_.open_min();
        }
        return;  // exhausted when nothing was pending
    }

    if (x_near_.empty()) {
        x_near_ = tree_.near(tree_.node(*z_).config, kUnvisited);
        if (x_near_.empty()) close_current_z(world);
        return;
    }

    const int x = x_near_.back();
    x_near_.pop_back();

    double through = kInfCost;
    const auto y_min = cheapest_parent(x, kOpen, world, through);
    if (y_min.has_value() &&
        collision_.segment_free(tree_.node(*y_min).config, tree_.node(x).config)) {
        tree_.update_parent_child(*y_min, x);
        tree_.set_status(x, NodeStatus::OpenNew);
        v_open_new_.push_back(x);
        ++stats_.nodes_added;
        ++stats_.tree_size;
    }

    if (x_near_.empty()) close_current_z(world);
}

void RtFmtPlanner::rewire_from_obstacles(const World& world) {
    ++stats_.obstacle_rewire_calls;

    if (q_obstacle_.empty()) {
        for (int id : pending_obstacle_) q_obstacle_.push_back(id);
        return;
    }

    const int x_b = q_obstacle_.front();
    q_obstacle_.pop_front();
    if (tree_.node(x_b).blocked) return;  // still inside the obstacle region; stays pending
    pending_obstacle_.erase(x_b);
    if (x_b == tree_.root() || !tree_.in_tree(x_b)) return;

    double through = kInfCost;
    const auto y_min = cheapest_parent(x_b, kOpen | kClosed, world, through);
    if (y_min.has_value() && through < tree_.node(x_b).cost &&
        collision_.segment_free(tree_.node(*y_min).config, tree_.node(x_b).config)) {
        tree_.update_parent_child(*y_min, x_b);
        tree_.recalculate_children_cost(x_b);
        for (int child : tree_.node(x_b).children) q_obstacle_.push_back(child);
    }
}

void RtFmtPlanner::rewire_from_root(const World& world) {
    ++stats_.root_rewire_calls;
    if (q_root_.empty()) return;

    const int x = q_root_.front();
    q_root_.pop_front();

    if (x != tree_.root() && tree_.in_tree(x) && !tree_.node(x).blocked) {
        double through = kInfCost;
        const auto y_min = cheapest_parent(x, kOpen | kClosed, world, through);
        if (y_min.has_value() && through < tree_.node(x).cost &&
            collision_.segment_free(tree_.node(*y_min).config, tree_.node(x).config)) {
            tree_.update_parent_child(*y_min, x);
            tree_.recalculate_children_cost(x);
        }
    }
    for (int child : tree_.node(x).children) q_root_.push_back(child);
}

Path RtFmtPlanner::generate_path() const {
    Path path;
    if (goal_id_ >= 0 && tree_.in_tree(goal_id_) && std::isfinite(tree_.node(goal_id_).cost)) {
        path.kind = PathKind::Global;
        for (int cur = goal_id_; cur >= 0; cur = tree_.node(cur).parent) path.ids.push_back(cur);
        std::reverse(path.ids.begin(), path.ids.end());
    } else {
        // Local path: best-first descent over the tree's children minimizing
        // cost plus goal heuristic, run to unbounded depth. The A*-style value
        // c(x) + |x - goal| is minimized over each frontier step; a whole-tree
        // argmin of that value degenerates to the root by the triangle
        // inequality, so the descent is what makes local paths usable.
        path.kind = PathKind::Local;
        int cur = tree_.root();
        path.ids.push_back(cur);
        for (;;) {
            double best = kInfCost;
            int best_child = -1;
            for (int child : tree_.node(cur).children) {
                const Node& c = tree_.node(child);
                if (!std::isfinite(c.cost)) continue;
                const double value = c.cost + dist(c.config, goal_config_);
                if (value < best || (value == best && child < best_child)) {
                    best = value;
                    best_child = child;
                }
            }
            if (best_child < 0) break;
            path.ids.push_back(best_child);
            cur = best_child;
        }
    }
    path.points.reserve(path.ids.size());
    for (int id : path.ids) path.points.push_back(tree_.node(id).config);
    path.cost = tree_.node(path.ids.back()).cost;
    return path;
}

void RtFmtPlanner::update_root(int new_root) {
    tree_.reroot_to_child(new_root);
    q_root_.clear();
    q_root_.push_back(new_root);
}

Config RtFmtPlanner::plan_tick(const World& world) {
    const int tree_size = stats_.tree_size;
    stats_ = TickStats{};
    stats_.tick = tick_index_++;
    stats_.tree_size = tree_size;

    const ContextUpdate ctx = update_context(world);
    if (ctx.goal != goal_config_) retarget(ctx.goal, world);

    for (int i = 0; i < params_.iterations_per_tick; ++i) {
        expand_fmt(world);
        rewire_from_obstacles(world);
        rewire_from_root(world);
    }

    path_ = generate_path();
    if (path_.ids.size() >= 2 &&
        dist(world.robot.position, tree_.node(tree_.root()).config) <= params_.near_root_threshold) {
        update_root(path_.ids[1]);
        path_ = generate_path();
    }

    stats_.root_id = tree_.root();
    stats_.path_kind = path_.kind;
    stats_.path_cost = path_.cost;
    return tree_.node(tree_.root()).config;
}

bool RtFmtPlanner::has_global_path() const {
    return goal_id_ >= 0 && tree_.in_tree(goal_id_) && std::isfinite(tree_.node(goal_id_).cost);
}

void RtFmtPlanner::retarget(const Config& new_goal, const World& world) {
    (void)world;
    if (!collision_.point_free(new_goal)) {
        throw std::invalid_argument("retarget goal lies inside a static obstacle");
    }
    const auto existing = tree_.find_exact(new_goal);
    goal_id_ = existing.has_value() ? *existing : tree_.add_sample(new_goal);
    goal_config_ = new_goal;
    for (int id : tree_.near(new_goal, kClosed)) v_to_open_.insert(id);
    ++reopen_epoch_;
}

void RtFmtPlanner::force_block(int id) {
    tree_.set_blocked(id);
    pending_obstacle_.insert(id);
    ++reopen_epoch_;
}

void RtFmtPlanner::force_unblock(int id) {
    tree_.set_unblocked(id);
    ++reopen_epoch_;
}

}  // namespace rtplan
