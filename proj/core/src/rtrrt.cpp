#include "rtplan/rtrrt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtplan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RtRrtPlanner::RtRrtPlanner(const World& world, const PlannerParams& params, std::uint64_t seed,
                           const RtRrtParams& extras)
    : params_(params),
      extras_(extras),
      inflation_(world.robot.radius),
      collision_(world, world.robot.radius),
      mu_free_(world.mu_free >= 0.0 ? world.mu_free : free_space_measure(world, 1000)),
      tree_(world.bounds, std::max(extras.min_radius, world.robot.radius), world.start),
      rng_(seed),
      goal_config_(world.goal),
      attempts_budget_(params.samples) {
    if (params_.iterations_per_tick < 1) throw std::invalid_argument("iterations per tick must be >= 1");
    if (params_.blocking_radius <= 0.0 || params_.blocking_radius > params_.sensing_range) {
        throw std::invalid_argument("blocking radius must satisfy 0 < r_b <= r_o");
    }
    if (!point_free(world.start, world, inflation_) || !point_free(world.goal, world, inflation_)) {
        throw std::invalid_argument("start and goal must be in free space");
    }
    extras_.min_radius = std::max(extras.min_radius, world.robot.radius);
    pushed_epoch_.assign(1, 0);
    stats_.tree_size = 1;
}

double RtRrtPlanner::neighbor_radius() const {
    const double n = static_cast<double>(tree_.size());
    const double shrinking = std::sqrt(mu_free_ * extras_.density_max / (kPi * n));
    return std::max(shrinking, extras_.min_radius);
}

Config RtRrtPlanner::draw_sample(const World& world) {
    const double pr = rng_.uniform01();
    if (pr > 1.0 - extras_.alpha && goal_id_ < 0) {
        return goal_config_;
    }
    const bool goal_found = goal_id_ >= 0 && std::isfinite(tree_.node(goal_id_).cost);
    if (pr <= (1.0 - extras_.alpha) / extras_.beta || !goal_found) {
        return Config{rng_.uniform(0.0, world.bounds.width), rng_.uniform(0.0, world.bounds.height)};
    }
    // Informed ellipse between the current root and the goal, major axis equal
    // to the best known goal cost.
    const Config root_cfg = tree_.node(tree_.root()).config;
    const double c_best = tree_.node(goal_id_).cost;
    const double c_min = dist(root_cfg, goal_config_);
    if (!(c_best > c_min)) {
        return Config{rng_.uniform(0.0, world.bounds.width), rng_.uniform(0.0, world.bounds.height)};
    }
    const double a = 0.5 * c_best;
    const double b = 0.5 * std::sqrt(c_best * c_best - c_min * c_min);
    const Config mid{0.5 * (root_cfg.x + goal_config_.x), 0.5 * (root_cfg.y + goal_config_.y)};
    const double ang = std::atan2(goal_config_.y - root_cfg.y, goal_config_.x - root_cfg.x);
    const double ca = std::cos(ang), sa = std::sin(ang);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double ux = rng_.uniform(-1.0, 1.0);
        const double uy = rng_.uniform(-1.0, 1.0);
        if (ux * ux + uy * uy > 1.0) continue;
        const double ex = a * ux, ey = b * uy;
        const Config p{mid.x + ca * ex - sa * ey, mid.y + sa * ex + ca * ey};
        if (world.bounds.contains(p)) return p;
    }
    return Config{rng_.uniform(0.0, world.bounds.width), rng_.uniform(0.0, world.bounds.height)};
}

void RtRrtPlanner::sample_extend(const World& world) {
    if (attempts_used_ >= attempts_budget_ &&
        !(extras_.extend_plan_phase && !has_global_path())) {
        return;
    }
    ++attempts_used_;

    const Config x_rand = draw_sample(world);
    const auto nearest = tree_.nearest_in_tree(x_rand);
    if (!nearest.has_value()) return;
    const Config nearest_cfg = tree_.node(*nearest).config;

    if (!world.bounds.contains(x_rand) || !collision_.segment_free(nearest_cfg, x_rand)) {
        q_rewire_.push_back(*nearest);
        return;
    }

    // Density-based rejection: skip regions that are already well covered
    // unless the sample extends past the floor radius. Goal samples are
    // always admitted so a saturated tree can still connect the goal.
    const double eps = neighbor_radius();
    const std::vector<int> neighbors = tree_.near(x_rand, kInTree, eps);
    const bool is_goal_sample = x_rand == goal_config_;
    if (!is_goal_sample && static_cast<int>(neighbors.size()) >= extras_.density_max &&
        dist(nearest_cfg, x_rand) <= extras_.min_radius) {
        q_rewire_.push_back(*nearest);
        return;
    }

    // RRT* parent choice: cheapest collision-free connection among the
    // neighborhood (plus the nearest node, which may lie outside it).
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(neighbors.size() + 1);
    auto consider = [&](int y) {
        const Node& yn = tree_.node(y);
        if (!std::isfinite(yn.cost)) return;
        ranked.emplace_back(yn.cost + dist(yn.config, x_rand), y);
    };
    for (int y : neighbors) consider(y);
    if (std::find(neighbors.begin(), neighbors.end(), *nearest) == neighbors.end()) consider(*nearest);
    std::sort(ranked.begin(), ranked.end());

    int parent = -1;
    for (const auto& [through, y] : ranked) {
        if (collision_.segment_free(tree_.node(y).config, x_rand)) {
            parent = y;
            break;
        }
    }
    if (parent < 0) return;

    const int id = tree_.add_sample(x_rand);
    tree_.update_parent_child(parent, id);
    tree_.set_status(id, NodeStatus::Open);
    pushed_epoch_.push_back(0);
    ++stats_.nodes_added;
    ++stats_.tree_size;
    if (goal_id_ < 0 && x_rand == goal_config_) goal_id_ = id;
    q_rewire_.push_back(id);
}

void RtRrtPlanner::rewire_random_step(const World& world) {
    if (q_rewire_.empty()) return;
    const int x_r = q_rewire_.front();
    q_rewire_.pop_front();
    const Node& n = tree_.node(x_r);
    if (!std::isfinite(n.cost)) return;

    const double eps = neighbor_radius();
    for (int y : tree_.near(n.config, kInTree, eps)) {
        if (y == x_r || y == tree_.root()) continue;
        const Node& yn = tree_.node(y);
        if (yn.blocked) continue;
        const double through = n.cost + dist(n.config, yn.config);
        if (through < yn.cost && collision_.segment_free(n.config, yn.config)) {
            tree_.update_parent_child(x_r, y);
            tree_.recalculate_children_cost(y);
            q_rewire_.push_back(y);
        }
    }
}

void RtRrtPlanner::rewire_root_step(const World& world) {
    if (q_root_.empty()) {
        q_root_.push_back(tree_.root());
        pushed_epoch_[static_cast<std::size_t>(tree_.root())] = root_epoch_;
        return;
    }
    const int x_s = q_root_.front();
    q_root_.pop_front();
    const Node& n = tree_.node(x_s);
    if (!std::isfinite(n.cost)) return;

    const double eps = neighbor_radius();
    for (int y : tree_.near(n.config, kInTree, eps)) {
        if (y == x_s) continue;
        const Node& yn = tree_.node(y);
        if (y != tree_.root() && !yn.blocked) {
            const double through = n.cost + dist(n.config, yn.config);
            if (through < yn.cost && collision_.segment_free(n.config, yn.config)) {
                tree_.update_parent_child(x_s, y);
                tree_.recalculate_children_cost(y);
            }
        }
        if (pushed_epoch_[static_cast<std::size_t>(y)] < root_epoch_) {
            pushed_epoch_[static_cast<std::size_t>(y)] = root_epoch_;
            q_root_.push_back(y);
        }
    }
}

Path RtRrtPlanner::generate_path() const {
    Path path;
    if (goal_id_ >= 0 && std::isfinite(tree_.node(goal_id_).cost)) {
        path.kind = PathKind::Global;
        for (int cur = goal_id_; cur >= 0; cur = tree_.node(cur).parent) path.ids.push_back(cur);
        std::reverse(path.ids.begin(), path.ids.end());
    } else {
        // Greedy descent towards the goal heuristic for up to k steps.
        path.kind = PathKind::Local;
        int cur = tree_.root();
        path.ids.push_back(cur);
        for (int step = 0; step < extras_.path_depth; ++step) {
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

void RtRrtPlanner::mark_root_changed(int new_root) {
    ++root_epoch_;
    q_root_.clear();
    q_root_.push_back(new_root);
    pushed_epoch_[static_cast<std::size_t>(new_root)] = root_epoch_;
}

Config RtRrtPlanner::plan_tick(const World& world) {
    const int tree_size = stats_.tree_size;
    stats_ = TickStats{};
    stats_.tick = tick_index_++;
    stats_.tree_size = tree_size;

    const ContextUpdate ctx =
        apply_context_update(tree_, world, params_.sensing_range, params_.blocking_radius);
    if (ctx.goal != goal_config_) retarget(ctx.goal, world);
    // Unblocked nodes regain finite costs through their parents; queue them so
    // the rewiring passes can also repair their parent choices.
    for (int id : ctx.unblocked) q_rewire_.push_back(id);

    for (int i = 0; i < params_.iterations_per_tick; ++i) {
        sample_extend(world);
        ++stats_.expand_calls;
    }
    // The reference drains the rewiring queues in whatever frame time remains;
    // a generous fixed pop budget approximates that deterministically.
    const int drain_budget = 128 * params_.iterations_per_tick;
    for (int i = 0; i < drain_budget && !q_rewire_.empty(); ++i) {
        rewire_random_step(world);
        ++stats_.obstacle_rewire_calls;
    }
    for (int i = 0; i < drain_budget; ++i) {
        rewire_root_step(world);
        ++stats_.root_rewire_calls;
        if (q_root_.empty()) break;
    }

    path_ = generate_path();
    if (path_.ids.size() >= 2 &&
        dist(world.robot.position, tree_.node(tree_.root()).config) <= params_.near_root_threshold) {
        const int new_root = path_.ids[1];
        tree_.reroot_to_child(new_root);
        mark_root_changed(new_root);
        path_ = generate_path();
    }

    stats_.root_id = tree_.root();
    stats_.path_kind = path_.kind;
    stats_.path_cost = path_.cost;
    return tree_.node(tree_.root()).config;
}

bool RtRrtPlanner::has_global_path() const {
    return goal_id_ >= 0 && std::isfinite(tree_.node(goal_id_).cost);
}

void RtRrtPlanner::retarget(const Config& new_goal, const World& world) {
    (void)world;
    if (!collision_.point_free(new_goal)) {
        throw std::invalid_argument("retarget goal lies inside a static obstacle");
    }
    goal_config_ = new_goal;
    const auto existing = tree_.find_exact(new_goal);
    goal_id_ = existing.has_value() ? *existing : -1;
}

}  // namespace rtplan
