#include <algorithm>

#include "rtplan/planner.hpp"
#include "rtplan/tree.hpp"

namespace rtplan {

ContextUpdate apply_context_update(PlanTree& tree, const World& world, double sensing_range,
                                   double blocking_radius) {
    ContextUpdate ctx;
    ctx.robot = world.robot.position;
    ctx.goal = world.goal;

    std::vector<const DynamicObstacle*> in_range;
    for (const auto& obs : world.dynamic_obstacles) {
        if (dist(ctx.robot, obs.center) <= sensing_range) in_range.push_back(&obs);
    }

    // The root is the robot's own position and the cost origin of every
    // path; it keeps cost zero so that escape paths remain available while
    // the surrounding nodes are blocked.
    std::vector<int> covered;
    for (const DynamicObstacle* obs : in_range) {
        covered.clear();
        tree.for_each_near(obs->center, kInTree, blocking_radius,
                           [&](int id, double) { covered.push_back(id); });
        std::sort(covered.begin(), covered.end());
        for (int id : covered) {
            if (id != tree.root() && !tree.node(id).blocked) {
                tree.set_blocked(id);
                ctx.blocked.push_back(id);
            }
        }
    }

    const std::set<int> blocked_snapshot = tree.blocked_ids();
    for (int id : blocked_snapshot) {
        bool covered = false;
        for (const DynamicObstacle* obs : in_range) {
            if (node_blocked_by(tree.node(id).config, *obs, blocking_radius)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            tree.set_unblocked(id);
            ctx.unblocked.push_back(id);
        }
    }
    return ctx;
}

}  // namespace rtplan
