#include "rtplan/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rtplan {

std::string to_string(NodeStatus status) {
    switch (status) {
        case NodeStatus::Unvisited: return "unvisited";
        case NodeStatus::Open: return "open";
        case NodeStatus::OpenNew: return "open_new";
        case NodeStatus::Closed: return "closed";
    }
    throw std::logic_error("unknown node status");
}

SpatialGrid::SpatialGrid(const WorldBounds& bounds, double cell_size) {
    if (cell_size <= 0.0) throw std::invalid_argument("grid cell size must be positive");
    cell_size_ = cell_size;
    nx_ = std::max(1, static_cast<int>(std::ceil(bounds.width / cell_size)));
    ny_ = std::max(1, static_cast<int>(std::ceil(bounds.height / cell_size)));
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
}

int SpatialGrid::cell_x(double x) const {
    return std::clamp(static_cast<int>(std::floor(x / cell_size_)), 0, nx_ - 1);
}

int SpatialGrid::cell_y(double y) const {
    return std::clamp(static_cast<int>(std::floor(y / cell_size_)), 0, ny_ - 1);
}

void SpatialGrid::insert(int id, const Config& p) {
    if (static_cast<std::size_t>(id) != positions_.size()) {
        throw std::invalid_argument("grid ids must be inserted densely in order");
    }
    positions_.push_back(p);
    cells_[static_cast<std::size_t>(cell_y(p.y)) * nx_ + cell_x(p.x)].push_back(id);
}

void SpatialGrid::query_radius(const Config& center, double radius, std::vector<int>& out) const {
    out.clear();
    const int ring = std::max(0, static_cast<int>(std::ceil(radius / cell_size_)));
    const int cx = cell_x(center.x);
    const int cy = cell_y(center.y);
    const double r_sq = radius * radius;
    for (int gy = std::max(0, cy - ring); gy <= std::min(ny_ - 1, cy + ring); ++gy) {
        for (int gx = std::max(0, cx - ring); gx <= std::min(nx_ - 1, cx + ring); ++gx) {
            for (int id : cells_[static_cast<std::size_t>(gy) * nx_ + gx]) {
                if (dist_sq(center, positions_[static_cast<std::size_t>(id)]) <= r_sq) out.push_back(id);
            }
        }
    }
}

PlanTree::PlanTree(const std::vector<Config>& samples, int root_index, double r_n, const WorldBounds& bounds)
    : grid_(bounds, r_n), r_n_(r_n), use_open_heap_(true) {
    if (samples.empty()) throw std::invalid_argument("sample set must not be empty");
    if (root_index < 0 || root_index >= static_cast<int>(samples.size())) {
        throw std::invalid_argument("root index out of range");
    }
    nodes_.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        nodes_.emplace_back();
        nodes_.back().config = samples[i];
        grid_.insert(static_cast<int>(i), samples[i]);
    }
    root_ = root_index;
    nodes_[static_cast<std::size_t>(root_)].status = NodeStatus::Open;
    nodes_[static_cast<std::size_t>(root_)].cost = 0.0;
    open_heap_.push(root_, 0.0);
}

PlanTree::PlanTree(const WorldBounds& bounds, double cell_size, const Config& root_config)
    : grid_(bounds, cell_size), r_n_(cell_size), use_open_heap_(false) {
    nodes_.emplace_back();
    nodes_.back().config = root_config;
    grid_.insert(0, root_config);
    root_ = 0;
    nodes_[0].status = NodeStatus::Open;
    nodes_[0].cost = 0.0;
}

int PlanTree::add_sample(const Config& p) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_.back().config = p;
    grid_.insert(id, p);
    return id;
}

std::optional<int> PlanTree::find_exact(const Config& p) const {
    std::vector<int> ids;
    grid_.query_radius(p, 0.0, ids);
    std::sort(ids.begin(), ids.end());
    for (int id : ids) {
        if (node(id).config == p) return id;
    }
    return std::nullopt;
}

std::vector<int> PlanTree::near(const Config& center, unsigned mask, double radius) const {
    std::vector<int> ids;
    grid_.query_radius(center, radius, ids);
    std::vector<std::pair<double, int>> ranked;
    ranked.reserve(ids.size());
    for (int id : ids) {
        if (mask_of(node(id).status) & mask) ranked.emplace_back(dist_sq(center, node(id).config), id);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<int> out;
    out.reserve(ranked.size());
    for (const auto& [d, id] : ranked) out.push_back(id);
    return out;
}

std::optional<int> PlanTree::nearest_in_tree(const Config& center) const {
    return grid_.nearest(center, [this](int id) { return in_tree(id); });
}

void PlanTree::set_status(int id, NodeStatus status) {
    Node& n = nodes_.at(static_cast<std::size_t>(id));
    if (n.status == status) return;
    n.status = status;
    if (use_open_heap_ && status == NodeStatus::Open) open_heap_.push(id, n.cost);
}

void PlanTree::set_cost(int id, double cost) {
    Node& n = nodes_.at(static_cast<std::size_t>(id));
    if (n.cost == cost) return;
    n.cost = cost;
    if (use_open_heap_ && n.status == NodeStatus::Open) open_heap_.push(id, cost);
}

void PlanTree::set_blocked(int id) {
    Node& n = nodes_.at(static_cast<std::size_t>(id));
    n.blocked = true;
    blocked_.insert(id);
    set_cost(id, kInfCost);
    recalculate_children_cost(id);
}

void PlanTree::set_unblocked(int id) {
    Node& n = nodes_.at(static_cast<std::size_t>(id));
    n.blocked = false;
    blocked_.erase(id);
    double cost = kInfCost;
    if (id == root_) {
        cost = 0.0;
    } else if (n.parent >= 0) {
        const Node& p = node(n.parent);
        if (std::isfinite(p.cost)) cost = p.cost + dist(p.config, n.config);
    }
    set_cost(id, cost);
    recalculate_children_cost(id);
}

void PlanTree::attach_child_link(int parent, int child) {
    auto& kids = nodes_.at(static_cast<std::size_t>(parent)).children;
    kids.insert(std::lower_bound(kids.begin(), kids.end(), child), child);
}

void PlanTree::detach_child_link(int parent, int child) {
    auto& kids = nodes_.at(static_cast<std::size_t>(parent)).children;
    const auto it = std::lower_bound(kids.begin(), kids.end(), child);
    if (it == kids.end() || *it != child) throw std::logic_error("parent/child links out of sync");
    kids.erase(it);
}

void PlanTree::update_parent_child(int new_parent, int child) {
    Node& c = nodes_.at(static_cast<std::size_t>(child));
    const Node& p = nodes_.at(static_cast<std::size_t>(new_parent));
    if (child == root_) throw std::invalid_argument("cannot reparent the root");
    if (new_parent == child) throw std::invalid_argument("node cannot be its own parent");
    if (p.status == NodeStatus::Unvisited) throw std::invalid_argument("parent must be part of the tree");
    // Cycle guard: reject when the new parent sits in the child's subtree.
    for (int cur = new_parent; cur >= 0; cur = node(cur).parent) {
        if (cur == child) throw std::invalid_argument("edge would create a cycle");
    }
    if (c.parent >= 0) detach_child_link(c.parent, child);
    c.parent = new_parent;
    attach_child_link(new_parent, child);
    const double cost =
        (c.blocked || !std::isfinite(p.cost)) ? kInfCost : p.cost + dist(p.config, c.config);
    set_cost(child, cost);
}

void PlanTree::recalculate_children_cost(int id) {
    std::vector<int> stack{id};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const Node& n = node(cur);
        for (int child : n.children) {
            const Node& c = node(child);
            const double cost =
                (c.blocked || !std::isfinite(n.cost)) ? kInfCost : n.cost + dist(n.config, c.config);
            set_cost(child, cost);
            stack.push_back(child);
        }
    }
}

void PlanTree::reroot_to_child(int new_root) {
    Node& nr = nodes_.at(static_cast<std::size_t>(new_root));
    if (nr.parent != root_) throw std::invalid_argument("new root must be a child of the current root");
    const int old_root = root_;
    detach_child_link(old_root, new_root);
    nr.parent = -1;
    nodes_[static_cast<std::size_t>(old_root)].parent = new_root;
    attach_child_link(new_root, old_root);
    root_ = new_root;
    set_cost(new_root, nr.blocked ? kInfCost : 0.0);
    recalculate_children_cost(new_root);
}

std::optional<int> PlanTree::open_min() {
    if (!use_open_heap_) throw std::logic_error("open-set heap disabled for this tree");
    return open_heap_.peek_min([this](int id) { return node(id).status == NodeStatus::Open; },
                               [this](int id) { return node(id).cost; });
}

void PlanTree::dump(std::ostream& os) const {
    char line[160];
    for (int id = 0; id < size(); ++id) {
        const Node& n = node(id);
        std::snprintf(line, sizeof(line), "%d,%.9g,%.9g,%d,%.9g,%s,%d\n", id, n.config.x, n.config.y,
                      n.parent, n.cost, to_string(n.status).c_str(), n.blocked ? 1 : 0);
        os << line;
    }
}

}  // namespace rtplan
