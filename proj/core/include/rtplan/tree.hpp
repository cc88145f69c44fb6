#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <vector>

#include "rtplan/geometry.hpp"

namespace rtplan {

enum class NodeStatus : std::uint8_t { Unvisited, Open, OpenNew, Closed };

std::string to_string(NodeStatus status);

/// Bitmask over NodeStatus for neighbor queries.
enum StatusMask : unsigned {
    kUnvisited = 1u << 0,
    kOpen = 1u << 1,
    kOpenNew = 1u << 2,
    kClosed = 1u << 3,
    kInTree = kOpen | kOpenNew | kClosed,
    kAnyStatus = kInTree | kUnvisited,
};

inline unsigned mask_of(NodeStatus s) { return 1u << static_cast<unsigned>(s); }

struct Node {
    Config config;
    int parent = -1;
    std::vector<int> children;  // kept sorted ascending
    double cost = kInfCost;
    NodeStatus status = NodeStatus::Unvisited;
    bool blocked = false;
};

/// Uniform grid over the world bounds for radius-bounded and nearest-point
/// queries. Cells hold node ids in insertion (= id) order.
class SpatialGrid {
public:
    SpatialGrid(const WorldBounds& bounds, double cell_size);

    void insert(int id, const Config& p);

    /// Ids within Euclidean distance <= radius of center, unsorted.
    void query_radius(const Config& center, double radius, std::vector<int>& out) const;

    /// Allocation-free radius visit in grid order; fn(id, distance_squared).
    template <typename Fn>
    void visit_radius(const Config& center, double radius, Fn fn) const {
        const int ring = std::max(0, static_cast<int>(std::ceil(radius / cell_size_)));
        const int cx = cell_x(center.x);
        const int cy = cell_y(center.y);
        const double r_sq = radius * radius;
        for (int gy = std::max(0, cy - ring); gy <= std::min(ny_ - 1, cy + ring); ++gy) {
            for (int gx = std::max(0, cx - ring); gx <= std::min(nx_ - 1, cx + ring); ++gx) {
                for (int id : cells_[static_cast<std::size_t>(gy) * nx_ + gx]) {
                    const double d = dist_sq(center, positions_[static_cast<std::size_t>(id)]);
                    if (d <= r_sq) fn(id, d);
                }
            }
        }
    }

    /// Nearest inserted id accepted by pred; ties broken by smaller id.
    template <typename Pred>
    std::optional<int> nearest(const Config& center, Pred pred) const;

    double cell_size() const { return cell_size_; }

private:
    int cell_x(double x) const;
    int cell_y(double y) const;

    double cell_size_;
    int nx_;
    int ny_;
    std::vector<std::vector<int>> cells_;
    std::vector<Config> positions_;
};

/// Lazy-deletion min-heap over (cost, id). Entries record the cost at push
/// time; extraction discards entries whose node is no longer open and
/// reinserts entries whose recorded cost went stale.
class OpenSet {
public:
    void push(int id, double cost) { heap_.emplace(cost, id); }
    void clear() { heap_ = {}; }

    /// Minimum-cost currently-open node, validating entries against the live
    /// costs supplied by the callbacks.
    template <typename IsOpen, typename CostOf>
    std::optional<int> peek_min(IsOpen is_open, CostOf cost_of) {
        while (!heap_.empty()) {
            const auto [recorded, id] = heap_.top();
            if (!is_open(id)) {
                heap_.pop();
                continue;
            }
            const double current = cost_of(id);
            if (recorded != current) {
                heap_.pop();
                push(id, current);
                continue;
            }
            return id;
        }
        return std::nullopt;
    }

private:
    struct MinOrder {
        bool operator()(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
            // Min-heap on (cost, id); NaN never enters (costs are finite or +inf).
            if (a.first != b.first) return a.first > b.first;
            return a.second > b.second;
        }
    };
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, MinOrder> heap_;
};

/// The planning tree: node arena, parent/child structure, cost propagation,
/// blocking, and radius-bounded neighbor queries through a uniform grid.
/// Mutation is strictly sequential within one planning session.
class PlanTree {
public:
    /// FMT-style construction: the full sample set up front, root opened at
    /// cost zero, grid cell size equal to the connection radius.
    PlanTree(const std::vector<Config>& samples, int root_index, double r_n, const WorldBounds& bounds);

    /// Incremental construction (sample set grows over time); the open-set
    /// heap is disabled since nothing extracts a cost minimum.
    PlanTree(const WorldBounds& bounds, double cell_size, const Config& root_config);

    int size() const { return static_cast<int>(nodes_.size()); }
    int root() const { return root_; }
    double connection_radius() const { return r_n_; }
    const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    bool in_tree(int id) const { return node(id).status != NodeStatus::Unvisited; }
    const std::set<int>& blocked_ids() const { return blocked_; }

    /// Appends an unvisited sample; returns its id.
    int add_sample(const Config& p);

    /// Id of a node with exactly this configuration, if any (smallest id wins).
    std::optional<int> find_exact(const Config& p) const;

    /// Nodes with status in `mask` within `radius` of center, ordered by
    /// ascending distance with ties broken by id.
    std::vector<int> near(const Config& center, unsigned mask, double radius) const;
    std::vector<int> near(const Config& center, unsigned mask) const { return near(center, mask, r_n_); }

    /// Unordered allocation-free variant for argmin scans; fn(id, dist_sq).
    template <typename Fn>
    void for_each_near(const Config& center, unsigned mask, double radius, Fn fn) const {
        grid_.visit_radius(center, radius, [&](int id, double d_sq) {
            if (mask_of(nodes_[static_cast<std::size_t>(id)].status) & mask) fn(id, d_sq);
        });
    }

    /// Nearest in-tree node to center, if any.
    std::optional<int> nearest_in_tree(const Config& center) const;

    void set_status(int id, NodeStatus status);
    void set_cost(int id, double cost);

    /// Marks the node blocked: its cost and every descendant's cost become
    /// +inf.
    void set_blocked(int id);

    /// Clears the blocked flag and recomputes the subtree costs from the
    /// parent; a node whose parent chain is still at +inf stays at +inf.
    void set_unblocked(int id);

    /// Reattaches `child` under `new_parent` and refreshes the child's cost.
    /// Throws if the edge would create a cycle, if the child is the root, or
    /// if the parent is not in the tree.
    void update_parent_child(int new_parent, int child);

    /// Depth-first recomputation of every descendant's cost; blocked
    /// descendants and their subtrees stay at +inf.
    void recalculate_children_cost(int id);

    /// Reverses the edge between the root and one of its children, making the
    /// child the new root at cost zero, then recomputes all costs.
    void reroot_to_child(int new_root);

    /// Minimum-cost open node (lazy heap peek); nullopt when no node is open.
    std::optional<int> open_min();

    /// One line per node: id,x,y,parent,cost,status,blocked.
    void dump(std::ostream& os) const;

private:
    void attach_child_link(int parent, int child);
    void detach_child_link(int parent, int child);

    std::vector<Node> nodes_;
    SpatialGrid grid_;
    OpenSet open_heap_;
    std::set<int> blocked_;
    int root_ = -1;
    double r_n_ = 0.0;
    bool use_open_heap_ = true;
};

template <typename Pred>
std::optional<int> SpatialGrid::nearest(const Config& center, Pred pred) const {
    const int cx = cell_x(center.x);
    const int cy = cell_y(center.y);
    const int max_ring = std::max(nx_, ny_);
    double best_sq = kInfCost;
    int best = -1;
    for (int ring = 0; ring <= max_ring; ++ring) {
        if (best >= 0) {
            const double reachable = (ring - 1) * cell_size_;
            if (reachable > 0.0 && reachable * reachable > best_sq) break;
        }
        for (int gy = cy - ring; gy <= cy + ring; ++gy) {
            if (gy < 0 || gy >= ny_) continue;
            for (int gx = cx - ring; gx <= cx + ring; ++gx) {
                if (gx < 0 || gx >= nx_) continue;
                if (std::max(std::abs(gx - cx), std::abs(gy - cy)) != ring) continue;
                for (int id : cells_[static_cast<std::size_t>(gy) * nx_ + gx]) {
                    if (!pred(id)) continue;
                    const double d = dist_sq(center, positions_[static_cast<std::size_t>(id)]);
                    if (d < best_sq || (d == best_sq && id < best)) {
                        best_sq = d;
                        best = id;
                    }
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

}  // namespace rtplan
