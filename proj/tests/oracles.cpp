#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace rtplan::oracle {

BatchFmtResult batch_fmt_star(const std::vector<Config>& samples, int root, double r_n,
                              const World& world, double inflation) {
    const int n = static_cast<int>(samples.size());
    BatchFmtResult result;
    result.parent.assign(static_cast<std::size_t>(n), -1);
    result.cost.assign(static_cast<std::size_t>(n), kInfCost);
    result.cost[static_cast<std::size_t>(root)] = 0.0;

    enum State : std::uint8_t { Unvisited, Open, OpenNew, Closed };
    std::vector<State> state(static_cast<std::size_t>(n), Unvisited);
    state[static_cast<std::size_t>(root)] = Open;

    // Radius inclusion uses squared distances, matching the implementation's
    // convention for points exactly at the connection radius.
    auto neighbors = [&](int i) {
        std::vector<int> out;
        for (int j = 0; j < n; ++j) {
            if (j != i && dist_sq(samples[static_cast<std::size_t>(i)],
                                  samples[static_cast<std::size_t>(j)]) <= r_n * r_n)
                out.push_back(j);
        }
        return out;
    };

    int z = root;
    while (z >= 0) {
        std::vector<int> opened;
        for (int x : neighbors(z)) {
            if (state[static_cast<std::size_t>(x)] != Unvisited) continue;
            double best = kInfCost;
            int y_min = -1;
            for (int y : neighbors(x)) {
                if (state[static_cast<std::size_t>(y)] != Open) continue;
                const double v = result.cost[static_cast<std::size_t>(y)] +
                                 dist(samples[static_cast<std::size_t>(y)], samples[static_cast<std::size_t>(x)]);
                if (v < best || (v == best && y < y_min)) {
                    best = v;
                    y_min = y;
                }
            }
            if (y_min < 0 || !std::isfinite(best)) continue;
            if (!segment_free(samples[static_cast<std::size_t>(y_min)], samples[static_cast<std::size_t>(x)],
                              world, inflation)) {
                continue;
            }
            result.parent[static_cast<std::size_t>(x)] = y_min;
            result.cost[static_cast<std::size_t>(x)] = best;
            state[static_cast<std::size_t>(x)] = OpenNew;
            opened.push_back(x);
        }
        state[static_cast<std::size_t>(z)] = Closed;
        for (int x : opened) state[static_cast<std::size_t>(x)] = Open;

        z = -1;
        double best = kInfCost;
        for (int i = 0; i < n; ++i) {
            if (state[static_cast<std::size_t>(i)] != Open) continue;
            const double c = result.cost[static_cast<std::size_t>(i)];
            if (z < 0 || c < best || (c == best && i < z)) {
                best = c;
                z = i;
            }
        }
    }
    return result;
}

std::vector<int> linear_near(const PlanTree& tree, const Config& center, unsigned mask,
                             double radius) {
    std::vector<std::pair<double, int>> ranked;
    for (int id = 0; id < tree.size(); ++id) {
        const Node& n = tree.node(id);
        if (!(mask_of(n.status) & mask)) continue;
        const double d = dist_sq(center, n.config);
        if (d <= radius * radius) ranked.emplace_back(d, id);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<int> out;
    out.reserve(ranked.size());
    for (const auto& [d, id] : ranked) out.push_back(id);
    return out;
}

std::optional<int> local_path_endpoint(const PlanTree& tree, const Config& goal) {
    int cur = tree.root();
    if (!std::isfinite(tree.node(cur).cost)) return std::nullopt;
    for (;;) {
        double best = kInfCost;
        int best_id = -1;
        for (int child : tree.node(cur).children) {
            const Node& c = tree.node(child);
            if (!std::isfinite(c.cost)) continue;
            const double v = c.cost + dist(c.config, goal);
            if (v < best || (v == best && child < best_id)) {
                best = v;
                best_id = child;
            }
        }
        if (best_id < 0) return cur;
        cur = best_id;
    }
}

bool costs_consistent(const PlanTree& tree, double tol, std::string* error) {
    for (int id = 0; id < tree.size(); ++id) {
        const Node& n = tree.node(id);
        if (!std::isfinite(n.cost)) continue;
        double sum = 0.0;
        int cur = id;
        int steps = 0;
        bool ok = true;
        while (tree.node(cur).parent >= 0) {
            const int p = tree.node(cur).parent;
            sum += dist(tree.node(cur).config, tree.node(p).config);
            cur = p;
            if (++steps > tree.size()) {
                ok = false;
                break;
            }
        }
        if (!ok || cur != tree.root() || std::abs(sum - n.cost) > tol) {
            if (error != nullptr) {
                std::ostringstream os;
                os << "node " << id << ": cost " << n.cost << " vs path sum " << sum;
                *error = os.str();
            }
            return false;
        }
    }
    return true;
}

bool acyclic(const PlanTree& tree) {
    for (int id = 0; id < tree.size(); ++id) {
        int cur = id;
        int steps = 0;
        while (cur >= 0) {
            cur = tree.node(cur).parent;
            if (++steps > tree.size()) return false;
        }
    }
    return true;
}

bool blocked_closure_holds(const PlanTree& tree, std::string* error) {
    for (int id = 0; id < tree.size(); ++id) {
        const Node& n = tree.node(id);
        bool ancestor_blocked = false;
        for (int cur = id; cur >= 0; cur = tree.node(cur).parent) {
            if (tree.node(cur).blocked) {
                ancestor_blocked = true;
                break;
            }
        }
        const bool should_be_inf =
            n.status == NodeStatus::Unvisited || n.blocked || ancestor_blocked;
        if (should_be_inf != !std::isfinite(n.cost)) {
            if (error != nullptr) {
                std::ostringstream os;
                os << "node " << id << ": cost " << n.cost << " status " << to_string(n.status)
                   << " blocked " << n.blocked << " ancestor_blocked " << ancestor_blocked;
                *error = os.str();
            }
            return false;
        }
    }
    return true;
}

bool connected_in_free_space(const World& world, const Config& from, const Config& to,
                             double inflation, int resolution) {
    const double cw = world.bounds.width / resolution;
    const double ch = world.bounds.height / resolution;
    std::vector<std::uint8_t> free(static_cast<std::size_t>(resolution) * resolution, 0);
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            const Config mid{(ix + 0.5) * cw, (iy + 0.5) * ch};
            free[static_cast<std::size_t>(iy) * resolution + ix] =
                point_free(mid, world, inflation) ? 1 : 0;
        }
    }
    auto cell_of = [&](const Config& p) {
        const int ix = std::clamp(static_cast<int>(p.x / cw), 0, resolution - 1);
        const int iy = std::clamp(static_cast<int>(p.y / ch), 0, resolution - 1);
        return std::pair<int, int>{ix, iy};
    };
    const auto [sx, sy] = cell_of(from);
    const auto [tx, ty] = cell_of(to);
    std::vector<std::uint8_t> seen(free.size(), 0);
    std::deque<std::pair<int, int>> queue{{sx, sy}};
    seen[static_cast<std::size_t>(sy) * resolution + sx] = 1;
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (x == tx && y == ty) return true;
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int nx = x + dx[k], ny = y + dy[k];
            if (nx < 0 || nx >= resolution || ny < 0 || ny >= resolution) continue;
            const std::size_t idx = static_cast<std::size_t>(ny) * resolution + nx;
            if (seen[idx] || !free[idx]) continue;
            seen[idx] = 1;
            queue.emplace_back(nx, ny);
        }
    }
    return false;
}

}  // namespace rtplan::oracle
