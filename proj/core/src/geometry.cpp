#include "rtplan/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtplan {

std::string to_string(MotionPolicy policy) {
    switch (policy) {
        case MotionPolicy::RandomDirection: return "random_direction";
        case MotionPolicy::VerticalSweep: return "vertical_sweep";
    }
    throw std::logic_error("unknown motion policy");
}

MotionPolicy motion_policy_from_string(const std::string& name) {
    if (name == "random_direction") return MotionPolicy::RandomDirection;
    if (name == "vertical_sweep") return MotionPolicy::VerticalSweep;
    throw std::invalid_argument("unknown motion policy: " + name);
}

double point_rect_distance(const Config& p, const StaticObstacle& r) {
    const double dx = std::max({r.min.x - p.x, 0.0, p.x - r.max.x});
    const double dy = std::max({r.min.y - p.y, 0.0, p.y - r.max.y});
    return std::sqrt(dx * dx + dy * dy);
}

namespace {

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

double point_segment_distance(const Config& p, const Config& a, const Config& b) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double len_sq = abx * abx + aby * aby;
    if (len_sq == 0.0) return dist(p, a);
    const double t = clamp01(((p.x - a.x) * abx + (p.y - a.y) * aby) / len_sq);
    return dist(p, Config{a.x + t * abx, a.y + t * aby});
}

int orientation(const Config& a, const Config& b, const Config& c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool segments_intersect(const Config& a, const Config& b, const Config& c, const Config& d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    // Collinear overlaps degenerate to zero distance and are caught by the
    // endpoint-to-segment distances in the caller.
    return false;
}

double segment_segment_distance(const Config& a, const Config& b, const Config& c, const Config& d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min(std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
                    std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

}  // namespace

double segment_rect_distance(const Config& u, const Config& v, const StaticObstacle& r) {
    if (r.contains(u) || r.contains(v)) return 0.0;
    const Config c00{r.min.x, r.min.y};
    const Config c10{r.max.x, r.min.y};
    const Config c11{r.max.x, r.max.y};
    const Config c01{r.min.x, r.max.y};
    double best = segment_segment_distance(u, v, c00, c10);
    best = std::min(best, segment_segment_distance(u, v, c10, c11));
    best = std::min(best, segment_segment_distance(u, v, c11, c01));
    best = std::min(best, segment_segment_distance(u, v, c01, c00));
    return best;
}

namespace {

bool strictly_inside(const Config& p, const StaticObstacle& r) {
    return p.x > r.min.x && p.x < r.max.x && p.y > r.min.y && p.y < r.max.y;
}

// Liang-Barsky clip of segment uv against the closed rectangle; true when the
// segment passes through the rectangle's open interior (grazing an edge or a
// corner does not count, keeping the free set closed).
bool segment_enters_interior(const Config& u, const Config& v, const StaticObstacle& r) {
    if (strictly_inside(u, r) || strictly_inside(v, r)) return true;
    const double dx = v.x - u.x;
    const double dy = v.y - u.y;
    double t0 = 0.0, t1 = 1.0;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {u.x - r.min.x, r.max.x - u.x, u.y - r.min.y, r.max.y - u.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
        } else {
            const double t = q[i] / p[i];
            if (p[i] < 0.0) {
                if (t > t1) return false;
                t0 = std::max(t0, t);
            } else {
                if (t < t0) return false;
                t1 = std::min(t1, t);
            }
        }
    }
    if (t1 <= t0) return false;
    const double tm = 0.5 * (t0 + t1);
    return strictly_inside(Config{u.x + tm * dx, u.y + tm * dy}, r);
}

}  // namespace

bool point_free(const Config& p, const World& world, double inflation) {
    if (inflation < 0.0) throw std::invalid_argument("inflation must be nonnegative");
    if (!world.bounds.contains(p)) return false;
    for (const auto& obs : world.static_obstacles) {
        if (point_rect_distance(p, obs) < inflation) return false;
        if (inflation == 0.0 && strictly_inside(p, obs)) return false;
    }
    return true;
}

bool segment_free(const Config& u, const Config& v, const World& world, double inflation) {
    if (!world.bounds.contains(u) || !world.bounds.contains(v)) return false;
    for (const auto& obs : world.static_obstacles) {
        if (segment_rect_distance(u, v, obs) < inflation) return false;
        if (inflation == 0.0 && segment_enters_interior(u, v, obs)) return false;
    }
    return true;
}

bool node_blocked_by(const Config& p, const DynamicObstacle& obstacle, double r_b) {
    if (r_b <= 0.0) throw std::invalid_argument("blocking radius must be positive");
    return dist(p, obstacle.center) <= r_b;
}

double free_space_measure(const World& world, int resolution) {
    return free_space_measure(world, resolution, world.robot.radius);
}

CollisionMap::CollisionMap(const World& world, double inflation)
    : bounds_(world.bounds), obstacles_(world.static_obstacles), inflation_(inflation) {
    if (inflation < 0.0) throw std::invalid_argument("inflation must be nonnegative");
    const double extent = std::max(bounds_.width, bounds_.height);
    cell_size_ = std::max(extent / 32.0, 1e-6);
    nx_ = std::max(1, static_cast<int>(std::ceil(bounds_.width / cell_size_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(bounds_.height / cell_size_)));
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    // Insert each rectangle into every cell its inflated extent touches.
    const double pad = inflation_ + 1e-9;
    for (std::size_t i = 0; i < obstacles_.size(); ++i) {
        const auto& r = obstacles_[i];
        const int x0 = std::clamp(static_cast<int>((r.min.x - pad) / cell_size_), 0, nx_ - 1);
        const int x1 = std::clamp(static_cast<int>((r.max.x + pad) / cell_size_), 0, nx_ - 1);
        const int y0 = std::clamp(static_cast<int>((r.min.y - pad) / cell_size_), 0, ny_ - 1);
        const int y1 = std::clamp(static_cast<int>((r.max.y + pad) / cell_size_), 0, ny_ - 1);
        for (int gy = y0; gy <= y1; ++gy) {
            for (int gx = x0; gx <= x1; ++gx) {
                cells_[static_cast<std::size_t>(gy) * nx_ + gx].push_back(static_cast<int>(i));
            }
        }
    }
    stamp_.assign(obstacles_.size(), 0);
}

template <typename Fn>
void CollisionMap::visit_candidates(double min_x, double min_y, double max_x, double max_y,
                                    Fn fn) const {
    ++query_id_;
    const int x0 = std::clamp(static_cast<int>(min_x / cell_size_), 0, nx_ - 1);
    const int x1 = std::clamp(static_cast<int>(max_x / cell_size_), 0, nx_ - 1);
    const int y0 = std::clamp(static_cast<int>(min_y / cell_size_), 0, ny_ - 1);
    const int y1 = std::clamp(static_cast<int>(max_y / cell_size_), 0, ny_ - 1);
    for (int gy = y0; gy <= y1; ++gy) {
        for (int gx = x0; gx <= x1; ++gx) {
            for (int idx : cells_[static_cast<std::size_t>(gy) * nx_ + gx]) {
                if (stamp_[static_cast<std::size_t>(idx)] == query_id_) continue;
                stamp_[static_cast<std::size_t>(idx)] = query_id_;
                if (!fn(obstacles_[static_cast<std::size_t>(idx)])) return;
            }
        }
    }
}

bool CollisionMap::point_free(const Config& p) const {
    if (!bounds_.contains(p)) return false;
    bool free = true;
    visit_candidates(p.x, p.y, p.x, p.y, [&](const StaticObstacle& r) {
        if (point_rect_distance(p, r) < inflation_ ||
            (inflation_ == 0.0 && strictly_inside(p, r))) {
            free = false;
            return false;
        }
        return true;
    });
    return free;
}

bool CollisionMap::segment_free(const Config& u, const Config& v) const {
    ++segment_checks_;
    if (!bounds_.contains(u) || !bounds_.contains(v)) return false;
    bool free = true;
    visit_candidates(std::min(u.x, v.x), std::min(u.y, v.y), std::max(u.x, v.x),
                     std::max(u.y, v.y), [&](const StaticObstacle& r) {
                         ++rect_tests_;
                         if (segment_rect_distance(u, v, r) < inflation_ ||
                             (inflation_ == 0.0 && segment_enters_interior(u, v, r))) {
                             free = false;
                             return false;
                         }
                         return true;
                     });
    return free;
}

double free_space_measure(const World& world, int resolution, double inflation) {
    if (resolution < 100) throw std::invalid_argument("resolution must be at least 100 per axis");
    const double cw = world.bounds.width / resolution;
    const double ch = world.bounds.height / resolution;
    const double cell_area = cw * ch;
    std::int64_t free_cells = 0;
    for (int iy = 0; iy < resolution; ++iy) {
        const double y = (iy + 0.5) * ch;
        for (int ix = 0; ix < resolution; ++ix) {
            const Config mid{(ix + 0.5) * cw, y};
            if (point_free(mid, world, inflation)) ++free_cells;
        }
    }
    return static_cast<double>(free_cells) * cell_area;
}

}  // namespace rtplan
