#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace rtplan {

constexpr double kInfCost = std::numeric_limits<double>::infinity();

/// A point in the 2D configuration space (meters).
struct Config {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Config& a, const Config& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Config& a, const Config& b) { return !(a == b); }
};

inline double dist(const Config& u, const Config& v) {
    const double dx = v.x - u.x;
    const double dy = v.y - u.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double dist_sq(const Config& u, const Config& v) {
    const double dx = v.x - u.x;
    const double dy = v.y - u.y;
    return dx * dx + dy * dy;
}

/// Axis-aligned rectangular static obstacle, min corner strictly below max.
struct StaticObstacle {
    Config min;
    Config max;

    bool contains(const Config& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
};

enum class MotionPolicy : std::uint8_t { RandomDirection, VerticalSweep };

std::string to_string(MotionPolicy policy);
MotionPolicy motion_policy_from_string(const std::string& name);

/// Disc-shaped moving obstacle with a simple motion policy.
struct DynamicObstacle {
    Config center;
    double radius = 0.0;
    double speed = 0.0;
    MotionPolicy policy = MotionPolicy::RandomDirection;
    Config heading{1.0, 0.0};  // unit vector
    double time_since_redraw = 0.0;
};

struct WorldBounds {
    double width = 0.0;
    double height = 0.0;

    bool contains(const Config& p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
};

struct RobotState {
    Config position;
    double speed = 1.0;   // m/s
    double radius = 0.5;  // m
};

/// Static + dynamic scene description shared by the sampler, planners and the
/// simulator. The free-space measure is cached by the environment generators
/// because rasterizing it is far more expensive than anything else done at
/// construction time.
struct World {
    WorldBounds bounds;
    std::vector<StaticObstacle> static_obstacles;
    std::vector<DynamicObstacle> dynamic_obstacles;
    RobotState robot;
    Config start;
    Config goal;
    double mu_free = -1.0;  // cached free-space measure; < 0 means "not computed"
};

/// Distance from a point to an axis-aligned rectangle (0 inside).
double point_rect_distance(const Config& p, const StaticObstacle& r);

/// Distance from segment uv to an axis-aligned rectangle (0 on intersection).
double segment_rect_distance(const Config& u, const Config& v, const StaticObstacle& r);

/// True iff p lies inside the world bounds and at distance >= inflation from
/// every static obstacle. The free set is closed: distance exactly equal to
/// the inflation counts as free.
bool point_free(const Config& p, const World& world, double inflation);

/// True iff the whole segment uv stays in the inflated free set. Exact
/// segment-vs-rectangle distance test, no discretization.
bool segment_free(const Config& u, const Config& v, const World& world, double inflation);

/// Blocking predicate: node p is blocked by the obstacle when it lies within
/// the blocking radius r_b of the obstacle center.
bool node_blocked_by(const Config& p, const DynamicObstacle& obstacle, double r_b);

/// Midpoint-rasterized estimate of the area free of static obstacles,
/// inflated by the world's robot radius. `resolution` is the cell count per
/// axis and must be at least 100.
double free_space_measure(const World& world, int resolution);

/// Same estimate with an explicit inflation radius.
double free_space_measure(const World& world, int resolution, double inflation);

/// Spatial index over the static obstacles for a fixed inflation radius.
/// Queries give exactly the same answers as the free functions above; the
/// grid only prunes rectangles that cannot be within reach.
class CollisionMap {
public:
    CollisionMap(const World& world, double inflation);

    bool point_free(const Config& p) const;
    bool segment_free(const Config& u, const Config& v) const;
    double inflation() const { return inflation_; }
    long segment_checks() const { return segment_checks_; }
    long rect_tests() const { return rect_tests_; }

private:
    template <typename Fn>
    void visit_candidates(double min_x, double min_y, double max_x, double max_y, Fn fn) const;

    WorldBounds bounds_;
    std::vector<StaticObstacle> obstacles_;
    double inflation_;
    double cell_size_;
    int nx_ = 1;
    int ny_ = 1;
    std::vector<std::vector<int>> cells_;
    mutable std::vector<std::uint32_t> stamp_;
    mutable std::uint32_t query_id_ = 0;
    mutable long segment_checks_ = 0;
    mutable long rect_tests_ = 0;
};

}  // namespace rtplan
