#pragma once

#include <cmath>

namespace passcast {

/// Point or vector in the field frame, meters (or meters/cycle for velocities).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double k) const { return {x * k, y * k}; }
    constexpr bool operator==(const Vec2&) const = default;

    double length() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

double dist(Vec2 a, Vec2 b);

/// Direction of (to - from) from the +x axis, counterclockwise, in [-180, 180).
/// Throws AngleUndefined when the points coincide.
double angle_deg(Vec2 from, Vec2 to);

/// Absolute difference of two directions, wrapped into [0, 180].
double angle_diff_deg(double a, double b);

}  // namespace passcast
