#include "passcast/geometry.hpp"

#include <numbers>

#include "passcast/error.hpp"

namespace passcast {

double dist(Vec2 a, Vec2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

double angle_deg(Vec2 from, Vec2 to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (dx == 0.0 && dy == 0.0) {
        throw AngleUndefined();
    }
    const double deg = std::atan2(dy, dx) * (180.0 / std::numbers::pi);
    // atan2 yields (-180, 180]; fold the closed end onto -180.
    return deg >= 180.0 ? deg - 360.0 : deg;
}

double angle_diff_deg(double a, double b) {
    double d = std::fmod(std::abs(a - b), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

}  // namespace passcast
