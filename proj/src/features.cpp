#include "passcast/features.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "passcast/error.hpp"

namespace passcast {

std::string_view level_name(FeatureLevel level) {
    switch (level) {
        case FeatureLevel::Low: return "low";
        case FeatureLevel::Mid: return "mid";
        case FeatureLevel::High: return "high";
    }
    return "?";
}

std::optional<FeatureLevel> parse_level(std::string_view name) {
    if (name == "low") return FeatureLevel::Low;
    if (name == "mid") return FeatureLevel::Mid;
    if (name == "high") return FeatureLevel::High;
    return std::nullopt;
}

std::optional<FeatureLevel> level_for_dims(std::size_t dims) {
    for (auto level : {FeatureLevel::Low, FeatureLevel::Mid, FeatureLevel::High}) {
        if (feature_dims(level) == dims) return level;
    }
    return std::nullopt;
}

std::vector<FeatureBlock> feature_layout(FeatureLevel level) {
    std::vector<FeatureBlock> blocks = {
        {"ball_pos", 2},     {"ball_vel", 2},     {"teammate_pos", 22},
        {"opponent_pos", 22}, {"teammate_vel", 22}, {"opponent_vel", 22},
    };
    if (level == FeatureLevel::Low) return blocks;
    blocks.insert(blocks.end(), {
                                    {"ball_point_dist", 9},
                                    {"ball_point_angle", 9},
                                    {"ball_player_dist", 22},
                                    {"ball_player_angle", 22},
                                    {"player_point_dist", 198},
                                });
    if (level == FeatureLevel::Mid) return blocks;
    blocks.insert(blocks.end(), {
                                    {"teammate_free_angle", 11},
                                    {"teammate_min_dist_teammate", 11},
                                    {"teammate_min_dist_opponent", 11},
                                });
    return blocks;
}

double free_angle(Vec2 ball, Vec2 teammate, std::span<const Vec2> opponents) {
    if (ball == teammate) return 180.0;
    const double reach = dist(ball, teammate);
    const double lane = angle_deg(ball, teammate);
    double best = 180.0;
    for (const Vec2& o : opponents) {
        if (dist(ball, o) > reach) continue;
        const double gap = o == ball ? 0.0 : angle_diff_deg(lane, angle_deg(ball, o));
        best = std::min(best, gap);
    }
    return best;
}

double min_dist_to_group(Vec2 p, std::span<const Vec2> group) {
    if (group.empty()) throw EmptyGroup();
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& q : group) best = std::min(best, dist(p, q));
    return best;
}

namespace {

class Writer {
public:
    Writer(std::span<double> out, const FeatureScales& scales) : out_(out), scales_(scales) {}

    void put(double raw, double scale) {
        out_[n_++] = std::clamp(raw / scale, -scales_.clip, scales_.clip);
    }
    void pos(Vec2 p) {
        put(p.x, scales_.x);
        put(p.y, scales_.y);
    }
    void vel(Vec2 v) {
        put(v.x, scales_.velocity);
        put(v.y, scales_.velocity);
    }
    void distance(double d) { put(d, scales_.distance); }
    void angle(Vec2 from, Vec2 to) { put(from == to ? 0.0 : angle_deg(from, to), scales_.angle); }
    void raw_angle(double deg) { put(deg, scales_.angle); }

    std::size_t written() const { return n_; }

private:
    std::span<double> out_;
    const FeatureScales& scales_;
    std::size_t n_ = 0;
};

}  // namespace

void extract_into(const Snapshot& s, FeatureLevel level, const FieldSpec& field, std::span<double> out,
                  const FeatureScales& scales) {
    if (out.size() != feature_dims(level)) {
        throw DimensionMismatch("feature buffer holds " + std::to_string(out.size()) + " values, level " +
                                std::string(level_name(level)) + " needs " + std::to_string(feature_dims(level)));
    }
    Writer w(out, scales);

    // players[] order is teammates (Left) 1..11 then opponents (Right) 1..11.
    w.pos(s.ball_pos);
    w.vel(s.ball_vel);
    for (const auto& p : s.players) w.pos(p.pos);
    for (const auto& p : s.players) w.vel(p.vel);
    if (level == FeatureLevel::Low) return;

    for (const Vec2& pt : field.important_points) w.distance(dist(s.ball_pos, pt));
    for (const Vec2& pt : field.important_points) w.angle(s.ball_pos, pt);
    for (const auto& p : s.players) w.distance(dist(s.ball_pos, p.pos));
    for (const auto& p : s.players) w.angle(s.ball_pos, p.pos);
    for (const auto& p : s.players) {
        for (const Vec2& pt : field.important_points) w.distance(dist(p.pos, pt));
    }
    if (level == FeatureLevel::Mid) return;

    std::array<Vec2, kTeamSize> mates{};
    std::array<Vec2, kTeamSize> opps{};
    for (int u = 1; u <= kTeamSize; ++u) {
        mates[u - 1] = s.player(Side::Left, u).pos;
        opps[u - 1] = s.player(Side::Right, u).pos;
    }
    for (const Vec2& m : mates) w.raw_angle(free_angle(s.ball_pos, m, opps));
    std::array<Vec2, kTeamSize - 1> others{};
    for (std::size_t u = 0; u < mates.size(); ++u) {
        std::size_t k = 0;
        for (std::size_t v = 0; v < mates.size(); ++v) {
            if (v != u) others[k++] = mates[v];
        }
        w.distance(min_dist_to_group(mates[u], others));
    }
    for (const Vec2& m : mates) w.distance(min_dist_to_group(m, opps));
}

FeatureVector extract(const Snapshot& s, FeatureLevel level, const FieldSpec& field, const FeatureScales& scales) {
    FeatureVector fv{level, std::vector<double>(feature_dims(level))};
    extract_into(s, level, field, fv.values, scales);
    return fv;
}

}  // namespace passcast
