#include "passcast/world.hpp"

#include <cmath>
#include <utility>

namespace passcast {

namespace {

struct ModeName {
    std::string_view base;
    PlayMode::Kind kind;
    bool sided;
};

// The first entry for a kind is its canonical spelling.
constexpr ModeName kModeNames[] = {
    {"before_kick_off", PlayMode::Kind::BeforeKickOff, false},
    {"play_on", PlayMode::Kind::PlayOn, false},
    {"time_over", PlayMode::Kind::TimeOver, false},
    {"kick_off", PlayMode::Kind::KickOff, true},
    {"kick_in", PlayMode::Kind::KickIn, true},
    {"free_kick", PlayMode::Kind::FreeKick, true},
    {"corner_kick", PlayMode::Kind::CornerKick, true},
    {"goal_kick", PlayMode::Kind::GoalKick, true},
    {"goal", PlayMode::Kind::Goal, true},
    {"drop_ball", PlayMode::Kind::DropBall, false},
    {"offside", PlayMode::Kind::Offside, true},
    {"penalty_kick", PlayMode::Kind::PenaltyKick, true},
    {"foul_charge", PlayMode::Kind::Foul, true},
    {"foul_push", PlayMode::Kind::Foul, true},
    {"foul_multiple_attack", PlayMode::Kind::Foul, true},
    {"foul_ballout", PlayMode::Kind::Foul, true},
    {"back_pass", PlayMode::Kind::BackPass, true},
    {"free_kick_fault", PlayMode::Kind::FreeKickFault, true},
    {"catch_fault", PlayMode::Kind::CatchFault, true},
    {"indirect_free_kick", PlayMode::Kind::IndirectFreeKick, true},
};

}  // namespace

PlayMode PlayMode::from_name(std::string_view name) {
    std::optional<Side> side;
    std::string_view base = name;
    if (name.size() > 2 && name[name.size() - 2] == '_') {
        const char c = name.back();
        if (c == 'l' || c == 'r') {
            side = c == 'l' ? Side::Left : Side::Right;
            base = name.substr(0, name.size() - 2);
        }
    }
    for (const auto& m : kModeNames) {
        if (m.sided) {
            if (side && m.base == base) return {m.kind, side};
        } else if (m.base == name) {
            return {m.kind, std::nullopt};
        }
    }
    return {Kind::Other, std::nullopt};
}

std::string PlayMode::name() const {
    if (kind == Kind::Other) return "other";
    for (const auto& m : kModeNames) {
        if (m.kind != kind) continue;
        std::string out(m.base);
        if (m.sided && side) {
            out += '_';
            out += side_char(*side);
        }
        return out;
    }
    return "other";
}

bool PlayMode::is_set_play() const {
    switch (kind) {
        case Kind::KickOff:
        case Kind::KickIn:
        case Kind::FreeKick:
        case Kind::CornerKick:
        case Kind::GoalKick:
        case Kind::IndirectFreeKick:
        case Kind::Offside:
        case Kind::Foul:
        case Kind::BackPass:
        case Kind::FreeKickFault:
        case Kind::CatchFault:
        case Kind::DropBall:
            return true;
        default:
            return false;
    }
}

Snapshot Snapshot::empty() {
    Snapshot s;
    for (int u = 1; u <= kTeamSize; ++u) {
        s.player(Side::Left, u) = {Side::Left, u, {}, {}};
        s.player(Side::Right, u) = {Side::Right, u, {}, {}};
    }
    return s;
}

std::optional<std::string> Snapshot::check() const {
    if (cycle < 0) return "negative cycle";
    if (!ball_pos.finite() || !ball_vel.finite()) return "non-finite ball state";
    if (std::abs(ball_pos.x) > kMaxBallAbsX || std::abs(ball_pos.y) > kMaxBallAbsY) {
        return "ball outside field margin";
    }
    for (std::size_t i = 0; i < players.size(); ++i) {
        const auto& p = players[i];
        const Side expected = i < kTeamSize ? Side::Left : Side::Right;
        if (p.side != expected || p.unum != static_cast<int>(i % kTeamSize) + 1) {
            return "player slot " + std::to_string(i) + " holds the wrong side/unum";
        }
        if (!p.pos.finite() || !p.vel.finite()) return "non-finite player state";
    }
    return std::nullopt;
}

Snapshot mirror(const Snapshot& s) {
    Snapshot m;
    m.cycle = s.cycle;
    m.ball_pos = -s.ball_pos;
    m.ball_vel = -s.ball_vel;
    for (const auto& p : s.players) {
        const Side side = opposite(p.side);
        m.player(side, p.unum) = {side, p.unum, -p.pos, -p.vel};
    }
    m.playmode = s.playmode;
    if (m.playmode.side) m.playmode.side = opposite(*m.playmode.side);
    return m;
}

}  // namespace passcast
