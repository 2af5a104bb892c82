#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "passcast/geometry.hpp"

namespace passcast {

enum class Side : std::uint8_t { Left, Right };

constexpr Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
constexpr char side_char(Side s) { return s == Side::Left ? 'l' : 'r'; }

inline constexpr int kTeamSize = 11;
inline constexpr int kPlayerCount = 2 * kTeamSize;

/// Referee state. Side-specific modes carry the side that was awarded the
/// play (the `_l` / `_r` suffix in server logs).
struct PlayMode {
    enum class Kind : std::uint8_t {
        BeforeKickOff,
        PlayOn,
        TimeOver,
        KickOff,
        KickIn,
        FreeKick,
        CornerKick,
        GoalKick,
        Goal,
        DropBall,
        Offside,
        PenaltyKick,
        Foul,
        BackPass,
        FreeKickFault,
        CatchFault,
        IndirectFreeKick,
        Other,
    };

    Kind kind = Kind::BeforeKickOff;
    std::optional<Side> side;

    static PlayMode play_on() { return {Kind::PlayOn, std::nullopt}; }

    /// Parses a server playmode name such as "play_on" or "kick_in_l".
    /// Unknown names map to Kind::Other.
    static PlayMode from_name(std::string_view name);
    std::string name() const;

    bool is_play_on() const { return kind == Kind::PlayOn; }
    /// Restart modes in which a player kicks a stationary ball back into play.
    bool is_set_play() const;

    bool operator==(const PlayMode&) const = default;
};

struct PlayerState {
    Side side = Side::Left;
    int unum = 1;
    Vec2 pos;
    Vec2 vel;

    bool operator==(const PlayerState&) const = default;
};

/// One simulation cycle. Players are stored Left 1..11 then Right 1..11.
struct Snapshot {
    int cycle = 0;
    Vec2 ball_pos;
    Vec2 ball_vel;
    std::array<PlayerState, kPlayerCount> players{};
    PlayMode playmode;

    static constexpr std::size_t index_of(Side side, int unum) {
        return (side == Side::Left ? 0 : kTeamSize) + static_cast<std::size_t>(unum - 1);
    }

    const PlayerState& player(Side side, int unum) const { return players[index_of(side, unum)]; }
    PlayerState& player(Side side, int unum) { return players[index_of(side, unum)]; }

    /// Snapshot with every player placed at the origin in canonical slots.
    static Snapshot empty();

    /// Describes the first violated invariant, or nullopt if valid.
    std::optional<std::string> check() const;

    bool operator==(const Snapshot&) const = default;
};

inline constexpr double kMaxBallAbsX = 60.0;
inline constexpr double kMaxBallAbsY = 40.0;

/// Point reflection through the field center with sides swapped.
Snapshot mirror(const Snapshot& s);

struct FieldSpec {
    double half_length = 52.5;
    double half_width = 34.0;
    Vec2 own_goal{-52.5, 0.0};
    Vec2 opp_goal{52.5, 0.0};
    double kickable_dist = 1.085;
    /// Distance/angle anchors: own goal, opponent goal, center, the four
    /// corners, own penalty spot, opponent penalty spot.
    std::array<Vec2, 9> important_points{{
        {-52.5, 0.0},
        {52.5, 0.0},
        {0.0, 0.0},
        {-52.5, -34.0},
        {-52.5, 34.0},
        {52.5, -34.0},
        {52.5, 34.0},
        {-41.5, 0.0},
        {41.5, 0.0},
    }};
};

}  // namespace passcast
