#pragma once

#include <array>
#include <optional>
#include <vector>

#include "passcast/rcg.hpp"
#include "passcast/world.hpp"

namespace passcast {

struct PlayerId {
    Side side = Side::Left;
    int unum = 1;

    bool operator==(const PlayerId&) const = default;
};

/// A ball release followed by a teammate (possibly the kicker) gaining the
/// ball. `state` is the kick-cycle snapshot with the kicker's team mirrored
/// onto the Left side, attacking +x.
struct PassEvent {
    int kick_cycle = 0;
    PlayerId kicker;
    int receiver_unum = 1;
    int receive_cycle = 0;
    Snapshot state;

    bool operator==(const PassEvent&) const = default;
};

struct LabelerConfig {
    int window = 100;
    /// Also treat set-play restarts (kick-ins, free kicks, ...) as live ball.
    bool include_set_plays = false;
};

/// Nearest player within kickable distance; ties go to Left, then lower unum.
std::optional<PlayerId> possession(const Snapshot& s, const FieldSpec& field);

std::vector<PassEvent> extract_pass_events(const ParsedLog& log, const FieldSpec& field,
                                           const LabelerConfig& cfg = {});

std::array<double, kTeamSize> label_onehot(const PassEvent& e);

}  // namespace passcast
