#include "passcast/labeler.hpp"

#include <stdexcept>
#include <tuple>

namespace passcast {

std::optional<PlayerId> possession(const Snapshot& s, const FieldSpec& field) {
    std::optional<PlayerId> best;
    double best_dist = 0.0;
    // players[] is already in (Left, unum) order, so a strict < keeps the
    // tie-break winner.
    for (const auto& p : s.players) {
        const double d = dist(p.pos, s.ball_pos);
        if (d > field.kickable_dist) continue;
        if (!best || d < best_dist) {
            best = PlayerId{p.side, p.unum};
            best_dist = d;
        }
    }
    return best;
}

namespace {

bool is_live(const PlayMode& mode, const LabelerConfig& cfg) {
    return mode.is_play_on() || (cfg.include_set_plays && mode.is_set_play());
}

}  // namespace

std::vector<PassEvent> extract_pass_events(const ParsedLog& log, const FieldSpec& field,
                                           const LabelerConfig& cfg) {
    if (cfg.window < 1) throw std::invalid_argument("labeler window must be >= 1");
    const auto& snaps = log.snapshots;
    const std::size_t n = snaps.size();

    std::vector<std::optional<PlayerId>> holder(n);
    std::vector<bool> live(n);
    for (std::size_t i = 0; i < n; ++i) {
        live[i] = is_live(snaps[i].playmode, cfg);
        if (live[i]) holder[i] = possession(snaps[i], field);
    }

    std::vector<PassEvent> events;
    for (std::size_t i = 0; i < n; ++i) {
        if (!holder[i]) continue;
        const PlayerId kicker = *holder[i];
        // Missing cycles in the log do not split a segment.
        const bool continues = i + 1 < n && live[i + 1] && holder[i + 1] == holder[i];
        if (continues) continue;

        const int kick_cycle = snaps[i].cycle;
        for (std::size_t j = i + 1; j < n && snaps[j].cycle <= kick_cycle + cfg.window; ++j) {
            if (!live[j]) break;
            if (!holder[j]) continue;
            if (holder[j]->side == kicker.side) {
                PassEvent e;
                e.kick_cycle = kick_cycle;
                e.kicker = kicker;
                e.receiver_unum = holder[j]->unum;
                e.receive_cycle = snaps[j].cycle;
                e.state = kicker.side == Side::Left ? snaps[i] : mirror(snaps[i]);
                events.push_back(std::move(e));
            }
            break;
        }
    }
    return events;
}

std::array<double, kTeamSize> label_onehot(const PassEvent& e) {
    std::array<double, kTeamSize> out{};
    out.at(static_cast<std::size_t>(e.receiver_unum - 1)) = 1.0;
    return out;
}

}  // namespace passcast
