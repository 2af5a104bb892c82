#include "passcast/defense.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "passcast/error.hpp"
#include "passcast/labeler.hpp"

namespace passcast {

std::string_view task_name(Task t) { return t == Task::Mark ? "mark" : "block"; }

ThreatScore opponent_score(const Snapshot& s, int unum, double p, const DefenseConfig& cfg) {
    if (unum < 1 || unum > kTeamSize) throw UnknownPlayer("no opponent with unum " + std::to_string(unum));
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pass probability must lie in [0, 1]");
    const Vec2 pos = s.player(Side::Left, unum).pos;
    double proximity = cfg.proximity_radius - dist(pos, cfg.defended_goal);
    if (cfg.clamp_proximity) proximity = std::max(0.0, proximity);
    ThreatScore t;
    t.unum = unum;
    t.base = pos.x + proximity;
    t.final = t.base * (1.0 + p);
    return t;
}

Vec2 block_point(Vec2 opponent, const DefenseConfig& cfg) {
    const Vec2 to_goal = cfg.defended_goal - opponent;
    const double len = to_goal.length();
    if (len == 0.0) return opponent;
    const double step = std::min(cfg.block_dist, len);
    return opponent + to_goal * (step / len);
}

double pair_score(const PlayerState& teammate, const PlayerState& opponent, Task task, const DefenseConfig& cfg) {
    if (task == Task::Mark) return -dist(teammate.pos, opponent.pos);
    return -dist(teammate.pos, block_point(opponent.pos, cfg));
}

PairTable pair_table(const Snapshot& s, const DefenseConfig& cfg) {
    PairTable table{};
    for (int t = 1; t <= kTeamSize; ++t) {
        for (int o = 1; o <= kTeamSize; ++o) {
            const auto& mate = s.player(Side::Right, t);
            const auto& opp = s.player(Side::Left, o);
            table[t - 1][o - 1] = {pair_score(mate, opp, Task::Mark, cfg), pair_score(mate, opp, Task::Block, cfg)};
        }
    }
    return table;
}

AssignmentPlan greedy_assign(std::span<const ThreatScore> threats, std::span<const int> teammates,
                             const PairTable& pairs, double threat_floor) {
    std::vector<ThreatScore> opponents(threats.begin(), threats.end());
    std::sort(opponents.begin(), opponents.end(), [](const ThreatScore& a, const ThreatScore& b) {
        return a.final != b.final ? a.final > b.final : a.unum < b.unum;
    });
    std::vector<int> pool(teammates.begin(), teammates.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (int u : pool) {
        if (u < 1 || u > kTeamSize) throw UnknownPlayer("no teammate with unum " + std::to_string(u));
    }
    for (const auto& t : opponents) {
        if (t.unum < 1 || t.unum > kTeamSize) throw UnknownPlayer("no opponent with unum " + std::to_string(t.unum));
    }

    AssignmentPlan plan;
    std::size_t next = 0;
    // Opponents are pre-sorted, so "highest remaining threat" is the next one.
    for (; next < opponents.size() && !pool.empty(); ++next) {
        const ThreatScore& threat = opponents[next];
        if (threat.final <= threat_floor) break;
        auto best = pool.end();
        double best_score = 0.0;
        Task best_task = Task::Mark;
        for (auto it = pool.begin(); it != pool.end(); ++it) {
            const PairScores& ps = pairs[*it - 1][threat.unum - 1];
            const Task task = ps.mark >= ps.block ? Task::Mark : Task::Block;
            const double score = std::max(ps.mark, ps.block);
            // pool is sorted ascending, so strict > keeps the lower unum on ties.
            if (best == pool.end() || score > best_score) {
                best = it;
                best_score = score;
                best_task = task;
            }
        }
        plan.entries.push_back({*best, threat.unum, best_task, best_score, threat.final});
        pool.erase(best);
    }
    plan.unassigned_teammates = pool;
    for (; next < opponents.size(); ++next) plan.unassigned_opponents.push_back(opponents[next].unum);
    std::sort(plan.unassigned_opponents.begin(), plan.unassigned_opponents.end());
    return plan;
}

std::array<ThreatScore, kTeamSize> score_all(const Snapshot& defensive_frame, const Model& model,
                                             const FieldSpec& field, const DefenseConfig& cfg) {
    if (model.input_dims() != kHighDims) {
        throw DimensionMismatch("defense needs a high-level (385-input) model, got " +
                                std::to_string(model.input_dims()) + " inputs");
    }
    if (model.output_dims() != static_cast<std::size_t>(kTeamSize)) {
        throw DimensionMismatch("defense needs an 11-way model");
    }
    const FeatureVector fv = extract(defensive_frame, FeatureLevel::High, field);
    const std::vector<double> probs = forward(model, fv.values);
    std::array<ThreatScore, kTeamSize> out{};
    for (int u = 1; u <= kTeamSize; ++u) {
        // Rounding can push a softmax entry a hair past 1.
        out[u - 1] = opponent_score(defensive_frame, u, std::min(probs[u - 1], 1.0), cfg);
    }
    return out;
}

Snapshot to_defensive_frame(const Snapshot& s, Side attacking) {
    return attacking == Side::Left ? s : mirror(s);
}

Side infer_attacking_side(const Snapshot& s, const FieldSpec& field) {
    if (const auto holder = possession(s, field)) return holder->side;
    const PlayerState* nearest = &s.players[0];
    for (const auto& p : s.players) {
        if (dist(p.pos, s.ball_pos) < dist(nearest->pos, s.ball_pos)) nearest = &p;
    }
    return nearest->side;
}

DefensePlan plan_defense(const Snapshot& defensive_frame, const Model& model, const FieldSpec& field,
                         std::span<const int> defenders, const DefenseConfig& cfg) {
    DefensePlan out;
    out.threats = score_all(defensive_frame, model, field, cfg);
    out.plan = greedy_assign(out.threats, defenders, pair_table(defensive_frame, cfg), cfg.threat_floor);
    return out;
}

std::vector<int> default_defenders() { return {2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; }

}  // namespace passcast
