#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "passcast/features.hpp"
#include "passcast/mlp.hpp"
#include "passcast/world.hpp"

namespace passcast {

// All defense routines work in the defensive frame: the attacking team is
// the Left side attacking +x, and the defended goal center is (+52.5, 0).
// This is the same frame the labeler produces for the attacking kicker.

struct DefenseConfig {
    Vec2 defended_goal{52.5, 0.0};
    /// Goal-proximity bonus is max(0, radius - dist) (or unclamped).
    double proximity_radius = 40.0;
    bool clamp_proximity = true;
    /// Block point distance from the opponent toward the defended goal.
    double block_dist = 2.5;
    /// Assignment stops once the best remaining threat is <= this.
    double threat_floor = 0.0;
};

struct ThreatScore {
    int unum = 0;
    double base = 0.0;
    double final = 0.0;

    bool operator==(const ThreatScore&) const = default;
};

enum class Task { Mark, Block };

std::string_view task_name(Task t);

struct Assignment {
    int teammate = 0;
    int opponent = 0;
    Task task = Task::Mark;
    double pair_score = 0.0;
    double threat = 0.0;

    bool operator==(const Assignment&) const = default;
};

struct AssignmentPlan {
    std::vector<Assignment> entries;
    std::vector<int> unassigned_teammates;
    std::vector<int> unassigned_opponents;

    bool operator==(const AssignmentPlan&) const = default;
};

/// base = x + max(0, radius - dist(pos, goal)); final = base * (1 + p).
/// Opponents are the Left players of the defensive frame. Throws
/// UnknownPlayer for unum outside 1..11 and std::invalid_argument for p
/// outside [0, 1].
ThreatScore opponent_score(const Snapshot& s, int unum, double p, const DefenseConfig& cfg = {});

/// Mark: -dist(teammate, opponent). Block: -dist(teammate, block point),
/// the block point lying min(block_dist, |goal - opponent|) from the
/// opponent toward the defended goal.
double pair_score(const PlayerState& teammate, const PlayerState& opponent, Task task, const DefenseConfig& cfg = {});
Vec2 block_point(Vec2 opponent, const DefenseConfig& cfg = {});

struct PairScores {
    double mark = 0.0;
    double block = 0.0;
};

/// pair scores indexed [teammate unum - 1][opponent unum - 1].
using PairTable = std::array<std::array<PairScores, kTeamSize>, kTeamSize>;

PairTable pair_table(const Snapshot& s, const DefenseConfig& cfg = {});

/// Repeatedly pairs the highest remaining threat (ties: lower unum) with the
/// remaining teammate whose better task score is highest (ties: lower unum;
/// Mark wins a task tie), removing both, until a pool empties or the best
/// remaining threat is <= threat_floor.
AssignmentPlan greedy_assign(std::span<const ThreatScore> threats, std::span<const int> teammates,
                             const PairTable& pairs, double threat_floor = 0.0);

/// Threats for all 11 attackers, using the model's probability for each
/// attacker as the pass-target term. Throws DimensionMismatch unless the
/// model takes the high-level 385-dim input.
std::array<ThreatScore, kTeamSize> score_all(const Snapshot& defensive_frame, const Model& model,
                                             const FieldSpec& field, const DefenseConfig& cfg = {});

/// Rotates a server-frame snapshot into the defensive frame for the given
/// attacking side.
Snapshot to_defensive_frame(const Snapshot& s, Side attacking);

/// Attacking side guess: the possessor's side, else the side of the player
/// nearest to the ball (Left on a tie).
Side infer_attacking_side(const Snapshot& s, const FieldSpec& field);

struct DefensePlan {
    std::array<ThreatScore, kTeamSize> threats{};
    AssignmentPlan plan;
};

/// Full pipeline on a defensive-frame snapshot. `defenders` are unums of
/// the defending (Right) side.
DefensePlan plan_defense(const Snapshot& defensive_frame, const Model& model, const FieldSpec& field,
                         std::span<const int> defenders, const DefenseConfig& cfg = {});

/// Outfield players 2..11.
std::vector<int> default_defenders();

}  // namespace passcast
