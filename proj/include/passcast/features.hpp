#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "passcast/world.hpp"

namespace passcast {

enum class FeatureLevel { Low, Mid, High };

inline constexpr std::size_t kLowDims = 92;
inline constexpr std::size_t kMidDims = 352;
inline constexpr std::size_t kHighDims = 385;

constexpr std::size_t feature_dims(FeatureLevel level) {
    switch (level) {
        case FeatureLevel::Low: return kLowDims;
        case FeatureLevel::Mid: return kMidDims;
        case FeatureLevel::High: return kHighDims;
    }
    return 0;
}

std::string_view level_name(FeatureLevel level);
std::optional<FeatureLevel> parse_level(std::string_view name);
std::optional<FeatureLevel> level_for_dims(std::size_t dims);

/// Divisors applied to raw quantities before they enter a feature vector.
struct FeatureScales {
    double x = 52.5;
    double y = 34.0;
    double velocity = 3.0;
    double distance = 130.0;
    double angle = 180.0;
    /// Normalized values are clipped into [-clip, clip].
    double clip = 1.5;
};

struct FeatureVector {
    FeatureLevel level = FeatureLevel::Low;
    std::vector<double> values;
};

struct FeatureBlock {
    std::string name;
    std::size_t dims;
};

/// Ordered blocks making up a level's vector (their dims sum to feature_dims).
std::vector<FeatureBlock> feature_layout(FeatureLevel level);

/// Writes the level's features for a canonical snapshot (kicker team on the
/// Left attacking +x) into `out`, whose size must equal feature_dims(level).
void extract_into(const Snapshot& s, FeatureLevel level, const FieldSpec& field, std::span<double> out,
                  const FeatureScales& scales = {});

FeatureVector extract(const Snapshot& s, FeatureLevel level, const FieldSpec& field,
                      const FeatureScales& scales = {});

/// Smallest angular gap between the ball->teammate direction and any
/// opponent not farther from the ball than the teammate; 180 when none
/// qualifies. An opponent on the ball counts as a full block (0). A teammate
/// on the ball has nothing to pass through, so the result is 180.
double free_angle(Vec2 ball, Vec2 teammate, std::span<const Vec2> opponents);

/// Throws EmptyGroup for an empty group.
double min_dist_to_group(Vec2 p, std::span<const Vec2> group);

}  // namespace passcast
