#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "passcast/dataset.hpp"
#include "passcast/mlp.hpp"
#include "passcast/world.hpp"

namespace passcast {

/// Top-k accuracy and confusion counts for an 11-way receiver model.
/// confusion[true unum - 1][top-1 unum - 1].
struct MetricsReport {
    std::size_t samples = 0;
    std::size_t top1_hits = 0;
    std::size_t top2_hits = 0;
    std::array<std::array<std::size_t, kTeamSize>, kTeamSize> confusion{};

    double top1() const { return samples ? static_cast<double>(top1_hits) / static_cast<double>(samples) : 0.0; }
    double top2() const { return samples ? static_cast<double>(top2_hits) / static_cast<double>(samples) : 0.0; }
};

/// Throws DimensionMismatch if the model does not fit the dataset.
MetricsReport evaluate(const Model& m, const Dataset& data, std::span<const std::size_t> rows);
MetricsReport evaluate(const Model& m, const Dataset& data);

std::string format_report(const MetricsReport& r);

}  // namespace passcast
