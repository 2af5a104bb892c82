#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "passcast/features.hpp"

namespace passcast {

/// Row-major feature matrix with 1-based receiver labels (unum 1..11).
struct Dataset {
    std::size_t dims = 0;
    std::optional<FeatureLevel> level;
    std::vector<double> features;
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
    bool empty() const { return labels.empty(); }
    std::span<const double> row(std::size_t i) const { return {features.data() + i * dims, dims}; }

    void add(std::span<const double> x, int label);
    /// Throws DimensionMismatch if the feature storage is not size() x dims.
    void validate() const;
};

/// CSV layout:
///   # level,<low|mid|high>
///   # scales,x=52.5,y=34,velocity=3,distance=130,angle=180,clip=1.5
///   # layout,<block>:<dims>,...
///   f0,...,f{D-1},label
///   one row per sample, values in shortest round-trip decimal
void write_dataset_csv(std::ostream& out, const Dataset& data, const FeatureScales& scales = {});
void save_dataset(const std::filesystem::path& path, const Dataset& data, const FeatureScales& scales = {});

/// Throws DatasetFormatError on malformed input (bad header, wrong field
/// count, label outside 1..11, level/width disagreement).
Dataset read_dataset_csv(std::istream& in);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace passcast
