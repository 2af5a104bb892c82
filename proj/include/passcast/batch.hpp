#pragma once

// Data-parallel kernels. Each kernel exists twice: `serial` is the reference
// implementation and `parallel` splits the same per-item work across OpenMP
// threads. Items are independent, so both produce bit-identical output.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "passcast/dataset.hpp"
#include "passcast/features.hpp"
#include "passcast/labeler.hpp"
#include "passcast/mlp.hpp"
#include "passcast/rcg.hpp"

namespace passcast {

struct LogFileResult {
    ParsedLog log;
    /// Empty on success; otherwise why the file could not be read or parsed.
    std::string error;
    bool unreadable = false;
};

namespace serial {

/// Row i of `out` (row-major, feature_dims(level) wide) holds snapshot i.
void extract_batch(std::span<const Snapshot> snapshots, FeatureLevel level, const FieldSpec& field,
                   std::span<double> out, const FeatureScales& scales = {});

/// Softmax outputs for `rows` of `data`, row-major into `probs`.
void forward_rows(const Model& m, const Dataset& data, std::span<const std::size_t> rows, std::span<double> probs);
void forward_all(const Model& m, const Dataset& data, std::span<double> probs);

std::vector<LogFileResult> parse_files(std::span<const std::filesystem::path> paths, bool lenient);

}  // namespace serial

namespace parallel {

void extract_batch(std::span<const Snapshot> snapshots, FeatureLevel level, const FieldSpec& field,
                   std::span<double> out, const FeatureScales& scales = {});
void forward_rows(const Model& m, const Dataset& data, std::span<const std::size_t> rows, std::span<double> probs);
void forward_all(const Model& m, const Dataset& data, std::span<double> probs);
std::vector<LogFileResult> parse_files(std::span<const std::filesystem::path> paths, bool lenient);

}  // namespace parallel

}  // namespace passcast
