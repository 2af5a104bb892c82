#include "passcast/batch.hpp"

#include <numeric>

#include "passcast/error.hpp"

namespace passcast {

namespace {

void check_extract_buffer(std::size_t n, FeatureLevel level, std::span<double> out) {
    if (out.size() != n * feature_dims(level)) throw DimensionMismatch("feature batch buffer has the wrong size");
}

void check_forward_buffer(const Model& m, const Dataset& data, std::size_t n, std::span<double> probs) {
    if (data.dims != m.input_dims()) {
        throw DimensionMismatch("model expects " + std::to_string(m.input_dims()) + " inputs, dataset has " +
                                std::to_string(data.dims));
    }
    if (probs.size() != n * m.output_dims()) throw DimensionMismatch("probability batch buffer has the wrong size");
}

LogFileResult parse_one(const std::filesystem::path& path, bool lenient) {
    LogFileResult r;
    std::string bytes;
    try {
        bytes = read_log_bytes(path);
    } catch (const std::exception& e) {
        r.error = e.what();
        r.unreadable = true;
        return r;
    }
    try {
        r.log = parse_log_text(bytes, lenient);
    } catch (const std::exception& e) {
        r.error = path.string() + ": " + e.what();
    }
    return r;
}

std::vector<std::size_t> all_rows(const Dataset& data) {
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

}  // namespace

namespace serial {

void extract_batch(std::span<const Snapshot> snapshots, FeatureLevel level, const FieldSpec& field,
                   std::span<double> out, const FeatureScales& scales) {
    check_extract_buffer(snapshots.size(), level, out);
    const std::size_t dims = feature_dims(level);
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        extract_into(snapshots[i], level, field, out.subspan(i * dims, dims), scales);
    }
}

void forward_rows(const Model& m, const Dataset& data, std::span<const std::size_t> rows, std::span<double> probs) {
    check_forward_buffer(m, data, rows.size(), probs);
    const std::size_t classes = m.output_dims();
    Workspace ws;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        forward_into(m, data.row(rows[i]), probs.subspan(i * classes, classes), ws);
    }
}

void forward_all(const Model& m, const Dataset& data, std::span<double> probs) {
    const auto rows = all_rows(data);
    forward_rows(m, data, rows, probs);
}

std::vector<LogFileResult> parse_files(std::span<const std::filesystem::path> paths, bool lenient) {
    std::vector<LogFileResult> out(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) out[i] = parse_one(paths[i], lenient);
    return out;
}

}  // namespace serial

namespace parallel {

void extract_batch(std::span<const Snapshot> snapshots, FeatureLevel level, const FieldSpec& field,
                   std::span<double> out, const FeatureScales& scales) {
    check_extract_buffer(snapshots.size(), level, out);
    const std::size_t dims = feature_dims(level);
    const auto n = static_cast<std::ptrdiff_t>(snapshots.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        extract_into(snapshots[k], level, field, out.subspan(k * dims, dims), scales);
    }
}

void forward_rows(const Model& m, const Dataset& data, std::span<const std::size_t> rows, std::span<double> probs) {
    check_forward_buffer(m, data, rows.size(), probs);
    const std::size_t classes = m.output_dims();
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel
    {
        Workspace ws;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            forward_into(m, data.row(rows[k]), probs.subspan(k * classes, classes), ws);
        }
    }
}

void forward_all(const Model& m, const Dataset& data, std::span<double> probs) {
    const auto rows = all_rows(data);
    forward_rows(m, data, rows, probs);
}

std::vector<LogFileResult> parse_files(std::span<const std::filesystem::path> paths, bool lenient) {
    std::vector<LogFileResult> out(paths.size());
    const auto n = static_cast<std::ptrdiff_t>(paths.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = parse_one(paths[static_cast<std::size_t>(i)], lenient);
    }
    return out;
}

}  // namespace parallel

}  // namespace passcast
