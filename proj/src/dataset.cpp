#include "passcast/dataset.hpp"

#include <fstream>
#include <string>

#include "passcast/error.hpp"
#include "passcast/text.hpp"

namespace passcast {

void Dataset::add(std::span<const double> x, int label) {
    if (x.size() != dims) {
        throw DimensionMismatch("row has " + std::to_string(x.size()) + " features, dataset has " +
                                std::to_string(dims));
    }
    features.insert(features.end(), x.begin(), x.end());
    labels.push_back(label);
}

void Dataset::validate() const {
    if (features.size() != labels.size() * dims) {
        throw DimensionMismatch("dataset storage holds " + std::to_string(features.size()) + " values for " +
                                std::to_string(labels.size()) + " rows of " + std::to_string(dims));
    }
}

void write_dataset_csv(std::ostream& out, const Dataset& data, const FeatureScales& scales) {
    data.validate();
    const FeatureLevel level = data.level.value_or(level_for_dims(data.dims).value_or(FeatureLevel::Low));
    out << "# level," << level_name(level) << '\n';
    out << "# scales,x=" << format_double(scales.x) << ",y=" << format_double(scales.y)
        << ",velocity=" << format_double(scales.velocity) << ",distance=" << format_double(scales.distance)
        << ",angle=" << format_double(scales.angle) << ",clip=" << format_double(scales.clip) << '\n';
    out << "# layout";
    for (const auto& block : feature_layout(level)) out << ',' << block.name << ':' << block.dims;
    out << '\n';
    for (std::size_t i = 0; i < data.dims; ++i) out << 'f' << i << ',';
    out << "label\n";
    std::string line;
    for (std::size_t r = 0; r < data.size(); ++r) {
        line.clear();
        for (double v : data.row(r)) {
            line += format_double(v);
            line += ',';
        }
        line += std::to_string(data.labels[r]);
        line += '\n';
        out << line;
    }
}

void save_dataset(const std::filesystem::path& path, const Dataset& data, const FeatureScales& scales) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_dataset_csv(out, data, scales);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Dataset read_dataset_csv(std::istream& in) {
    Dataset data;
    std::string line;
    std::size_t line_no = 0;
    bool have_columns = false;
    auto fail = [&](const std::string& what) {
        throw DatasetFormatError("dataset line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view body = std::string_view(line).substr(1);
            while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            if (body.starts_with("level,")) {
                const auto level = parse_level(body.substr(6));
                if (!level) fail("unknown level '" + std::string(body.substr(6)) + "'");
                data.level = level;
            }
            continue;
        }
        const auto fields = split(line, ',');
        if (!have_columns) {
            if (fields.size() < 2 || fields.back() != "label") fail("expected column header ending in 'label'");
            data.dims = fields.size() - 1;
            if (data.level && feature_dims(*data.level) != data.dims) {
                fail("level " + std::string(level_name(*data.level)) + " needs " +
                     std::to_string(feature_dims(*data.level)) + " columns, header has " + std::to_string(data.dims));
            }
            have_columns = true;
            continue;
        }
        if (fields.size() != data.dims + 1) {
            fail("expected " + std::to_string(data.dims + 1) + " fields, found " + std::to_string(fields.size()));
        }
        for (std::size_t i = 0; i < data.dims; ++i) {
            const auto v = parse_double(fields[i]);
            if (!v) fail("bad value '" + std::string(fields[i]) + "'");
            data.features.push_back(*v);
        }
        const auto label = parse_int(fields.back());
        if (!label || *label < 1 || *label > 11) fail("label must be an integer in 1..11");
        data.labels.push_back(static_cast<int>(*label));
    }
    if (!have_columns) throw DatasetFormatError("dataset has no column header");
    return data;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_dataset_csv(in);
}

}  // namespace passcast
