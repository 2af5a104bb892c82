#include "passcast/metrics.hpp"

#include <fmt/format.h>

#include <numeric>
#include <vector>

#include "passcast/batch.hpp"
#include "passcast/error.hpp"

namespace passcast {

MetricsReport evaluate(const Model& m, const Dataset& data, std::span<const std::size_t> rows) {
    if (m.output_dims() != static_cast<std::size_t>(kTeamSize)) throw DimensionMismatch("metrics need an 11-way model");
    MetricsReport r;
    std::vector<double> probs(rows.size() * kTeamSize);
    parallel::forward_rows(m, data, rows, probs);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::span<const double> p(probs.data() + i * kTeamSize, kTeamSize);
        const int label = data.labels[rows[i]];
        const auto best = top_k(p, 2);
        ++r.samples;
        ++r.confusion[label - 1][best[0].unum - 1];
        if (best[0].unum == label) ++r.top1_hits;
        if (best[0].unum == label || best[1].unum == label) ++r.top2_hits;
    }
    return r;
}

MetricsReport evaluate(const Model& m, const Dataset& data) {
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), 0);
    return evaluate(m, data, rows);
}

std::string format_report(const MetricsReport& r) {
    std::string out = fmt::format("samples {}\ntop1 {:.6f}\ntop2 {:.6f}\n", r.samples, r.top1(), r.top2());
    out += "confusion (rows: true receiver, columns: top-1 prediction)\n    ";
    for (int u = 1; u <= kTeamSize; ++u) out += fmt::format("{:>6}", u);
    out += '\n';
    for (int t = 1; t <= kTeamSize; ++t) {
        out += fmt::format("{:>4}", t);
        for (int u = 1; u <= kTeamSize; ++u) out += fmt::format("{:>6}", r.confusion[t - 1][u - 1]);
        out += '\n';
    }
    return out;
}

}  // namespace passcast
