#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace passcast::testing {

double reference_loss(const Model& m, std::span<const double> x, std::size_t target) {
    std::vector<double> a(x.begin(), x.end());
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const DenseLayer& layer = m.layers[l];
        std::vector<double> z(layer.outputs);
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            double sum = layer.biases[r];
            for (std::size_t c = 0; c < layer.inputs; ++c) sum += layer.weights[r * layer.inputs + c] * a[c];
            z[r] = sum;
        }
        if (l + 1 < m.layers.size()) {
            for (double& v : z) v = std::tanh(v);
        }
        a = std::move(z);
    }
    // log-sum-exp form of -log softmax(a)[target]
    const double top = *std::max_element(a.begin(), a.end());
    double total = 0.0;
    for (double v : a) total += std::exp(v - top);
    return -(a[target] - top - std::log(total));
}

GradientCheck check_gradients(const Model& m, std::span<const double> x, std::size_t target,
                              const Gradients& analytic, double h, double floor) {
    GradientCheck out;
    Model probe = m;
    auto compare = [&](double& param, double a) {
        const double saved = param;
        param = saved + h;
        const double up = reference_loss(probe, x, target);
        param = saved - h;
        const double down = reference_loss(probe, x, target);
        param = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
        out.max_relative_error = std::max(out.max_relative_error, rel);
        ++out.entries;
    };
    for (std::size_t l = 0; l < probe.layers.size(); ++l) {
        for (std::size_t k = 0; k < probe.layers[l].weights.size(); ++k) {
            compare(probe.layers[l].weights[k], analytic[l].weights[k]);
        }
        for (std::size_t k = 0; k < probe.layers[l].biases.size(); ++k) {
            compare(probe.layers[l].biases[k], analytic[l].biases[k]);
        }
    }
    return out;
}

AssignmentPlan brute_force_assign(std::span<const ThreatScore> threats, std::span<const int> teammates,
                                  const PairTable& pairs, double threat_floor) {
    std::vector<ThreatScore> opp(threats.begin(), threats.end());
    std::vector<int> mates;
    for (int t : teammates) {
        if (std::find(mates.begin(), mates.end(), t) == mates.end()) mates.push_back(t);
    }
    AssignmentPlan plan;
    while (!opp.empty() && !mates.empty()) {
        // Best pair by (threat desc, opponent asc, pair desc, teammate asc).
        std::size_t bo = 0, bt = 0;
        bool found = false;
        for (std::size_t o = 0; o < opp.size(); ++o) {
            for (std::size_t t = 0; t < mates.size(); ++t) {
                if (!found) {
                    bo = o;
                    bt = t;
                    found = true;
                    continue;
                }
                const auto& ps = pairs[mates[t] - 1][opp[o].unum - 1];
                const auto& pb = pairs[mates[bt] - 1][opp[bo].unum - 1];
                const double s = std::max(ps.mark, ps.block);
                const double sb = std::max(pb.mark, pb.block);
                bool better;
                if (opp[o].final != opp[bo].final) better = opp[o].final > opp[bo].final;
                else if (opp[o].unum != opp[bo].unum) better = opp[o].unum < opp[bo].unum;
                else if (s != sb) better = s > sb;
                else better = mates[t] < mates[bt];
                if (better) {
                    bo = o;
                    bt = t;
                }
            }
        }
        if (opp[bo].final <= threat_floor) break;
        const auto& ps = pairs[mates[bt] - 1][opp[bo].unum - 1];
        const bool mark = ps.mark >= ps.block;
        plan.entries.push_back({mates[bt], opp[bo].unum, mark ? Task::Mark : Task::Block, mark ? ps.mark : ps.block,
                                opp[bo].final});
        opp.erase(opp.begin() + static_cast<std::ptrdiff_t>(bo));
        mates.erase(mates.begin() + static_cast<std::ptrdiff_t>(bt));
    }
    for (int t : mates) plan.unassigned_teammates.push_back(t);
    for (const auto& o : opp) plan.unassigned_opponents.push_back(o.unum);
    std::sort(plan.unassigned_teammates.begin(), plan.unassigned_teammates.end());
    std::sort(plan.unassigned_opponents.begin(), plan.unassigned_opponents.end());
    return plan;
}

}  // namespace passcast::testing
