#include "passcast/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "passcast/batch.hpp"
#include "passcast/error.hpp"
#include "passcast/rng.hpp"
#include "passcast/text.hpp"

namespace passcast {

Model init_model(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) throw InvalidArchitecture("a model needs an input and an output layer");
    for (std::size_t s : layer_sizes) {
        if (s == 0) throw InvalidArchitecture("layer size 0");
    }
    Model m;
    m.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
    m.seed = seed;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        DenseLayer layer;
        layer.inputs = layer_sizes[l];
        layer.outputs = layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
        layer.weights.resize(layer.inputs * layer.outputs);
        for (double& w : layer.weights) w = rng.uniform(-limit, limit);
        layer.biases.assign(layer.outputs, 0.0);
        m.layers.push_back(std::move(layer));
    }
    return m;
}

namespace {

void check_input(const Model& m, std::span<const double> x) {
    if (x.size() != m.input_dims()) {
        throw DimensionMismatch("model expects " + std::to_string(m.input_dims()) + " inputs, got " +
                                std::to_string(x.size()));
    }
}

void softmax_inplace(std::vector<double>& z) {
    const double top = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - top);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

/// Fills ws.activations[0..L]; activations[L] holds the softmax output.
void run_forward(const Model& m, std::span<const double> x, Workspace& ws) {
    check_input(m, x);
    const std::size_t depth = m.layers.size();
    ws.activations.resize(depth + 1);
    ws.activations[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < depth; ++l) {
        const DenseLayer& layer = m.layers[l];
        const std::vector<double>& in = ws.activations[l];
        std::vector<double>& out = ws.activations[l + 1];
        out.resize(layer.outputs);
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            const double* row = layer.weights.data() + r * layer.inputs;
            double z = layer.biases[r];
            for (std::size_t c = 0; c < layer.inputs; ++c) z += row[c] * in[c];
            out[r] = z;
        }
        if (l + 1 < depth) {
            for (double& v : out) v = std::tanh(v);
        } else {
            softmax_inplace(out);
        }
    }
}

}  // namespace

void forward_into(const Model& m, std::span<const double> x, std::span<double> probs, Workspace& ws) {
    run_forward(m, x, ws);
    const auto& out = ws.activations.back();
    if (probs.size() != out.size()) throw DimensionMismatch("probability buffer has the wrong size");
    std::copy(out.begin(), out.end(), probs.begin());
}

std::vector<double> forward(const Model& m, std::span<const double> x) {
    Workspace ws;
    run_forward(m, x, ws);
    return ws.activations.back();
}

double cross_entropy(std::span<const double> probs, std::size_t target) {
    return -std::log(std::max(probs[target], kProbabilityFloor));
}

Gradients zero_gradients(const Model& m) {
    Gradients g = m.layers;
    for (auto& layer : g) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
        std::fill(layer.biases.begin(), layer.biases.end(), 0.0);
    }
    return g;
}

double accumulate_gradients(const Model& m, std::span<const double> x, std::size_t target, Gradients& acc,
                            Workspace& ws) {
    if (target >= m.output_dims()) throw DimensionMismatch("target class out of range");
    run_forward(m, x, ws);
    const std::size_t depth = m.layers.size();
    const double loss = cross_entropy(ws.activations[depth], target);

    ws.deltas.resize(depth);
    // Softmax + cross-entropy: d loss / d logits = probs - onehot.
    ws.deltas[depth - 1] = ws.activations[depth];
    ws.deltas[depth - 1][target] -= 1.0;

    for (std::size_t l = depth; l-- > 0;) {
        const DenseLayer& layer = m.layers[l];
        const std::vector<double>& delta = ws.deltas[l];
        const std::vector<double>& in = ws.activations[l];
        DenseLayer& g = acc[l];
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            const double d = delta[r];
            g.biases[r] += d;
            double* grow = g.weights.data() + r * layer.inputs;
            for (std::size_t c = 0; c < layer.inputs; ++c) grow[c] += d * in[c];
        }
        if (l == 0) break;
        std::vector<double>& prev = ws.deltas[l - 1];
        prev.assign(layer.inputs, 0.0);
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            const double d = delta[r];
            const double* row = layer.weights.data() + r * layer.inputs;
            for (std::size_t c = 0; c < layer.inputs; ++c) prev[c] += row[c] * d;
        }
        // tanh'(z) = 1 - tanh(z)^2, and activations[l] holds tanh(z).
        for (std::size_t c = 0; c < layer.inputs; ++c) prev[c] *= 1.0 - in[c] * in[c];
    }
    return loss;
}

Gradients backward(const Model& m, std::span<const double> x, std::size_t target) {
    Gradients g = zero_gradients(m);
    Workspace ws;
    accumulate_gradients(m, x, target, g, ws);
    return g;
}

std::vector<Prediction> top_k(std::span<const double> probs, std::size_t k) {
    if (k < 1 || k > probs.size()) throw std::invalid_argument("k must lie in 1..number of classes");
    std::vector<std::size_t> order(probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
    std::vector<Prediction> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({static_cast<int>(order[i]) + 1, probs[order[i]]});
    return out;
}

std::vector<Prediction> predict_topk(const Model& m, std::span<const double> x, std::size_t k) {
    const auto probs = forward(m, x);
    return top_k(probs, k);
}

namespace {

struct SplitMetrics {
    double loss = std::numeric_limits<double>::quiet_NaN();
    double top1 = std::numeric_limits<double>::quiet_NaN();
    double top2 = std::numeric_limits<double>::quiet_NaN();
};

SplitMetrics measure(const Model& m, const Dataset& data, std::span<const std::size_t> rows) {
    SplitMetrics out;
    if (rows.empty()) return out;
    const std::size_t classes = m.output_dims();
    std::vector<double> probs(rows.size() * classes);
    parallel::forward_rows(m, data, rows, probs);
    double loss = 0.0;
    std::size_t hit1 = 0;
    std::size_t hit2 = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::span<const double> p(probs.data() + i * classes, classes);
        const int label = data.labels[rows[i]];
        loss += cross_entropy(p, static_cast<std::size_t>(label - 1));
        const auto best = top_k(p, std::min<std::size_t>(2, classes));
        if (best[0].unum == label) ++hit1;
        for (const auto& b : best) {
            if (b.unum == label) ++hit2;
        }
    }
    const double n = static_cast<double>(rows.size());
    out.loss = loss / n;
    out.top1 = static_cast<double>(hit1) / n;
    out.top2 = static_cast<double>(hit2) / n;
    return out;
}

}  // namespace

TrainResult train(const Dataset& data, std::span<const std::size_t> layer_sizes, const TrainConfig& cfg) {
    if (data.empty()) throw EmptyDataset();
    data.validate();
    if (layer_sizes.empty() || layer_sizes.front() != data.dims) {
        throw DimensionMismatch("dataset has " + std::to_string(data.dims) + " features, model input is " +
                                (layer_sizes.empty() ? std::string("undefined") : std::to_string(layer_sizes.front())));
    }
    if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate)) {
        throw std::invalid_argument("learning rate must be a finite non-negative number");
    }
    if (cfg.batch_size == 0) throw std::invalid_argument("batch size must be positive");
    if (!(cfg.validation_fraction >= 0.0 && cfg.validation_fraction < 1.0)) {
        throw std::invalid_argument("validation fraction must lie in [0, 1)");
    }

    TrainResult result;
    result.model = init_model(layer_sizes, cfg.seed);
    Model& m = result.model;
    for (int label : data.labels) {
        if (label < 1 || static_cast<std::size_t>(label) > m.output_dims()) {
            throw DimensionMismatch("label " + std::to_string(label) + " exceeds the output layer");
        }
    }

    // Separate stream from weight init so changing the split never moves weights.
    Rng rng(cfg.seed ^ 0xa5a5'5a5a'0f0f'f0f0ULL);
    const std::size_t n = data.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<std::size_t>(order));
    std::size_t n_val = static_cast<std::size_t>(std::floor(cfg.validation_fraction * static_cast<double>(n)));
    n_val = std::min(n_val, n - 1);
    result.validation_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
    result.train_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
    std::sort(result.validation_rows.begin(), result.validation_rows.end());
    std::sort(result.train_rows.begin(), result.train_rows.end());

    std::vector<std::size_t> epoch_order = result.train_rows;
    Gradients grad = zero_gradients(m);
    Workspace ws;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(epoch_order));
        for (std::size_t start = 0; start < epoch_order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(start + cfg.batch_size, epoch_order.size());
            for (auto& layer : grad) {
                std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
                std::fill(layer.biases.begin(), layer.biases.end(), 0.0);
            }
            for (std::size_t i = start; i < stop; ++i) {
                const std::size_t row = epoch_order[i];
                accumulate_gradients(m, data.row(row), static_cast<std::size_t>(data.labels[row] - 1), grad, ws);
            }
            const double step = cfg.learning_rate / static_cast<double>(stop - start);
            for (std::size_t l = 0; l < m.layers.size(); ++l) {
                auto& layer = m.layers[l];
                for (std::size_t k = 0; k < layer.weights.size(); ++k) layer.weights[k] -= step * grad[l].weights[k];
                for (std::size_t k = 0; k < layer.biases.size(); ++k) layer.biases[k] -= step * grad[l].biases[k];
            }
        }
        const SplitMetrics tr = measure(m, data, result.train_rows);
        const SplitMetrics va = measure(m, data, result.validation_rows);
        result.history.push_back({epoch, tr.loss, va.loss, va.top1, va.top2});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Text model format

namespace {

constexpr std::string_view kMagic = "PASSCAST-MODEL";
constexpr std::string_view kHeader = "PASSCAST-MODEL v1";

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next(std::string_view what) {
        std::string line;
        if (!std::getline(in_, line)) throw ModelFormatError("truncated model file: missing " + std::string(what));
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

void read_row(LineReader& reader, std::span<double> out, std::string_view what) {
    const std::string line = reader.next(what);
    const auto fields = split_ws(line);
    if (fields.size() != out.size()) {
        throw ModelFormatError("line " + std::to_string(reader.line_no()) + ": expected " + std::to_string(out.size()) +
                               " values in " + std::string(what) + ", found " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto v = parse_double(fields[i]);
        if (!v || !std::isfinite(*v)) {
            throw ModelFormatError("line " + std::to_string(reader.line_no()) + ": bad value '" +
                                   std::string(fields[i]) + "'");
        }
        out[i] = *v;
    }
}

void expect_tag(LineReader& reader, char tag, std::size_t index) {
    const std::string line = reader.next(std::string(1, tag) + " tag");
    const std::string want = std::string(1, tag) + ' ' + std::to_string(index);
    if (line != want) {
        throw ModelFormatError("line " + std::to_string(reader.line_no()) + ": expected '" + want + "', found '" +
                               line + "'");
    }
}

}  // namespace

void save_model(std::ostream& out, const Model& m) {
    out << kHeader << '\n' << "layers:";
    for (std::size_t s : m.layer_sizes) out << ' ' << s;
    out << '\n';
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
        const DenseLayer& layer = m.layers[l];
        out << "W " << l << '\n';
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            for (std::size_t c = 0; c < layer.inputs; ++c) {
                if (c) out << ' ';
                out << format_double(layer.w(r, c));
            }
            out << '\n';
        }
        out << "b " << l << '\n';
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            if (r) out << ' ';
            out << format_double(layer.biases[r]);
        }
        out << '\n';
    }
}

void save_model(const std::filesystem::path& path, const Model& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    save_model(out, m);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Model load_model(std::istream& in) {
    LineReader reader(in);
    const std::string header = reader.next("header");
    if (header != kHeader) {
        if (header.starts_with(kMagic)) throw ModelFormatError("unsupported model version: '" + header + "'");
        throw ModelFormatError("not a model file: missing '" + std::string(kHeader) + "' header");
    }
    const std::string sizes_line = reader.next("layers line");
    if (!sizes_line.starts_with("layers:")) throw ModelFormatError("expected 'layers:' line");
    std::vector<std::size_t> sizes;
    for (auto field : split_ws(std::string_view(sizes_line).substr(7))) {
        const auto v = parse_int(field);
        if (!v || *v <= 0) throw ModelFormatError("bad layer size '" + std::string(field) + "'");
        sizes.push_back(static_cast<std::size_t>(*v));
    }
    if (sizes.size() < 2) throw ModelFormatError("a model needs at least two layer sizes");

    Model m;
    m.layer_sizes = sizes;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        DenseLayer layer;
        layer.inputs = sizes[l];
        layer.outputs = sizes[l + 1];
        layer.weights.resize(layer.inputs * layer.outputs);
        layer.biases.resize(layer.outputs);
        expect_tag(reader, 'W', l);
        for (std::size_t r = 0; r < layer.outputs; ++r) {
            read_row(reader, std::span<double>(layer.weights.data() + r * layer.inputs, layer.inputs), "weight row");
        }
        expect_tag(reader, 'b', l);
        read_row(reader, layer.biases, "bias row");
        m.layers.push_back(std::move(layer));
    }
    std::string rest;
    while (std::getline(in, rest)) {
        if (rest.find_first_not_of(" \t\r") != std::string::npos) throw ModelFormatError("unexpected trailing data");
    }
    return m;
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load_model(in);
}

}  // namespace passcast
