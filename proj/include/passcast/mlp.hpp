#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "passcast/dataset.hpp"

namespace passcast {

/// Fully connected layer, weights row-major (rows = outputs, cols = inputs).
struct DenseLayer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    double& w(std::size_t row, std::size_t col) { return weights[row * inputs + col]; }
    double w(std::size_t row, std::size_t col) const { return weights[row * inputs + col]; }

    bool operator==(const DenseLayer&) const = default;
};

/// Feed-forward classifier: tanh hidden layers, softmax output.
struct Model {
    std::vector<std::size_t> layer_sizes;
    std::vector<DenseLayer> layers;
    std::uint64_t seed = 0;

    std::size_t input_dims() const { return layer_sizes.front(); }
    std::size_t output_dims() const { return layer_sizes.back(); }

    /// Compares architecture and parameters, not the seed.
    bool same_parameters(const Model& o) const { return layer_sizes == o.layer_sizes && layers == o.layers; }
};

/// Glorot-uniform weights, zero biases. Throws InvalidArchitecture for fewer
/// than two layers or any zero size.
Model init_model(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

/// Scratch buffers reused across forward/backward calls.
struct Workspace {
    std::vector<std::vector<double>> activations;
    std::vector<std::vector<double>> deltas;
};

/// Softmax probabilities written into `probs` (size output_dims()).
void forward_into(const Model& m, std::span<const double> x, std::span<double> probs, Workspace& ws);
std::vector<double> forward(const Model& m, std::span<const double> x);

inline constexpr double kProbabilityFloor = 1e-12;

/// Cross-entropy of a distribution against class `target` (0-based).
double cross_entropy(std::span<const double> probs, std::size_t target);

using Gradients = std::vector<DenseLayer>;

Gradients zero_gradients(const Model& m);

/// Adds d loss / d params for one sample into `acc`; returns the sample loss.
double accumulate_gradients(const Model& m, std::span<const double> x, std::size_t target, Gradients& acc,
                            Workspace& ws);
Gradients backward(const Model& m, std::span<const double> x, std::size_t target);

struct TrainConfig {
    double learning_rate = 0.01;
    std::size_t batch_size = 32;
    std::size_t epochs = 50;
    std::uint64_t seed = 1;
    double validation_fraction = 0.2;
};

struct EpochStats {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
    double val_top1 = 0.0;
    double val_top2 = 0.0;

    bool operator==(const EpochStats&) const = default;
};

struct TrainResult {
    Model model;
    std::vector<EpochStats> history;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> validation_rows;
};

/// Seeded split, then epochs of shuffled mini-batch SGD on mean batch
/// gradients. Validation columns are NaN when the validation split is empty.
TrainResult train(const Dataset& data, std::span<const std::size_t> layer_sizes, const TrainConfig& cfg);

struct Prediction {
    int unum = 0;
    double probability = 0.0;

    bool operator==(const Prediction&) const = default;
};

/// The k most probable classes as 1-based unums; ties go to the lower unum.
std::vector<Prediction> top_k(std::span<const double> probs, std::size_t k);
std::vector<Prediction> predict_topk(const Model& m, std::span<const double> x, std::size_t k);

void save_model(std::ostream& out, const Model& m);
void save_model(const std::filesystem::path& path, const Model& m);
/// Throws ModelFormatError on any deviation from the v1 text format.
Model load_model(std::istream& in);
Model load_model(const std::filesystem::path& path);

}  // namespace passcast
