#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "passcast/defense.hpp"
#include "passcast/features.hpp"
#include "passcast/labeler.hpp"
#include "passcast/mlp.hpp"
#include "passcast/world.hpp"

namespace passcast::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIoError = 2,
    kEmptyResult = 3,
    kShapeMismatch = 4,
};

struct ExtractOptions {
    std::vector<std::filesystem::path> inputs;
    FeatureLevel level = FeatureLevel::High;
    std::filesystem::path out;
    LabelerConfig labeler;
    FieldSpec field;
    bool lenient = true;
};

struct TrainOptions {
    std::filesystem::path dataset;
    /// Full layer sizes including input and output; default {D, 64, 11}.
    std::optional<std::vector<std::size_t>> layers;
    TrainConfig train;
    std::filesystem::path model_out;
    /// Defaults to history.csv next to the model.
    std::optional<std::filesystem::path> history_out;
};

struct EvalOptions {
    std::filesystem::path model;
    std::filesystem::path dataset;
};

struct AssignOptions {
    std::filesystem::path state;
    std::filesystem::path model;
    std::vector<int> defenders = default_defenders();
    std::optional<Side> attackers;
    DefenseConfig defense;
    FieldSpec field;
};

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err);
int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_assign(const AssignOptions& opt, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace passcast::cli
