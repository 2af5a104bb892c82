#include "passcast/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "passcast/batch.hpp"
#include "passcast/dataset.hpp"
#include "passcast/error.hpp"
#include "passcast/metrics.hpp"
#include "passcast/rcg.hpp"
#include "passcast/text.hpp"

namespace passcast::cli {

namespace fs = std::filesystem;

namespace {

bool is_log_name(const fs::path& p) {
    const std::string name = p.filename().string();
    return name.ends_with(".rcg") || name.ends_with(".rcg.gz");
}

/// Expands directories (recursively) into their .rcg/.rcg.gz files, sorted.
std::optional<std::vector<fs::path>> collect_logs(const std::vector<fs::path>& inputs, std::ostream& err) {
    std::vector<fs::path> files;
    for (const auto& input : inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            std::vector<fs::path> found;
            for (auto it = fs::recursive_directory_iterator(input, ec); !ec && it != fs::recursive_directory_iterator();
                 it.increment(ec)) {
                if (it->is_regular_file() && is_log_name(it->path())) found.push_back(it->path());
            }
            if (ec) {
                err << "error: cannot read directory " << input.string() << ": " << ec.message() << '\n';
                return std::nullopt;
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(input, ec)) {
            files.push_back(input);
        } else {
            err << "error: cannot read " << input.string() << '\n';
            return std::nullopt;
        }
    }
    return files;
}

std::string fixed(double v, int digits) { return fmt::format("{:.{}f}", v, digits); }

}  // namespace

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    const auto files = collect_logs(opt.inputs, err);
    if (!files) return kIoError;

    const auto parsed = parallel::parse_files(*files, opt.lenient);
    std::vector<Snapshot> states;
    std::vector<int> labels;
    std::size_t warnings = 0;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (!parsed[i].error.empty()) {
            err << "error: " << parsed[i].error << '\n';
            return kIoError;
        }
        for (const auto& w : parsed[i].log.warnings) {
            if (warnings < 10) err << "warning: " << (*files)[i].string() << ':' << w.line << ": " << w.message << '\n';
            ++warnings;
        }
        for (auto& e : extract_pass_events(parsed[i].log, opt.field, opt.labeler)) {
            states.push_back(std::move(e.state));
            labels.push_back(e.receiver_unum);
        }
    }

    Dataset data;
    data.level = opt.level;
    data.dims = feature_dims(opt.level);
    data.features.resize(states.size() * data.dims);
    data.labels = labels;
    parallel::extract_batch(states, opt.level, opt.field, data.features);

    out << "logs " << files->size() << ", events " << states.size() << ", rows "
        << data.size() << ", warnings " << warnings << '\n';
    if (states.empty()) {
        err << "error: no pass events found\n";
        return kEmptyResult;
    }
    try {
        save_dataset(opt.out, data);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kOk;
}

namespace {

void write_history(const fs::path& path, const std::vector<EpochStats>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "epoch,train_loss,val_loss,val_top1,val_top2\n";
    for (const auto& h : history) {
        out << h.epoch << ',' << format_double(h.train_loss) << ',' << format_double(h.val_loss) << ','
            << format_double(h.val_top1) << ',' << format_double(h.val_top2) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
    Dataset data;
    try {
        data = load_dataset(opt.dataset);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    if (data.empty()) {
        err << "error: dataset " << opt.dataset.string() << " has no rows\n";
        return kEmptyResult;
    }
    const std::vector<std::size_t> layers =
        opt.layers.value_or(std::vector<std::size_t>{data.dims, 64, static_cast<std::size_t>(kTeamSize)});
    if (layers.size() < 2 || layers.front() != data.dims || layers.back() != static_cast<std::size_t>(kTeamSize)) {
        err << "error: layer spec must start with the dataset width " << data.dims << " and end with "
            << kTeamSize << '\n';
        return kShapeMismatch;
    }

    TrainResult result;
    try {
        result = train(data, layers, opt.train);
    } catch (const InvalidArchitecture& e) {
        err << "error: " << e.what() << '\n';
        return kShapeMismatch;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kShapeMismatch;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    const fs::path history_path = opt.history_out.value_or(opt.model_out.parent_path() / "history.csv");
    try {
        save_model(opt.model_out, result.model);
        write_history(history_path, result.history);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }

    std::string level = data.level ? std::string(level_name(*data.level)) : "unknown";
    out << "level " << level << ", layers";
    for (std::size_t s : layers) out << ' ' << s;
    out << ", epochs " << opt.train.epochs << ", lr " << format_double(opt.train.learning_rate) << ", batch "
        << opt.train.batch_size << ", seed " << opt.train.seed << '\n';
    out << "split train " << result.train_rows.size() << ", validation " << result.validation_rows.size()
        << " (fraction " << format_double(opt.train.validation_fraction) << ")\n";
    if (!result.history.empty()) {
        const auto& last = result.history.back();
        out << "final train_loss " << fixed(last.train_loss, 6) << ", val_loss " << fixed(last.val_loss, 6) << '\n';
    }
    out << "validation metrics\n" << format_report(evaluate(result.model, data, result.validation_rows));
    return kOk;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
    Model model;
    Dataset data;
    try {
        model = load_model(opt.model);
        data = load_dataset(opt.dataset);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    if (model.input_dims() != data.dims || model.output_dims() != static_cast<std::size_t>(kTeamSize)) {
        err << "error: model takes " << model.input_dims() << " inputs and " << model.output_dims()
            << " classes; dataset has " << data.dims << " features\n";
        return kShapeMismatch;
    }
    if (data.empty()) {
        err << "error: dataset " << opt.dataset.string() << " has no rows\n";
        return kEmptyResult;
    }
    out << format_report(evaluate(model, data));
    return kOk;
}

namespace {

std::optional<Snapshot> read_state(const fs::path& path, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open " << path.string() << '\n';
        return std::nullopt;
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            return parse_show_line(line, line_no);
        } catch (const std::exception& e) {
            err << "error: " << path.string() << ": " << e.what() << '\n';
            return std::nullopt;
        }
    }
    err << "error: " << path.string() << " holds no show line\n";
    return std::nullopt;
}

}  // namespace

int cmd_assign(const AssignOptions& opt, std::ostream& out, std::ostream& err) {
    const auto state = read_state(opt.state, err);
    if (!state) return kIoError;
    Model model;
    try {
        model = load_model(opt.model);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    if (model.input_dims() != kHighDims || model.output_dims() != static_cast<std::size_t>(kTeamSize)) {
        err << "error: assignment needs a high-level model (" << kHighDims << " inputs, " << kTeamSize
            << " outputs)\n";
        return kShapeMismatch;
    }
    for (int u : opt.defenders) {
        if (u < 1 || u > kTeamSize) {
            err << "error: defender unum " << u << " outside 1..11\n";
            return kUsage;
        }
    }

    const Side attackers = opt.attackers.value_or(infer_attacking_side(*state, opt.field));
    const Snapshot frame = to_defensive_frame(*state, attackers);
    const DefensePlan result = plan_defense(frame, model, opt.field, opt.defenders, opt.defense);

    if (result.plan.entries.empty()) {
        out << "no assignments\n";
        return kOk;
    }
    for (const auto& e : result.plan.entries) {
        out << "teammate " << e.teammate << " -> " << task_name(e.task) << " opponent " << e.opponent << " (threat "
            << fixed(e.threat, 3) << ", pair " << fixed(e.pair_score, 3) << ")\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> parse_layers(const std::string& spec) {
    std::vector<std::size_t> sizes;
    for (auto field : split(spec, ',')) {
        const auto v = parse_int(field);
        if (!v || *v <= 0) throw CLI::ValidationError("--layers", "expected comma-separated positive sizes");
        sizes.push_back(static_cast<std::size_t>(*v));
    }
    return sizes;
}

std::vector<int> parse_defenders(const std::string& spec) {
    std::vector<int> out;
    if (spec.find_first_not_of(" ") == std::string::npos) return out;
    for (auto field : split(spec, ',')) {
        const auto v = parse_int(field);
        if (!v) throw CLI::ValidationError("--defenders", "expected comma-separated unums");
        out.push_back(static_cast<int>(*v));
    }
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PASSCAST_SEED")) {
        if (const auto v = parse_int(env); v && *v >= 0) return static_cast<std::uint64_t>(*v);
    }
    return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pass-receiver datasets, models and defensive assignment for 2D soccer simulation logs", "passcast"};
    app.require_subcommand(1);

    const std::map<std::string, FeatureLevel> levels{
        {"low", FeatureLevel::Low}, {"mid", FeatureLevel::Mid}, {"high", FeatureLevel::High}};

    ExtractOptions ex;
    std::vector<std::string> ex_inputs;
    auto* extract = app.add_subcommand("extract", "Build a labeled dataset from game logs");
    extract->add_option("inputs", ex_inputs, "Log files or directories (.rcg, .rcg.gz)")->required();
    extract->add_option("--level", ex.level, "Feature level")
        ->transform(CLI::CheckedTransformer(levels, CLI::ignore_case));
    extract->add_option("-o,--out", ex.out, "Dataset CSV to write")->required();
    extract->add_option("--window", ex.labeler.window, "Cycles to wait for a receiver")->check(CLI::PositiveNumber);
    extract->add_option("--kickable", ex.field.kickable_dist, "Kickable distance in meters")
        ->check(CLI::PositiveNumber);
    extract->add_flag("--set-plays", ex.labeler.include_set_plays, "Also label kicks taken in set plays");
    extract->add_flag("--lenient,!--strict", ex.lenient, "Skip malformed log lines (default) or fail on them");

    TrainOptions tr;
    tr.train.seed = default_seed();
    std::string tr_layers;
    std::string tr_history;
    auto* trn = app.add_subcommand("train", "Train a receiver model on a dataset");
    trn->add_option("dataset", tr.dataset, "Dataset CSV")->required();
    trn->add_option("-o,--model", tr.model_out, "Model file to write")->required();
    trn->add_option("--layers", tr_layers, "Layer sizes, e.g. 385,64,11");
    trn->add_option("--lr", tr.train.learning_rate, "Learning rate")->check(CLI::NonNegativeNumber);
    trn->add_option("--batch", tr.train.batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
    trn->add_option("--epochs", tr.train.epochs, "Training epochs");
    trn->add_option("--seed", tr.train.seed, "Seed (falls back to PASSCAST_SEED, then 1)");
    trn->add_option("--val", tr.train.validation_fraction, "Validation fraction")->check(CLI::Range(0.0, 0.999999));
    trn->add_option("--history", tr_history, "History CSV (default: history.csv next to the model)");

    EvalOptions ev;
    auto* evl = app.add_subcommand("eval", "Report top-1/top-2 accuracy of a model on a dataset");
    evl->add_option("model", ev.model, "Model file")->required();
    evl->add_option("dataset", ev.dataset, "Dataset CSV")->required();

    AssignOptions as;
    std::string as_defenders = "2,3,4,5,6,7,8,9,10,11";
    std::string as_attackers = "auto";
    auto* asg = app.add_subcommand("assign", "Score opponents and assign mark/block tasks for one state");
    asg->add_option("state", as.state, "File holding one show line")->required();
    asg->add_option("model", as.model, "High-level model file")->required();
    asg->add_option("--defenders", as_defenders, "Defending unums, comma separated (empty for none)");
    asg->add_option("--attackers", as_attackers, "Attacking side in the state file")
        ->check(CLI::IsMember({"l", "r", "auto"}));
    asg->add_option("--threat-floor", as.defense.threat_floor, "Stop once the best threat is at or below this");
    asg->add_option("--block-dist", as.defense.block_dist, "Block point distance from the opponent")
        ->check(CLI::NonNegativeNumber);
    asg->add_option("--kickable", as.field.kickable_dist, "Kickable distance in meters")->check(CLI::PositiveNumber);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
        if (!tr_layers.empty()) tr.layers = parse_layers(tr_layers);
        if (!tr_history.empty()) tr.history_out = tr_history;
        as.defenders = parse_defenders(as_defenders);
        if (as_attackers != "auto") as.attackers = as_attackers == "l" ? Side::Left : Side::Right;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    if (extract->parsed()) {
        ex.inputs.assign(ex_inputs.begin(), ex_inputs.end());
        return cmd_extract(ex, out, err);
    }
    if (trn->parsed()) return cmd_train(tr, out, err);
    if (evl->parsed()) return cmd_eval(ev, out, err);
    return cmd_assign(as, out, err);
}

}  // namespace passcast::cli
