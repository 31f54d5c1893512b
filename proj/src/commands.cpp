// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwalk/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/text_format.hpp"

namespace qwalk {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegPerRad = 180.0 / kPi;

bool is_theta_name(const std::string &name) {
    return name.rfind("theta", 0) == 0;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

Complex parse_complex(const std::string &text) {
    auto comma = text.find(',');
    double re = 0.0;
    double im = 0.0;
    if (comma == std::string::npos) {
        if (!parse_double(text, re)) {
            throw UsageError("expected 're,im' amplitude, got '" + text + "'");
        }
    } else if (!parse_double(std::string_view(text).substr(0, comma), re) ||
               !parse_double(std::string_view(text).substr(comma + 1), im)) {
        throw UsageError("expected 're,im' amplitude, got '" + text + "'");
    }
    return {re, im};
}

SpinState initial_from_flags(const std::string &kind, const std::string &alpha, const std::string &beta) {
    if (kind == "symmetric-i") {
        return symmetric_i_state();
    }
    if (kind == "symmetric-plain") {
        return symmetric_plain_state();
    }
    if (kind == "custom") {
        if (alpha.empty() || beta.empty()) {
            throw UsageError("--initial custom needs --alpha and --beta");
        }
        SpinState s{parse_complex(alpha), parse_complex(beta)};
        try {
            check_normalized(s);
        } catch (const InvalidParameter &e) {
            throw UsageError(e.what());
        }
        return s;
    }
    throw UsageError("unknown --initial '" + kind + "'");
}

std::string format_fixed(double v, int digits) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(digits);
    ss << v;
    return ss.str();
}

std::string format_sci(double v) {
    std::ostringstream ss;
    ss.setf(std::ios::scientific);
    ss.precision(4);
    ss << v;
    return ss.str();
}

Provenance provenance_for(const Dataset &ds, const SplitSpec &split_spec, std::size_t train_rows) {
    Provenance p;
    p.dataset_kind = grid_kind_name(ds.grid.kind);
    p.split_seed = split_spec.seed;
    p.split_ratio = split_spec.ratio;
    p.feature_len = ds.feature_len;
    p.position_offset = ds.position_offset;
    p.target_names = ds.target_names;
    p.train_rows = train_rows;
    return p;
}

struct TrainOptions {
    std::string model;
    double alpha = 0.01;
    int k = 5;
    TrainConfig mlp;
};

AnyModel fit_model(const TrainOptions &opt, const Dataset &full, const Dataset &train) {
    if (opt.model == "linear") {
        return fit_linear(train);
    }
    if (opt.model == "ridge") {
        return fit_ridge(train, opt.alpha);
    }
    if (opt.model == "knn") {
        return fit_knn(train, opt.k);
    }
    if (opt.model == "baseline") {
        return fit_baseline(train);
    }
    if (opt.model == "mlp") {
        TrainConfig cfg = opt.mlp;
        cfg.scaling = default_target_scaling(full);
        TrainResult r = train_mlp(train, cfg);
        return MlpRegressor{std::move(r.model), cfg.scaling};
    }
    throw UsageError("unknown model '" + opt.model + "'");
}

ModelArtifact train_artifact(const TrainOptions &opt, const Dataset &ds, const SplitSpec &split_spec) {
    auto [train, test] = split(ds, split_spec);
    AnyModel model = fit_model(opt, ds, train);
    return ModelArtifact{std::move(model), provenance_for(ds, split_spec, train.rows())};
}

std::string units_for(const std::vector<std::string> &names) {
    auto f = display_factors(names);
    bool degrees = false;
    for (std::size_t i = 0; i < names.size(); i++) {
        degrees = degrees || (is_theta_name(names[i]) && f[i] != 1.0);
    }
    return degrees ? "degree^2 + step^2" : "radian^2";
}

}  // namespace

std::vector<std::ptrdiff_t> top_peaks(const Distribution &dist, std::size_t count) {
    std::vector<std::pair<std::ptrdiff_t, double>> nz;
    for (std::size_t i = 0; i < dist.probs.size(); i++) {
        if (dist.probs[i] != 0.0) {
            nz.emplace_back(static_cast<std::ptrdiff_t>(i) - dist.offset, dist.probs[i]);
        }
    }
    std::vector<std::pair<std::ptrdiff_t, double>> maxima;
    for (std::size_t i = 0; i < nz.size(); i++) {
        const double left = i > 0 ? nz[i - 1].second : -1.0;
        const double right = i + 1 < nz.size() ? nz[i + 1].second : -1.0;
        if (nz[i].second >= left && nz[i].second >= right) {
            maxima.push_back(nz[i]);
        }
    }
    std::stable_sort(maxima.begin(), maxima.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
    std::vector<std::ptrdiff_t> out;
    for (std::size_t i = 0; i < maxima.size() && i < count; i++) {
        out.push_back(maxima[i].first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TargetScaling default_target_scaling(const Dataset &ds) {
    TargetScaling s;
    for (const auto &name : ds.target_names) {
        if (is_theta_name(name)) {
            s.scale.push_back(2.0 / kPi);
        } else if (name == "steps") {
            const int n_max = ds.grid.kind == GridKind::theta_steps ? ds.grid.steps_max : ds.grid.steps;
            s.scale.push_back(1.0 / std::max(1, n_max));
        } else {
            s.scale.push_back(1.0);
        }
        s.shift.push_back(0.0);
    }
    return s;
}

std::vector<double> display_factors(const std::vector<std::string> &target_names) {
    const bool has_steps = std::find(target_names.begin(), target_names.end(), "steps") != target_names.end();
    std::vector<double> f;
    for (const auto &name : target_names) {
        f.push_back(has_steps && is_theta_name(name) ? kDegPerRad : 1.0);
    }
    return f;
}

Evaluation evaluate_model(const ModelArtifact &artifact, const Dataset &ds) {
    const Provenance &p = artifact.provenance;
    if (p.feature_len != ds.feature_len || p.position_offset != ds.position_offset) {
        throw ShapeError("dataset feature layout (" + std::to_string(ds.feature_len) +
                         " features) does not match the model (" + std::to_string(p.feature_len) + ")");
    }
    if (p.target_names != ds.target_names || p.dataset_kind != grid_kind_name(ds.grid.kind)) {
        throw ShapeError("dataset kind or targets do not match the model's training data");
    }
    auto [train, test] = split(ds, SplitSpec{p.split_ratio, p.split_seed});
    const auto factors = display_factors(ds.target_names);
    std::vector<std::vector<double>> preds;
    std::vector<std::vector<double>> truth;
    for (std::size_t r = 0; r < test.rows(); r++) {
        auto y = predict_any(artifact.model, test.feature_row(r));
        auto t = test.target_row(r);
        std::vector<double> yt(t.begin(), t.end());
        for (std::size_t j = 0; j < factors.size(); j++) {
            y[j] *= factors[j];
            yt[j] *= factors[j];
        }
        preds.push_back(std::move(y));
        truth.push_back(std::move(yt));
    }
    return Evaluation{mse(preds, truth), units_for(ds.target_names), test.rows()};
}

std::vector<double> features_for_model(const Provenance &provenance, const Distribution &dist) {
    std::vector<double> f(provenance.feature_len, 0.0);
    for (std::size_t i = 0; i < dist.probs.size(); i++) {
        const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(i) - dist.offset;
        const std::ptrdiff_t idx = pos + provenance.position_offset;
        if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(f.size())) {
            if (dist.probs[i] != 0.0) {
                throw ShapeError("distribution has mass at position " + std::to_string(pos) +
                                 ", outside the model's feature window");
            }
            continue;
        }
        f[static_cast<std::size_t>(idx)] = dist.probs[i];
    }
    return f;
}

// ---------------------------------------------------------------------------
// Reproduction pipelines.

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ModelPlan {
    TrainOptions options;
    std::string label;
};

ordered_json report_json(const ReproReport &r) {
    ordered_json models = ordered_json::array();
    for (const auto &m : r.metrics) {
        ordered_json e{{"model", m.model}, {"label", m.label}, {"mse", m.mse}};
        if (m.predicted_theta_deg) {
            e["predicted_theta_deg"] = *m.predicted_theta_deg;
            e["expected_theta_deg"] = 90.0;
            e["percent_error"] = *m.percent_error;
        }
        models.push_back(std::move(e));
    }
    ordered_json metrics{{"units", r.mse_units}, {"models", models}};
    if (r.reduction_percent) {
        metrics["reduction_percent"] = *r.reduction_percent;
    }
    return ordered_json{{"experiment", r.experiment},
                        {"seed", r.seed},
                        {"split_ratio", r.split_ratio},
                        {"dataset_kind", grid_kind_name(r.grid.kind)},
                        {"grid", grid_to_json(r.grid)},
                        {"rows", r.rows},
                        {"train_rows", r.train_rows},
                        {"test_rows", r.test_rows},
                        {"metrics", metrics},
                        {"artifacts", r.artifacts}};
}

std::string report_text(const ReproReport &r) {
    std::ostringstream ss;
    ss << "experiment: " << r.experiment << "\n";
    ss << "dataset: " << grid_kind_name(r.grid.kind) << ", " << r.rows << " rows (train " << r.train_rows
       << ", test " << r.test_rows << ")\n";
    ss << "split: ratio " << format_double(r.split_ratio) << ", seed " << r.seed << "\n\n";
    const bool probe = !r.metrics.empty() && r.metrics.front().predicted_theta_deg.has_value();
    ss << std::left;
    ss.width(40);
    ss << "model";
    if (probe) {
        ss << "expected   predicted   error(%)\n";
    } else {
        ss << "mse [" << r.mse_units << "]\n";
    }
    for (const auto &m : r.metrics) {
        ss.width(40);
        ss << m.label;
        if (probe) {
            ss << "90.000     " << format_fixed(*m.predicted_theta_deg, 3) << "      "
               << format_fixed(*m.percent_error, 3) << "\n";
        } else {
            ss << format_sci(m.mse) << "\n";
        }
    }
    if (r.reduction_percent) {
        ss << "\nreduction vs baseline: " << format_fixed(*r.reduction_percent, 3) << "%\n";
    }
    return ss.str();
}

}  // namespace

ReproReport run_reproduce(const ReproduceOptions &options) {
    const auto t_start = Clock::now();
    const std::string &exp = options.experiment;
    GridSpec grid;
    std::vector<ModelPlan> plans;
    TrainOptions base;
    base.mlp.epochs = options.epochs;
    base.mlp.batch_size = options.batch_size;
    base.mlp.seed = options.seed;
    base.mlp.optimizer.learning_rate = options.learning_rate;
    auto plan = [&](const std::string &model, const std::string &label) {
        ModelPlan p{base, label};
        p.options.model = model;
        plans.push_back(p);
    };
    if (exp == "table31" || exp == "table32") {
        grid = GridSpec::reference_single_theta();
        plan("linear", "Linear Regression");
        plan("knn", "K-Nearest Neighbours (k = 5)");
        plan("ridge", "Ridge Regression (alpha = 0.01)");
    } else if (exp == "table33") {
        grid = GridSpec::reference_ssqw();
        plan("knn", "K-Nearest Neighbour (k = 5)");
        plan("linear", "Linear Regression");
    } else if (exp == "mlp") {
        grid = GridSpec::reference_theta_steps();
        plan("baseline", "Baseline (training mean)");
        plan("mlp", "MLP (ReLU hidden, exp output, Nadam)");
    } else {
        throw UsageError("unknown experiment '" + exp + "' (expected table31, table32, table33 or mlp)");
    }

    namespace fs = std::filesystem;
    fs::create_directories(options.out_dir);
    auto path_for = [&](const std::string &name) { return (fs::path(options.out_dir) / (exp + "_" + name)).string(); };

    ReproReport report;
    report.experiment = exp;
    report.seed = options.seed;
    report.split_ratio = options.split_ratio;
    report.grid = grid;

    const auto t_gen = Clock::now();
    Dataset generated = generate(grid);
    report.generation_seconds = seconds_since(t_gen);
    const std::string data_path = path_for("dataset.csv");
    save_dataset(generated, data_path);
    report.artifacts.push_back(fs::path(data_path).filename().string());

    const SplitSpec split_spec{options.split_ratio, options.seed};
    std::vector<std::string> model_paths;
    const auto t_train = Clock::now();
    for (const auto &p : plans) {
        ModelArtifact artifact = train_artifact(p.options, generated, split_spec);
        const std::string path = path_for(p.options.model + "_model.json");
        save_model(artifact, path);
        model_paths.push_back(path);
        report.artifacts.push_back(fs::path(path).filename().string());
    }
    report.training_seconds = seconds_since(t_train);
    generated = Dataset{};

    // Scores come from the files just written, not from in-memory state.
    const Dataset ds = load_dataset(data_path);
    report.rows = ds.rows();
    report.train_rows = train_size(ds.rows(), options.split_ratio);
    report.test_rows = ds.rows() - report.train_rows;
    report.mse_units = units_for(ds.target_names);

    std::optional<std::vector<double>> probe_features;
    std::string probe_path;
    if (exp == "table32") {
        Distribution probe =
            simulate(WalkSpec::standard(CoinSpec::one_parameter(kPi / 2), grid.steps), grid.initial);
        probe_path = path_for("probe_theta_90.tsv");
        write_file(probe_path, to_text(probe));
        report.artifacts.push_back(fs::path(probe_path).filename().string());
    }
    for (std::size_t i = 0; i < plans.size(); i++) {
        ModelArtifact artifact = load_model(model_paths[i]);
        ModelMetric m;
        m.model = plans[i].options.model;
        m.label = plans[i].label;
        m.mse = evaluate_model(artifact, ds).mse;
        if (!probe_path.empty()) {
            Distribution probe = parse_distribution_text(read_file(probe_path));
            auto y = predict_any(artifact.model, features_for_model(artifact.provenance, probe));
            m.predicted_theta_deg = y[0] * kDegPerRad;
            m.percent_error = std::abs(*m.predicted_theta_deg - 90.0) / 90.0 * 100.0;
        }
        report.metrics.push_back(m);
    }
    if (exp == "mlp") {
        const double baseline = report.metrics[0].mse;
        const double net = report.metrics[1].mse;
        report.reduction_percent = 100.0 * (1.0 - net / baseline);
    }

    const std::string json_path = path_for("report.json");
    const std::string text_path = path_for("report.txt");
    report.artifacts.push_back(fs::path(json_path).filename().string());
    report.artifacts.push_back(fs::path(text_path).filename().string());
    write_file(json_path, report_json(report).dump(2) + "\n");
    write_file(text_path, report_text(report));
    report.wall_seconds = seconds_since(t_start);
    return report;
}

// ---------------------------------------------------------------------------
// Command-line front end.

namespace {

struct WalkFlags {
    std::optional<double> theta;
    std::optional<double> xi;
    std::optional<double> zeta;
    int steps = 0;
    std::string initial = "symmetric-i";
    std::string alpha;
    std::string beta;
    bool split_step = false;
    std::optional<double> theta1;
    std::optional<double> theta2;
    bool degrees = false;
    std::string out;
};

int cmd_walk(const WalkFlags &f) {
    const double unit = f.degrees ? kPi / 180.0 : 1.0;
    WalkSpec spec;
    if (f.split_step) {
        if (f.theta) {
            throw UsageError("--theta cannot be combined with --split-step (use --theta1/--theta2)");
        }
        if (!f.theta1 || !f.theta2) {
            throw UsageError("--split-step needs --theta1 and --theta2");
        }
        spec = WalkSpec::split_step(CoinSpec::one_parameter(*f.theta1 * unit),
                                    CoinSpec::one_parameter(*f.theta2 * unit), f.steps);
    } else {
        if (!f.theta) {
            throw UsageError("--theta is required unless --split-step is given");
        }
        if (f.theta1 || f.theta2) {
            throw UsageError("--theta1/--theta2 need --split-step");
        }
        // Unspecified phases keep the one-parameter coin, whatever the unit.
        CoinSpec coin = CoinSpec::one_parameter(*f.theta * unit);
        if (f.xi) coin.xi = *f.xi * unit;
        if (f.zeta) coin.zeta = *f.zeta * unit;
        spec = WalkSpec::standard(coin, f.steps);
    }
    if (f.steps < 0) {
        throw UsageError("--steps must be nonnegative");
    }
    SpinState spin = initial_from_flags(f.initial, f.alpha, f.beta);
    Distribution dist = simulate(spec, spin);
    std::string text = to_text(dist);

    std::ostringstream summary;
    summary << "total_probability " << format_double(dist.total()) << "\n";
    summary << "peaks";
    for (auto p : top_peaks(dist, 2)) {
        summary << " " << p;
    }
    summary << "\n";
    if (f.out.empty()) {
        std::cout << text;
        std::cerr << summary.str();
    } else {
        write_file(f.out, text);
        std::cout << summary.str();
    }
    return 0;
}

struct DatasetFlags {
    std::string mode;
    std::optional<double> theta_start, theta_stop, theta_step, theta2;
    std::optional<int> steps, steps_min, steps_max;
    std::optional<std::string> initial;
    std::string alpha, beta;
    bool degrees = false;
    std::string out;
};

int cmd_dataset(const DatasetFlags &f) {
    GridSpec grid;
    if (f.mode == "single-theta") {
        grid = GridSpec::reference_single_theta();
    } else if (f.mode == "theta-steps") {
        grid = GridSpec::reference_theta_steps();
    } else if (f.mode == "ssqw") {
        grid = GridSpec::reference_ssqw();
    } else {
        throw UsageError("unknown --mode '" + f.mode + "'");
    }
    const double unit = f.degrees ? kPi / 180.0 : 1.0;
    if (f.theta_start) grid.theta_start = *f.theta_start * unit;
    if (f.theta_stop) grid.theta_stop = *f.theta_stop * unit;
    if (f.theta_step) grid.theta_step = *f.theta_step * unit;
    if (f.theta2) grid.theta2 = *f.theta2 * unit;
    if (f.steps) grid.steps = *f.steps;
    if (f.steps_min) grid.steps_min = *f.steps_min;
    if (f.steps_max) grid.steps_max = *f.steps_max;
    if (f.initial) grid.initial = initial_from_flags(*f.initial, f.alpha, f.beta);
    try {
        validate_grid(grid);
    } catch (const InvalidParameter &e) {
        throw UsageError(e.what());
    }
    Dataset ds = generate(grid);
    save_dataset(ds, f.out);
    std::cout << ds.rows() << " rows, feature_len " << ds.feature_len << "\n";
    return 0;
}

struct TrainFlags {
    std::string model;
    std::string data;
    double split_ratio = 0.75;
    uint64_t seed = 42;
    double alpha = 0.01;
    int k = 5;
    int epochs = 100;
    std::size_t batch_size = 64;
    double lr = 0.002;
    int hidden = 200;
    std::string out;
};

int cmd_train(const TrainFlags &f) {
    static const std::vector<std::string> known{"linear", "ridge", "knn", "baseline", "mlp"};
    if (std::find(known.begin(), known.end(), f.model) == known.end()) {
        throw UsageError("unknown model '" + f.model + "'");
    }
    if (!(f.split_ratio > 0.0 && f.split_ratio < 1.0)) {
        throw UsageError("--split-ratio must lie in (0, 1)");
    }
    if (!(f.alpha > 0.0) || f.k < 1 || f.epochs < 1 || f.batch_size < 1 || f.hidden < 1 || !(f.lr > 0.0)) {
        throw UsageError("--alpha, --k, --epochs, --batch-size, --hidden and --lr must be positive");
    }
    TrainOptions opt;
    opt.model = f.model;
    opt.alpha = f.alpha;
    opt.k = f.k;
    opt.mlp.epochs = f.epochs;
    opt.mlp.batch_size = f.batch_size;
    opt.mlp.seed = f.seed;
    opt.mlp.optimizer.learning_rate = f.lr;
    opt.mlp.hidden_layers = {f.hidden};
    Dataset ds = load_dataset(f.data);
    ModelArtifact artifact = train_artifact(opt, ds, SplitSpec{f.split_ratio, f.seed});
    save_model(artifact, f.out);
    std::cout << "trained " << f.model << " on " << artifact.provenance.train_rows << " of " << ds.rows()
              << " rows -> " << f.out << "\n";
    return 0;
}

int cmd_evaluate(const std::string &model_file, const std::string &data, const std::string &report_path) {
    ModelArtifact artifact = load_model(model_file);
    Dataset ds = load_dataset(data);
    Evaluation ev = evaluate_model(artifact, ds);
    std::cout << "model " << model_type(artifact.model) << "\n";
    std::cout << "test_rows " << ev.test_rows << "\n";
    std::cout << "mse " << format_double(ev.mse) << " [" << ev.units << "]\n";
    if (!report_path.empty()) {
        ordered_json j{{"experiment", "evaluate"},
                       {"seed", artifact.provenance.split_seed},
                       {"split_ratio", artifact.provenance.split_ratio},
                       {"model_type", model_type(artifact.model)},
                       {"dataset_kind", artifact.provenance.dataset_kind},
                       {"metrics", {{"mse", ev.mse}, {"units", ev.units}, {"test_rows", ev.test_rows}}}};
        write_file(report_path, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_predict(const std::string &model_file, const std::string &input, const std::string &data,
                std::optional<std::size_t> row) {
    ModelArtifact artifact = load_model(model_file);
    std::vector<double> features;
    if (!input.empty() && row) {
        throw UsageError("--input and --row are mutually exclusive");
    }
    if (!input.empty()) {
        features = features_for_model(artifact.provenance, parse_distribution_text(read_file(input)));
    } else if (row) {
        if (data.empty()) {
            throw UsageError("--row needs --data");
        }
        Dataset ds = load_dataset(data);
        if (*row >= ds.rows()) {
            throw UsageError("--row " + std::to_string(*row) + " out of range (" + std::to_string(ds.rows()) +
                             " rows)");
        }
        if (ds.feature_len != artifact.provenance.feature_len) {
            throw ShapeError("dataset feature length does not match the model");
        }
        auto r = ds.feature_row(*row);
        features.assign(r.begin(), r.end());
    } else {
        throw UsageError("give --input FILE or --data FILE --row N");
    }
    auto y = predict_any(artifact.model, features);
    const auto &names = artifact.provenance.target_names;
    for (std::size_t j = 0; j < y.size(); j++) {
        const std::string name = j < names.size() ? names[j] : "target" + std::to_string(j);
        if (is_theta_name(name)) {
            std::cout << name << "_rad " << format_double(y[j]) << "\n";
            std::cout << name << "_deg " << format_double(y[j] * kDegPerRad) << "\n";
        } else {
            std::cout << name << " " << format_double(y[j]) << "\n";
        }
    }
    return 0;
}

int cmd_reproduce(const ReproduceOptions &opt) {
    ReproReport r = run_reproduce(opt);
    std::cout << read_file((std::filesystem::path(opt.out_dir) / (opt.experiment + "_report.txt")).string());
    std::cout << "\ngeneration " << format_fixed(r.generation_seconds, 2) << " s, training "
              << format_fixed(r.training_seconds, 2) << " s, wall clock " << format_fixed(r.wall_seconds, 2)
              << " s\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Discrete-time quantum walk simulator and coin-parameter estimators"};
    app.require_subcommand(1);

    WalkFlags walk;
    auto *walk_cmd = app.add_subcommand("walk", "Simulate a walk and write its position distribution");
    walk_cmd->add_option("--theta", walk.theta, "Coin angle");
    walk_cmd->add_option("--xi", walk.xi, "Coin phase xi (default 0)");
    walk_cmd->add_option("--zeta", walk.zeta, "Coin phase zeta (default -pi/2)");
    walk_cmd->add_option("--steps", walk.steps, "Number of steps")->required();
    walk_cmd->add_option("--initial", walk.initial, "symmetric-i | symmetric-plain | custom")->capture_default_str();
    walk_cmd->add_option("--alpha", walk.alpha, "Up amplitude 're,im' for --initial custom");
    walk_cmd->add_option("--beta", walk.beta, "Down amplitude 're,im' for --initial custom");
    walk_cmd->add_flag("--split-step", walk.split_step, "Split-step walk with --theta1/--theta2");
    walk_cmd->add_option("--theta1", walk.theta1, "First split-step coin angle");
    walk_cmd->add_option("--theta2", walk.theta2, "Second split-step coin angle");
    walk_cmd->add_flag("--degrees", walk.degrees, "Read angles in degrees");
    walk_cmd->add_option("--out", walk.out, "Distribution file (stdout if omitted)");

    DatasetFlags dsf;
    auto *ds_cmd = app.add_subcommand("dataset", "Generate a parameter-sweep dataset");
    ds_cmd->add_option("--mode", dsf.mode, "single-theta | theta-steps | ssqw")->required();
    ds_cmd->add_option("--theta-start", dsf.theta_start);
    ds_cmd->add_option("--theta-stop", dsf.theta_stop);
    ds_cmd->add_option("--theta-step", dsf.theta_step);
    ds_cmd->add_option("--theta2", dsf.theta2, "Second coin angle (ssqw)");
    ds_cmd->add_option("--steps", dsf.steps, "Fixed step count (single-theta, ssqw)");
    ds_cmd->add_option("--steps-min", dsf.steps_min);
    ds_cmd->add_option("--steps-max", dsf.steps_max);
    ds_cmd->add_option("--initial", dsf.initial, "symmetric-i | symmetric-plain | custom");
    ds_cmd->add_option("--alpha", dsf.alpha);
    ds_cmd->add_option("--beta", dsf.beta);
    ds_cmd->add_flag("--degrees", dsf.degrees, "Read angles in degrees");
    ds_cmd->add_option("--out", dsf.out)->required();

    TrainFlags tf;
    auto *train_cmd = app.add_subcommand("train", "Split a dataset and fit a model on the training part");
    train_cmd->add_option("--model", tf.model, "linear | ridge | knn | baseline | mlp")->required();
    train_cmd->add_option("--data", tf.data)->required();
    train_cmd->add_option("--split-ratio", tf.split_ratio)->capture_default_str();
    train_cmd->add_option("--seed", tf.seed)->capture_default_str();
    train_cmd->add_option("--alpha", tf.alpha, "Ridge penalty")->capture_default_str();
    train_cmd->add_option("--k", tf.k, "k-NN neighbour count")->capture_default_str();
    train_cmd->add_option("--epochs", tf.epochs)->capture_default_str();
    train_cmd->add_option("--batch-size", tf.batch_size)->capture_default_str();
    train_cmd->add_option("--lr", tf.lr)->capture_default_str();
    train_cmd->add_option("--hidden", tf.hidden, "Hidden layer width")->capture_default_str();
    train_cmd->add_option("--out", tf.out)->required();

    std::string eval_model, eval_data, eval_report;
    auto *eval_cmd = app.add_subcommand("evaluate", "Score a model on its recorded test split");
    eval_cmd->add_option("--model-file", eval_model)->required();
    eval_cmd->add_option("--data", eval_data)->required();
    eval_cmd->add_option("--report", eval_report, "JSON report path");

    std::string pred_model, pred_input, pred_data;
    std::optional<std::size_t> pred_row;
    auto *pred_cmd = app.add_subcommand("predict", "Estimate walk parameters from a distribution");
    pred_cmd->add_option("--model-file", pred_model)->required();
    pred_cmd->add_option("--input", pred_input, "Distribution file");
    pred_cmd->add_option("--data", pred_data, "Dataset file used with --row");
    pred_cmd->add_option("--row", pred_row, "Dataset row index");

    ReproduceOptions ro;
    auto *repro_cmd = app.add_subcommand("reproduce", "Run an experiment end to end");
    repro_cmd->add_option("--experiment", ro.experiment, "table31 | table32 | table33 | mlp")->required();
    repro_cmd->add_option("--seed", ro.seed)->capture_default_str();
    repro_cmd->add_option("--out-dir", ro.out_dir)->capture_default_str();
    repro_cmd->add_option("--epochs", ro.epochs, "MLP epochs")->capture_default_str();
    repro_cmd->add_option("--batch-size", ro.batch_size, "MLP batch size")->capture_default_str();
    repro_cmd->add_option("--lr", ro.learning_rate, "MLP learning rate")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*walk_cmd) return cmd_walk(walk);
        if (*ds_cmd) return cmd_dataset(dsf);
        if (*train_cmd) return cmd_train(tf);
        if (*eval_cmd) return cmd_evaluate(eval_model, eval_data, eval_report);
        if (*pred_cmd) return cmd_predict(pred_model, pred_input, pred_data, pred_row);
        if (*repro_cmd) return cmd_reproduce(ro);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qwalk
