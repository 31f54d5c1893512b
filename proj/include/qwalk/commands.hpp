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

#ifndef QWALK_COMMANDS_HPP
#define QWALK_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/dataset.hpp"
#include "qwalk/model_io.hpp"
#include "qwalk/neural.hpp"

namespace qwalk {

/// Bad or conflicting command-line flags; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Entry point behind the `qwalk` binary. Returns the process exit code:
/// 0 success, 1 runtime or numerical failure, 2 usage error.
int run_cli(int argc, const char *const *argv);

/// Highest-probability local maxima of the nonzero entries (at most
/// `count`), returned in ascending position order.
std::vector<std::ptrdiff_t> top_peaks(const Distribution &dist, std::size_t count);

/// theta -> 2/pi, steps -> 1/steps_max of the generating grid.
TargetScaling default_target_scaling(const Dataset &ds);

/// Multipliers turning stored targets into reporting units. Only datasets
/// that also carry a step count report theta in degrees.
std::vector<double> display_factors(const std::vector<std::string> &target_names);

struct Evaluation {
    double mse = 0.0;
    std::string units;
    std::size_t test_rows = 0;
};

/// Rebuilds the model's test split from its recorded seed and ratio and
/// scores it.
Evaluation evaluate_model(const ModelArtifact &artifact, const Dataset &ds);

/// Maps a distribution onto the model's fixed feature window. Nonzero mass
/// outside the window is an error.
std::vector<double> features_for_model(const Provenance &provenance, const Distribution &dist);

struct ReproduceOptions {
    std::string experiment;  // table31 | table32 | table33 | mlp
    uint64_t seed = 42;
    std::string out_dir = ".";
    double split_ratio = 0.75;
    int epochs = 100;
    std::size_t batch_size = 64;
    double learning_rate = 0.002;
};

struct ModelMetric {
    std::string model;
    std::string label;
    double mse = 0.0;
    std::optional<double> predicted_theta_deg;
    std::optional<double> percent_error;
};

struct ReproReport {
    std::string experiment;
    uint64_t seed = 0;
    double split_ratio = 0.0;
    GridSpec grid;
    std::size_t rows = 0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    std::string mse_units;
    std::vector<ModelMetric> metrics;
    std::optional<double> reduction_percent;  // mlp vs baseline
    std::vector<std::string> artifacts;
    // Timings are printed, never written, so artifacts stay byte-identical.
    double generation_seconds = 0.0;
    double training_seconds = 0.0;
    double wall_seconds = 0.0;
};

ReproReport run_reproduce(const ReproduceOptions &options);

}  // namespace qwalk

#endif
