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

#ifndef QWALK_DATASET_HPP
#define QWALK_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qwalk/walk.hpp"

namespace qwalk {

enum class GridKind { single_theta, theta_steps, ssqw_theta1 };

std::string grid_kind_name(GridKind kind);
GridKind parse_grid_kind(const std::string &name);

/// Parameter sweep behind a generated dataset.
///
/// The theta grid is theta_start + k*theta_step for k = 0, 1, ... while the
/// value stays <= theta_stop + 1e-12. `steps` is the fixed walk length for
/// single_theta and ssqw_theta1; theta_steps sweeps steps_min..steps_max.
struct GridSpec {
    GridKind kind = GridKind::single_theta;
    double theta_start = 0.0;
    double theta_stop = 0.0;
    double theta_step = 1.0;
    int steps = 0;
    int steps_min = 1;
    int steps_max = 1;
    double theta2 = 0.0;
    SpinState initial = symmetric_plain_state();

    /// theta in [1, 89] degrees at 0.1 degree, N = 500.
    static GridSpec reference_single_theta();
    /// theta in [1, 90] degrees at 1 degree, N in [1, 499].
    static GridSpec reference_theta_steps();
    /// theta1 in [0.1, 90] degrees at 0.04 degree, theta2 = 45 degrees, N = 100.
    static GridSpec reference_ssqw();

    bool operator==(const GridSpec &other) const = default;
};

/// Throws InvalidParameter("invalid grid: ...") for empty or malformed grids.
void validate_grid(const GridSpec &grid);
std::vector<double> theta_values(const GridSpec &grid);

extern const char *const kGeneratorVersion;

/// Rows of (features, targets) stored row-major in two flat buffers.
struct Dataset {
    GridSpec grid;
    std::size_t feature_len = 0;
    std::ptrdiff_t position_offset = 0;
    std::vector<std::string> target_names;
    std::vector<double> features;
    std::vector<double> targets;
    std::string generator = kGeneratorVersion;

    std::size_t rows() const {
        return feature_len == 0 ? 0 : features.size() / feature_len;
    }
    std::size_t target_len() const {
        return target_names.size();
    }
    std::span<const double> feature_row(std::size_t i) const {
        return {features.data() + i * feature_len, feature_len};
    }
    std::span<const double> target_row(std::size_t i) const {
        return {targets.data() + i * target_len(), target_len()};
    }

    void append_row(std::span<const double> feats, std::span<const double> targs);
    /// New dataset with the given rows, in the given order.
    Dataset select(std::span<const std::size_t> indices) const;

    bool operator==(const Dataset &other) const = default;
};

/// Worker count for generation: QWALK_THREADS if set to a positive integer,
/// otherwise the hardware concurrency.
std::size_t generation_threads();

/// One row per theta: the N-step standard walk, features of length 2N+1.
Dataset gen_single_theta(const GridSpec &grid, std::size_t threads = 0);
/// One row per (theta, N), theta outer and N inner, each distribution
/// zero-padded to 2*steps_max+1 sites around offset steps_max.
Dataset gen_theta_steps(const GridSpec &grid, std::size_t threads = 0);
/// One row per theta1 of the split-step walk with fixed theta2.
Dataset gen_ssqw_sweep(const GridSpec &grid, std::size_t threads = 0);
/// Dispatches on grid.kind.
Dataset generate(const GridSpec &grid, std::size_t threads = 0);

struct SplitSpec {
    double ratio = 0.75;
    uint64_t seed = 42;
};

/// Shuffled row order; the first train_size(...) entries are the train rows.
std::vector<std::size_t> split_order(std::size_t rows, const SplitSpec &spec);
std::size_t train_size(std::size_t rows, double ratio);
std::pair<Dataset, Dataset> split(const Dataset &ds, const SplitSpec &spec);

/// Grid echo used in dataset headers and reports.
nlohmann::ordered_json grid_to_json(const GridSpec &grid);
GridSpec grid_from_json(GridKind kind, const nlohmann::ordered_json &j);

void save_dataset(const Dataset &ds, const std::string &path);
Dataset load_dataset(const std::string &path);

}  // namespace qwalk

#endif
