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

#include "qwalk/dataset.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/splitmix.hpp"
#include "qwalk/text_format.hpp"

namespace qwalk {

const char *const kGeneratorVersion = "qwalk-dataset-1";

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEndpointTolerance = 1e-12;

}  // namespace

std::string grid_kind_name(GridKind kind) {
    switch (kind) {
        case GridKind::single_theta:
            return "single_theta";
        case GridKind::theta_steps:
            return "theta_steps";
        case GridKind::ssqw_theta1:
            return "ssqw_theta1";
    }
    return "unknown";
}

GridKind parse_grid_kind(const std::string &name) {
    if (name == "single_theta") {
        return GridKind::single_theta;
    }
    if (name == "theta_steps") {
        return GridKind::theta_steps;
    }
    if (name == "ssqw_theta1") {
        return GridKind::ssqw_theta1;
    }
    throw InvalidParameter("unknown dataset kind '" + name + "'");
}

GridSpec GridSpec::reference_single_theta() {
    GridSpec g;
    g.kind = GridKind::single_theta;
    g.theta_start = kPi / 180;
    g.theta_stop = 89 * kPi / 180;
    g.theta_step = kPi / 1800;
    g.steps = 500;
    g.initial = symmetric_plain_state();
    return g;
}

GridSpec GridSpec::reference_theta_steps() {
    GridSpec g;
    g.kind = GridKind::theta_steps;
    g.theta_start = kPi / 180;
    g.theta_stop = kPi / 2;
    g.theta_step = kPi / 180;
    g.steps_min = 1;
    g.steps_max = 499;
    g.initial = symmetric_plain_state();
    return g;
}

GridSpec GridSpec::reference_ssqw() {
    GridSpec g;
    g.kind = GridKind::ssqw_theta1;
    g.theta_start = kPi / 1800;
    g.theta_stop = kPi / 2;
    g.theta_step = 0.04 * kPi / 180;
    g.steps = 100;
    g.theta2 = kPi / 4;
    g.initial = symmetric_i_state();
    return g;
}

void validate_grid(const GridSpec &grid) {
    auto fail = [](const std::string &why) { throw InvalidParameter("invalid grid: " + why); };
    if (!std::isfinite(grid.theta_start) || !std::isfinite(grid.theta_stop) || !std::isfinite(grid.theta_step)) {
        fail("theta bounds must be finite");
    }
    if (!(grid.theta_step > 0)) {
        fail("theta_step must be positive");
    }
    if (grid.theta_start > grid.theta_stop) {
        fail("theta_start exceeds theta_stop");
    }
    if (grid.kind == GridKind::theta_steps) {
        if (grid.steps_min < 0 || grid.steps_max < grid.steps_min) {
            fail("steps range must satisfy 0 <= steps_min <= steps_max");
        }
    } else if (grid.steps < 0) {
        fail("steps must be nonnegative");
    }
    if (grid.kind == GridKind::ssqw_theta1 && !std::isfinite(grid.theta2)) {
        fail("theta2 must be finite");
    }
    check_normalized(grid.initial);
}

std::vector<double> theta_values(const GridSpec &grid) {
    validate_grid(grid);
    std::vector<double> out;
    for (std::size_t k = 0;; k++) {
        double theta = grid.theta_start + static_cast<double>(k) * grid.theta_step;
        if (theta > grid.theta_stop + kEndpointTolerance) {
            break;
        }
        out.push_back(theta);
    }
    return out;
}

void Dataset::append_row(std::span<const double> feats, std::span<const double> targs) {
    if (feats.size() != feature_len || targs.size() != target_len()) {
        throw ShapeError("row shape does not match dataset (" + std::to_string(feats.size()) + " features, " +
                         std::to_string(targs.size()) + " targets)");
    }
    features.insert(features.end(), feats.begin(), feats.end());
    targets.insert(targets.end(), targs.begin(), targs.end());
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
    Dataset out;
    out.grid = grid;
    out.feature_len = feature_len;
    out.position_offset = position_offset;
    out.target_names = target_names;
    out.generator = generator;
    out.features.reserve(indices.size() * feature_len);
    out.targets.reserve(indices.size() * target_len());
    for (std::size_t i : indices) {
        if (i >= rows()) {
            throw ShapeError("row index " + std::to_string(i) + " out of range");
        }
        out.append_row(feature_row(i), target_row(i));
    }
    return out;
}

std::size_t generation_threads() {
    if (const char *env = std::getenv("QWALK_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

// Runs task(i) for i in [0, count) on up to `threads` workers. Each task
// writes only its own output slots, so row order never depends on
// scheduling.
template <typename Task>
void parallel_for(std::size_t count, std::size_t threads, Task task) {
    if (threads == 0) {
        threads = generation_threads();
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            task(i);
        }
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t w = 0; w < threads; w++) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += threads) {
                    task(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

Dataset empty_dataset(const GridSpec &grid, std::size_t feature_len, std::ptrdiff_t offset,
                      std::vector<std::string> names) {
    Dataset ds;
    ds.grid = grid;
    ds.feature_len = feature_len;
    ds.position_offset = offset;
    ds.target_names = std::move(names);
    return ds;
}

Dataset gen_fixed_steps(const GridSpec &grid, std::size_t threads, const std::string &target) {
    auto thetas = theta_values(grid);
    const std::size_t len = 2 * static_cast<std::size_t>(grid.steps) + 1;
    Dataset ds = empty_dataset(grid, len, grid.steps, {target});
    ds.features.resize(thetas.size() * len);
    ds.targets = thetas;
    parallel_for(thetas.size(), threads, [&](std::size_t i) {
        WalkSpec spec = grid.kind == GridKind::ssqw_theta1
                            ? WalkSpec::split_step(CoinSpec::one_parameter(thetas[i]),
                                                   CoinSpec::one_parameter(grid.theta2), grid.steps)
                            : WalkSpec::standard(CoinSpec::one_parameter(thetas[i]), grid.steps);
        Distribution d = simulate(spec, grid.initial);
        std::copy(d.probs.begin(), d.probs.end(), ds.features.begin() + static_cast<std::ptrdiff_t>(i * len));
    });
    return ds;
}

}  // namespace

Dataset gen_single_theta(const GridSpec &grid, std::size_t threads) {
    if (grid.kind != GridKind::single_theta) {
        throw InvalidParameter("invalid grid: expected kind single_theta");
    }
    return gen_fixed_steps(grid, threads, "theta");
}

Dataset gen_ssqw_sweep(const GridSpec &grid, std::size_t threads) {
    if (grid.kind != GridKind::ssqw_theta1) {
        throw InvalidParameter("invalid grid: expected kind ssqw_theta1");
    }
    return gen_fixed_steps(grid, threads, "theta1");
}

Dataset gen_theta_steps(const GridSpec &grid, std::size_t threads) {
    if (grid.kind != GridKind::theta_steps) {
        throw InvalidParameter("invalid grid: expected kind theta_steps");
    }
    auto thetas = theta_values(grid);
    const std::size_t len = 2 * static_cast<std::size_t>(grid.steps_max) + 1;
    const std::size_t per_theta = static_cast<std::size_t>(grid.steps_max - grid.steps_min + 1);
    Dataset ds = empty_dataset(grid, len, grid.steps_max, {"theta", "steps"});
    ds.features.resize(thetas.size() * per_theta * len);
    ds.targets.resize(thetas.size() * per_theta * 2);
    parallel_for(thetas.size(), threads, [&](std::size_t ti) {
        WalkSpec spec = WalkSpec::standard(CoinSpec::one_parameter(thetas[ti]), grid.steps_max);
        WalkState initial = WalkState::localized(grid.initial, grid.steps_max);
        std::vector<Distribution> recorded;
        if (grid.steps_min == 0) {
            recorded.push_back(measure(initial));
        }
        auto after = evolve_recording(std::move(initial), spec, grid.steps_max);
        for (auto &d : after) {
            recorded.push_back(std::move(d));
        }
        const std::size_t first = grid.steps_min == 0 ? 0 : static_cast<std::size_t>(grid.steps_min - 1);
        for (std::size_t j = 0; j < per_theta; j++) {
            const std::size_t row = ti * per_theta + j;
            const auto &probs = recorded[first + j].probs;
            std::copy(probs.begin(), probs.end(), ds.features.begin() + static_cast<std::ptrdiff_t>(row * len));
            ds.targets[2 * row] = thetas[ti];
            ds.targets[2 * row + 1] = static_cast<double>(grid.steps_min + static_cast<int>(j));
        }
    });
    return ds;
}

Dataset generate(const GridSpec &grid, std::size_t threads) {
    switch (grid.kind) {
        case GridKind::single_theta:
            return gen_single_theta(grid, threads);
        case GridKind::theta_steps:
            return gen_theta_steps(grid, threads);
        case GridKind::ssqw_theta1:
            return gen_ssqw_sweep(grid, threads);
    }
    throw InvalidParameter("invalid grid: unknown kind");
}

std::size_t train_size(std::size_t rows, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw InvalidParameter("split ratio must lie in (0, 1), got " + format_double(ratio));
    }
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(rows)));
}

std::vector<std::size_t> split_order(std::size_t rows, const SplitSpec &spec) {
    train_size(rows, spec.ratio);
    return shuffled_indices(rows, spec.seed);
}

std::pair<Dataset, Dataset> split(const Dataset &ds, const SplitSpec &spec) {
    auto order = split_order(ds.rows(), spec);
    const std::size_t n_train = train_size(ds.rows(), spec.ratio);
    std::span<const std::size_t> all(order);
    return {ds.select(all.first(n_train)), ds.select(all.subspan(n_train))};
}

// ---------------------------------------------------------------------------
// File format: a JSON header line, then one comma-separated row per line.

namespace {

using nlohmann::ordered_json;

ordered_json complex_json(Complex c) {
    return ordered_json::array({c.real(), c.imag()});
}

Complex complex_from_json(const ordered_json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(1, "complex amplitude must be a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ordered_json grid_to_json(const GridSpec &g) {
    ordered_json j;
    j["theta_start"] = g.theta_start;
    j["theta_stop"] = g.theta_stop;
    j["theta_step"] = g.theta_step;
    if (g.kind == GridKind::theta_steps) {
        j["steps_min"] = g.steps_min;
        j["steps_max"] = g.steps_max;
    } else {
        j["steps"] = g.steps;
    }
    if (g.kind == GridKind::ssqw_theta1) {
        j["theta2"] = g.theta2;
    }
    j["initial_state"] = {{"up", complex_json(g.initial.up)}, {"down", complex_json(g.initial.down)}};
    return j;
}

GridSpec grid_from_json(GridKind kind, const ordered_json &j) {
    GridSpec g;
    g.kind = kind;
    g.theta_start = j.at("theta_start").get<double>();
    g.theta_stop = j.at("theta_stop").get<double>();
    g.theta_step = j.at("theta_step").get<double>();
    if (kind == GridKind::theta_steps) {
        g.steps_min = j.at("steps_min").get<int>();
        g.steps_max = j.at("steps_max").get<int>();
    } else {
        g.steps = j.at("steps").get<int>();
    }
    if (kind == GridKind::ssqw_theta1) {
        g.theta2 = j.at("theta2").get<double>();
    }
    const auto &init = j.at("initial_state");
    g.initial = SpinState{complex_from_json(init.at("up")), complex_from_json(init.at("down"))};
    return g;
}

void save_dataset(const Dataset &ds, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    ordered_json header;
    header["version"] = 1;
    header["kind"] = grid_kind_name(ds.grid.kind);
    header["feature_len"] = ds.feature_len;
    header["position_offset"] = ds.position_offset;
    header["target_names"] = ds.target_names;
    header["theta_unit"] = "radian";
    header["grid"] = grid_to_json(ds.grid);
    header["generator"] = ds.generator;
    out << header.dump() << '\n';

    std::string line;
    for (std::size_t r = 0; r < ds.rows(); r++) {
        line.clear();
        bool first = true;
        for (double v : ds.feature_row(r)) {
            if (!first) {
                line += ',';
            }
            first = false;
            append_double(line, v);
        }
        for (double v : ds.target_row(r)) {
            line += ',';
            append_double(line, v);
        }
        line += '\n';
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

Dataset load_dataset(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(1, "missing header");
    }
    Dataset ds;
    try {
        auto header = ordered_json::parse(line);
        if (header.at("version").get<int>() != 1) {
            throw ParseError(1, "unsupported dataset version");
        }
        if (header.at("theta_unit").get<std::string>() != "radian") {
            throw ParseError(1, "theta_unit must be 'radian'");
        }
        GridKind kind = parse_grid_kind(header.at("kind").get<std::string>());
        ds.grid = grid_from_json(kind, header.at("grid"));
        ds.feature_len = header.at("feature_len").get<std::size_t>();
        ds.position_offset = header.at("position_offset").get<std::ptrdiff_t>();
        ds.target_names = header.at("target_names").get<std::vector<std::string>>();
        ds.generator = header.value("generator", std::string{});
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(1, std::string("malformed header: ") + e.what());
    }
    if (ds.feature_len == 0) {
        throw ParseError(1, "feature_len must be positive");
    }

    const std::size_t expected = ds.feature_len + ds.target_len();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        std::string_view rest(line);
        std::size_t count = 0;
        while (true) {
            auto comma = rest.find(',');
            std::string_view token = rest.substr(0, comma);
            double v = 0.0;
            if (!parse_double(token, v)) {
                throw ParseError(line_no, "non-numeric token '" + std::string(token) + "'");
            }
            if (count >= expected) {
                throw ParseError(line_no, "row has more than " + std::to_string(expected) + " values");
            }
            (count < ds.feature_len ? ds.features : ds.targets).push_back(v);
            count++;
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        if (count != expected) {
            throw ParseError(line_no, "row has " + std::to_string(count) + " values, expected " +
                                          std::to_string(expected));
        }
    }
    return ds;
}

}  // namespace qwalk
