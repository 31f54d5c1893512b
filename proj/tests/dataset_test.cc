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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/splitmix.hpp"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("qwalk_dataset_test_" + name)).string();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

GridSpec small_single(int steps = 20) {
    GridSpec g;
    g.kind = GridKind::single_theta;
    g.theta_start = kPi / 180;
    g.theta_stop = 10 * kPi / 180;
    g.theta_step = kPi / 180;
    g.steps = steps;
    return g;
}

GridSpec small_theta_steps() {
    GridSpec g;
    g.kind = GridKind::theta_steps;
    g.theta_start = kPi / 6;
    g.theta_stop = kPi / 4 + 1e-9;
    g.theta_step = kPi / 12;
    g.steps_min = 1;
    g.steps_max = 6;
    return g;
}

Dataset synthetic(std::size_t rows) {
    Dataset ds;
    ds.feature_len = 1;
    ds.target_names = {"theta"};
    for (std::size_t i = 0; i < rows; i++) {
        const double v = static_cast<double>(i);
        ds.append_row(std::span<const double>(&v, 1), std::span<const double>(&v, 1));
    }
    return ds;
}

}  // namespace

TEST(grid, full_sweep_counts) {
    EXPECT_EQ(theta_values(GridSpec::reference_single_theta()).size(), 881u);
    EXPECT_EQ(theta_values(GridSpec::reference_theta_steps()).size(), 90u);
    EXPECT_EQ(theta_values(GridSpec::reference_ssqw()).size(), 2248u);
}

TEST(grid, values_stay_on_the_lattice) {
    for (const GridSpec &g : {GridSpec::reference_single_theta(), GridSpec::reference_ssqw()}) {
        auto vals = theta_values(g);
        for (std::size_t k = 0; k < vals.size(); k++) {
            long double exact = static_cast<long double>(g.theta_start) + k * static_cast<long double>(g.theta_step);
            ASSERT_LE(std::abs(static_cast<long double>(vals[k]) - exact), 1e-15L) << k;
        }
        EXPECT_LE(vals.back(), g.theta_stop + 1e-12);
    }
}

TEST(grid, degenerate_grid_has_one_row) {
    GridSpec g = small_single(4);
    g.theta_start = g.theta_stop = kPi / 4;
    Dataset ds = generate(g, 1);
    ASSERT_EQ(ds.rows(), 1u);
    EXPECT_EQ(ds.target_row(0)[0], kPi / 4);
}

TEST(grid, invalid_grids_are_rejected) {
    GridSpec g = small_single();
    g.theta_step = 0.0;
    EXPECT_THROW(validate_grid(g), InvalidParameter);
    g = small_single();
    g.theta_stop = g.theta_start - 0.1;
    EXPECT_THROW(generate(g, 1), InvalidParameter);
    g = small_single();
    g.steps = -1;
    EXPECT_THROW(generate(g, 1), InvalidParameter);
    g = small_theta_steps();
    g.steps_min = 7;
    EXPECT_THROW(generate(g, 1), InvalidParameter);
    EXPECT_THROW(parse_grid_kind("bogus"), InvalidParameter);
}

TEST(gen_single_theta, rows_match_direct_simulation) {
    GridSpec g = small_single();
    Dataset ds = gen_single_theta(g, 1);
    auto thetas = theta_values(g);
    ASSERT_EQ(ds.rows(), thetas.size());
    EXPECT_EQ(ds.feature_len, 41u);
    EXPECT_EQ(ds.position_offset, 20);
    EXPECT_EQ(ds.target_names, std::vector<std::string>{"theta"});
    for (std::size_t i = 0; i < ds.rows(); i++) {
        Distribution d = simulate(WalkSpec::standard(CoinSpec::one_parameter(thetas[i]), 20), g.initial);
        EXPECT_EQ(std::vector<double>(ds.feature_row(i).begin(), ds.feature_row(i).end()), d.probs);
        EXPECT_EQ(ds.target_row(i)[0], thetas[i]);
    }
}

TEST(gen_single_theta, parallel_matches_serial) {
    GridSpec g = small_single(30);
    EXPECT_EQ(gen_single_theta(g, 1), gen_single_theta(g, 3));
}

TEST(gen_ssqw_sweep, rows_match_direct_simulation) {
    GridSpec g = GridSpec::reference_ssqw();
    g.theta_stop = g.theta_start + 4.5 * g.theta_step;
    g.steps = 12;
    Dataset ds = gen_ssqw_sweep(g, 2);
    auto thetas = theta_values(g);
    ASSERT_EQ(ds.rows(), 5u);
    EXPECT_EQ(ds.target_names, std::vector<std::string>{"theta1"});
    for (std::size_t i = 0; i < ds.rows(); i++) {
        Distribution d = simulate(WalkSpec::split_step(CoinSpec::one_parameter(thetas[i]),
                                                       CoinSpec::one_parameter(kPi / 4), 12),
                                  g.initial);
        EXPECT_EQ(std::vector<double>(ds.feature_row(i).begin(), ds.feature_row(i).end()), d.probs);
    }
}

TEST(gen_theta_steps, layout_and_padding) {
    GridSpec g = small_theta_steps();
    Dataset ds = gen_theta_steps(g, 1);
    ASSERT_EQ(ds.rows(), 2u * 6u);
    EXPECT_EQ(ds.feature_len, 13u);
    EXPECT_EQ(ds.position_offset, 6);
    EXPECT_EQ(ds.target_names, (std::vector<std::string>{"theta", "steps"}));
    // theta-major, steps ascending
    EXPECT_EQ(ds.target_row(0)[1], 1.0);
    EXPECT_EQ(ds.target_row(5)[1], 6.0);
    EXPECT_EQ(ds.target_row(6)[0], ds.target_row(11)[0]);
    for (std::size_t i = 0; i < ds.rows(); i++) {
        auto row = ds.feature_row(i);
        std::size_t nonzero = static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](double p) {
            return p != 0.0;
        }));
        const int n = static_cast<int>(ds.target_row(i)[1]);
        if (n == 1) {
            EXPECT_EQ(nonzero, 2u);
        }
        // Nothing outside [-n, n].
        for (std::size_t c = 0; c < row.size(); c++) {
            const auto x = static_cast<std::ptrdiff_t>(c) - 6;
            if (std::abs(x) > n) {
                EXPECT_EQ(row[c], 0.0);
            }
        }
    }
}

TEST(gen_theta_steps, quarter_pi_two_steps_row) {
    GridSpec g = small_theta_steps();
    g.theta_start = g.theta_stop = kPi / 4;
    Dataset ds = gen_theta_steps(g, 1);
    auto row = ds.feature_row(1);
    ASSERT_EQ(ds.target_row(1)[1], 2.0);
    std::vector<double> expected(13, 0.0);
    expected[6 - 2] = 0.25;
    expected[6] = 0.5;
    expected[6 + 2] = 0.25;
    for (std::size_t c = 0; c < 13; c++) {
        EXPECT_NEAR(row[c], expected[c], 1e-15) << c;
    }
}

TEST(gen_theta_steps, parallel_matches_serial) {
    GridSpec g = small_theta_steps();
    EXPECT_EQ(gen_theta_steps(g, 1), gen_theta_steps(g, 4));
}

TEST(splitmix, reference_vectors) {
    SplitMix64 a(0);
    for (uint64_t v : oracle::kSplitMixSeed0) {
        EXPECT_EQ(a.next(), v);
    }
    SplitMix64 b(42);
    for (uint64_t v : oracle::kSplitMixSeed42) {
        EXPECT_EQ(b.next(), v);
    }
}

TEST(splitmix, shuffle_reference_vectors) {
    EXPECT_EQ(shuffled_indices(10, 42), (std::vector<std::size_t>{0, 9, 5, 8, 6, 4, 7, 2, 1, 3}));
    EXPECT_EQ(shuffled_indices(10, 0), (std::vector<std::size_t>{6, 3, 2, 9, 8, 1, 4, 7, 0, 5}));
    EXPECT_EQ(shuffled_indices(4, 7), (std::vector<std::size_t>{1, 2, 0, 3}));
}

TEST(splitmix, uniform_below_stays_in_range) {
    SplitMix64 rng(5);
    for (uint64_t bound : {1ULL, 2ULL, 3ULL, 1000ULL, (1ULL << 63) + 1}) {
        for (int i = 0; i < 100; i++) {
            EXPECT_LT(rng.uniform_below(bound), bound);
        }
    }
}

TEST(split, sizes) {
    EXPECT_EQ(train_size(44910, 0.75), 33682u);
    EXPECT_EQ(train_size(4, 0.75), 3u);
    auto [train, test] = split(synthetic(44910), SplitSpec{});
    EXPECT_EQ(train.rows(), 33682u);
    EXPECT_EQ(test.rows(), 11228u);
    auto [tr4, te4] = split(synthetic(4), SplitSpec{});
    EXPECT_EQ(tr4.rows(), 3u);
    EXPECT_EQ(te4.rows(), 1u);
}

TEST(split, invalid_ratio) {
    EXPECT_THROW(split(synthetic(10), SplitSpec{0.0, 1}), InvalidParameter);
    EXPECT_THROW(split(synthetic(10), SplitSpec{1.0, 1}), InvalidParameter);
}

TEST(split, partition_and_determinism) {
    for (uint64_t seed : {0ULL, 1ULL, 42ULL, 123456789ULL}) {
        for (std::size_t n : {2u, 7u, 100u, 881u}) {
            Dataset ds = synthetic(n);
            auto [train, test] = split(ds, SplitSpec{0.75, seed});
            auto [train2, test2] = split(ds, SplitSpec{0.75, seed});
            EXPECT_EQ(train, train2);
            EXPECT_EQ(test, test2);
            std::vector<double> all(train.targets);
            all.insert(all.end(), test.targets.begin(), test.targets.end());
            std::sort(all.begin(), all.end());
            ASSERT_EQ(all.size(), n);
            for (std::size_t i = 0; i < n; i++) {
                EXPECT_EQ(all[i], static_cast<double>(i));
            }
        }
    }
}

TEST(split, order_follows_shuffle) {
    auto order = split_order(10, SplitSpec{0.75, 42});
    EXPECT_EQ(order, shuffled_indices(10, 42));
    auto [train, test] = split(synthetic(10), SplitSpec{0.75, 42});
    EXPECT_EQ(train.targets, (std::vector<double>{0, 9, 5, 8, 6, 4, 7}));
    EXPECT_EQ(test.targets, (std::vector<double>{2, 1, 3}));
}

TEST(dataset_io, round_trip_is_bit_exact) {
    Dataset ds = gen_theta_steps(small_theta_steps(), 1);
    std::string p = temp_path("rt.csv");
    save_dataset(ds, p);
    Dataset back = load_dataset(p);
    EXPECT_EQ(back, ds);
    std::string q = temp_path("rt2.csv");
    save_dataset(back, q);
    EXPECT_EQ(read_file(p), read_file(q));
}

TEST(dataset_io, generation_is_byte_deterministic) {
    std::string p = temp_path("det1.csv");
    std::string q = temp_path("det2.csv");
    save_dataset(generate(small_single(), 1), p);
    save_dataset(generate(small_single(), 2), q);
    EXPECT_EQ(read_file(p), read_file(q));
}

TEST(dataset_io, header_records_provenance) {
    Dataset ds = gen_single_theta(small_single(4), 1);
    std::string p = temp_path("hdr.csv");
    save_dataset(ds, p);
    std::string text = read_file(p);
    auto header = nlohmann::json::parse(text.substr(0, text.find('\n')));
    EXPECT_EQ(header["kind"], "single_theta");
    EXPECT_EQ(header["feature_len"], 9);
    EXPECT_EQ(header["generator"], kGeneratorVersion);
    EXPECT_EQ(header["theta_unit"], "radian");
}

TEST(dataset_io, empty_dataset_round_trips) {
    Dataset ds = gen_single_theta(small_single(4), 1);
    ds.features.clear();
    ds.targets.clear();
    std::string p = temp_path("empty.csv");
    save_dataset(ds, p);
    Dataset back = load_dataset(p);
    EXPECT_EQ(back.rows(), 0u);
    EXPECT_EQ(back.feature_len, ds.feature_len);
}

TEST(dataset_io, wrong_value_count_names_the_line) {
    Dataset ds = gen_single_theta(small_single(1), 1);
    std::string p = temp_path("bad.csv");
    save_dataset(ds, p);
    std::string text = read_file(p);
    std::size_t header_end = text.find('\n');
    std::size_t row1_end = text.find('\n', header_end + 1);
    // feature_len 3 plus one target: keep the first row, then a short row.
    std::string broken = text.substr(0, row1_end + 1) + "0.25,0.75,0.5\n";
    write_file(p, broken);
    try {
        load_dataset(p);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(dataset_io, non_numeric_token_names_the_line) {
    Dataset ds = gen_single_theta(small_single(1), 1);
    std::string p = temp_path("nan.csv");
    save_dataset(ds, p);
    std::string text = read_file(p);
    std::size_t header_end = text.find('\n');
    write_file(p, text.substr(0, header_end + 1) + "0.5,abc,0.5,0.1\n");
    try {
        load_dataset(p);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2u);
    }
}

TEST(dataset_io, bad_header) {
    std::string p = temp_path("hdr_bad.csv");
    write_file(p, "not json\n1,2\n");
    EXPECT_THROW(load_dataset(p), ParseError);
    write_file(p, "{\"version\":1}\n");
    EXPECT_THROW(load_dataset(p), ParseError);
    EXPECT_ANY_THROW(load_dataset(temp_path("does_not_exist.csv")));
}
