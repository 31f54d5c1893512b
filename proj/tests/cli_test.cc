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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qwalk/estimators.hpp"
#include "qwalk/text_format.hpp"

using namespace qwalk;

namespace {

struct RunResult {
    int status;
    std::string out;
};

// Runs the installed binary through the shell; stderr is discarded.
RunResult run(const std::string &args) {
    std::string cmd = std::string(QWALK_BINARY) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path work_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qwalk_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string in_work(const std::string &name) {
    return (work_dir() / name).string();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char *kSmallGrid = "--mode theta-steps --theta-start 10 --theta-stop 80 --theta-step 10 --degrees "
                         "--steps-min 1 --steps-max 12";

}  // namespace

TEST(cli, usage_errors_exit_2) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("walk --theta 0.5").status, 2);
    EXPECT_EQ(run("walk --steps 3").status, 2);
    EXPECT_EQ(run("walk --steps 3 --theta 0.5 --split-step --theta1 0.1 --theta2 0.2").status, 2);
    EXPECT_EQ(run("walk --steps 3 --theta1 0.1").status, 2);
    EXPECT_EQ(run("walk --steps -1 --theta 0.5").status, 2);
    EXPECT_EQ(run("walk --steps 3 --theta 0.5 --initial custom --alpha 1,0").status, 2);
    EXPECT_EQ(run("walk --steps 3 --theta 0.5 --initial custom --alpha 1,0 --beta 1,0").status, 2);
    EXPECT_EQ(run("dataset --mode sideways --out " + in_work("x.csv")).status, 2);
    EXPECT_EQ(run("reproduce --experiment table99").status, 2);
}

TEST(cli, runtime_errors_exit_1) {
    EXPECT_EQ(run("evaluate --model-file /nonexistent/m.json --data /nonexistent/d.csv").status, 1);
    std::ofstream(in_work("garbage.csv")) << "not a header\n";
    EXPECT_EQ(run("train --model linear --data " + in_work("garbage.csv") + " --out " + in_work("g.json")).status,
              1);
}

TEST(cli, walk_to_stdout) {
    RunResult r = run("walk --theta 0 --steps 0 --initial custom --alpha 1,0 --beta 0,0");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "0\t1\n");
    RunResult w = run("walk --theta 45 --degrees --steps 2 --initial custom --alpha 1,0 --beta 0,0");
    EXPECT_EQ(w.status, 0);
    Distribution d = parse_distribution_text(w.out);
    EXPECT_NEAR(d.at(-2), 0.25, 1e-15);
    EXPECT_NEAR(d.at(0), 0.5, 1e-15);
}

TEST(cli, degrees_only_rescale_given_angles) {
    RunResult deg = run("walk --theta 45 --degrees --steps 40");
    RunResult rad = run("walk --theta 0.78539816339744828 --steps 40");
    ASSERT_EQ(deg.status, 0);
    EXPECT_EQ(deg.out, rad.out);
    Distribution d = simulate(WalkSpec::standard(CoinSpec::one_parameter(std::numbers::pi / 4), 40),
                              symmetric_i_state());
    EXPECT_EQ(parse_distribution_text(rad.out), d);
    RunResult phased = run("walk --theta 45 --zeta 0 --degrees --steps 40");
    EXPECT_EQ(parse_distribution_text(phased.out),
              simulate(WalkSpec::standard(CoinSpec{std::numbers::pi / 4, 0.0, 0.0}, 40), symmetric_i_state()));
}

TEST(cli, walk_to_file_prints_summary) {
    RunResult r = run("walk --theta 0.7853981633974483 --steps 100 --out " + in_work("walk.tsv"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("total_probability"), std::string::npos);
    EXPECT_NE(r.out.find("peaks"), std::string::npos);
    Distribution d = parse_distribution_text(read_file(in_work("walk.tsv")));
    EXPECT_NEAR(d.total(), 1.0, 1e-10);
    EXPECT_EQ(d.min_position(), -100);
}

TEST(cli, dataset_train_evaluate_predict) {
    const std::string data = in_work("small.csv");
    RunResult g = run(std::string("dataset ") + kSmallGrid + " --out " + data);
    ASSERT_EQ(g.status, 0);
    EXPECT_EQ(g.out, "96 rows, feature_len 25\n");
    Dataset ds = load_dataset(data);
    ASSERT_EQ(ds.rows(), 96u);

    for (std::string model : {"linear", "ridge", "knn", "baseline"}) {
        const std::string mfile = in_work(model + ".json");
        RunResult t = run("train --model " + model + " --data " + data + " --out " + mfile);
        ASSERT_EQ(t.status, 0) << model;
        EXPECT_NE(t.out.find("on 72 of 96"), std::string::npos) << t.out;
        RunResult e = run("evaluate --model-file " + mfile + " --data " + data + " --report " +
                          in_work(model + "_eval.json"));
        ASSERT_EQ(e.status, 0) << model;
        EXPECT_NE(e.out.find("test_rows 24"), std::string::npos) << e.out;
        EXPECT_NE(e.out.find("degree^2 + step^2"), std::string::npos) << e.out;
        // Same number through the library entry point.
        Evaluation ev = evaluate_model(load_model(mfile), ds);
        EXPECT_NE(e.out.find("mse " + format_double(ev.mse)), std::string::npos);
    }

    // k-NN with k=1 returns a training row's own targets.
    const std::string knn1 = in_work("knn1.json");
    ASSERT_EQ(run("train --model knn --k 1 --data " + data + " --out " + knn1).status, 0);
    auto [train, test] = split(ds, SplitSpec{});
    (void)test;
    RunResult p = run("predict --model-file " + knn1 + " --data " + data + " --row 0");
    ASSERT_EQ(p.status, 0);
    // Row 0 might be in either part; compare with the stored nearest row instead.
    KnnModel m = std::get<KnnModel>(load_model(knn1).model);
    auto expected = predict(m, ds.feature_row(0));
    EXPECT_NE(p.out.find("theta_rad " + format_double(expected[0])), std::string::npos) << p.out;
    EXPECT_NE(p.out.find("steps "), std::string::npos);

    EXPECT_EQ(run("predict --model-file " + knn1).status, 2);
    EXPECT_EQ(run("predict --model-file " + knn1 + " --data " + data + " --row 96").status, 2);
    EXPECT_EQ(run("train --model ridge --alpha 0 --data " + data + " --out " + in_work("r0.json")).status, 2);
    EXPECT_EQ(run("train --model knn --k 500 --data " + data + " --out " + in_work("k500.json")).status, 1);
    EXPECT_EQ(run("train --model svm --data " + data + " --out " + in_work("s.json")).status, 2);
    EXPECT_EQ(run("train --model linear --split-ratio 1.5 --data " + data + " --out " + in_work("s.json")).status,
              2);
}

TEST(cli, predict_from_distribution_file) {
    const std::string data = in_work("sweep.csv");
    ASSERT_EQ(run("dataset --mode single-theta --theta-start 5 --theta-stop 85 --theta-step 1 --degrees --steps 40 "
                  "--out " + data)
                  .status,
              0);
    const std::string mfile = in_work("sweep_linear.json");
    ASSERT_EQ(run("train --model linear --data " + data + " --out " + mfile).status, 0);
    const std::string dist = in_work("probe.tsv");
    ASSERT_EQ(run("walk --theta 30.5 --degrees --steps 40 --initial symmetric-plain --out " + dist).status, 0);
    RunResult p = run("predict --model-file " + mfile + " --input " + dist);
    ASSERT_EQ(p.status, 0);
    auto at = p.out.find("theta_deg ");
    ASSERT_NE(at, std::string::npos);
    EXPECT_NEAR(std::stod(p.out.substr(at + 10)), 30.5, 0.5);
    // A wider walk than the model was trained on is rejected.
    const std::string wide = in_work("wide.tsv");
    ASSERT_EQ(run("walk --theta 30 --degrees --steps 60 --out " + wide).status, 0);
    EXPECT_EQ(run("predict --model-file " + mfile + " --input " + wide).status, 1);
}

TEST(cli, reproduce_is_byte_deterministic) {
    const std::string a = in_work("repro_a");
    const std::string b = in_work("repro_b");
    ASSERT_EQ(run("reproduce --experiment table33 --out-dir " + a).status, 0);
    ASSERT_EQ(run("reproduce --experiment table33 --out-dir " + b).status, 0);
    for (const char *name : {"table33_dataset.csv", "table33_knn_model.json", "table33_linear_model.json",
                             "table33_report.json", "table33_report.txt"}) {
        std::string fa = read_file(a + "/" + name);
        EXPECT_FALSE(fa.empty()) << name;
        EXPECT_EQ(fa, read_file(b + "/" + name)) << name;
    }
}

TEST(top_peaks, two_symmetric_peaks) {
    Distribution d = simulate(WalkSpec::standard(CoinSpec::one_parameter(std::numbers::pi / 4), 200),
                              symmetric_plain_state());
    auto peaks = top_peaks(d, 2);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_EQ(peaks[0], -peaks[1]);
    EXPECT_NEAR(static_cast<double>(peaks[1]), 200 / std::sqrt(2.0), 5.0);
}

TEST(display_factors, units) {
    auto deg = display_factors({"theta", "steps"});
    EXPECT_NEAR(deg[0], 180 / std::numbers::pi, 1e-12);
    EXPECT_EQ(deg[1], 1.0);
    EXPECT_EQ(display_factors({"theta"}), std::vector<double>{1.0});
}
