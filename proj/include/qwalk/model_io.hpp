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

#ifndef QWALK_MODEL_IO_HPP
#define QWALK_MODEL_IO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/estimators.hpp"
#include "qwalk/neural.hpp"

namespace qwalk {

/// A trained network together with the scaling its outputs are undone by.
struct MlpRegressor {
    MlpModel net;
    TargetScaling scaling;
};

using AnyModel = std::variant<LinearModel, RidgeModel, KnnModel, BaselineModel, MlpRegressor>;

/// "linear", "ridge", "knn", "baseline" or "mlp".
std::string model_type(const AnyModel &model);
std::vector<double> predict_any(const AnyModel &model, std::span<const double> features);

/// Where a fitted model came from; enough to rebuild its test split.
struct Provenance {
    std::string dataset_kind;
    uint64_t split_seed = 0;
    double split_ratio = 0.0;
    std::size_t feature_len = 0;
    std::ptrdiff_t position_offset = 0;
    std::vector<std::string> target_names;
    std::size_t train_rows = 0;
};

struct ModelArtifact {
    AnyModel model;
    Provenance provenance;
};

std::string model_to_json(const ModelArtifact &artifact);
ModelArtifact model_from_json(const std::string &text);
void save_model(const ModelArtifact &artifact, const std::string &path);
ModelArtifact load_model(const std::string &path);

}  // namespace qwalk

#endif
