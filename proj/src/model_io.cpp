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

#include "qwalk/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qwalk/error.hpp"

namespace qwalk {

using nlohmann::ordered_json;

std::string model_type(const AnyModel &model) {
    struct Visitor {
        std::string operator()(const RidgeModel &) const {
            return "ridge";
        }
        std::string operator()(const LinearModel &) const {
            return "linear";
        }
        std::string operator()(const KnnModel &) const {
            return "knn";
        }
        std::string operator()(const BaselineModel &) const {
            return "baseline";
        }
        std::string operator()(const MlpRegressor &) const {
            return "mlp";
        }
    };
    return std::visit(Visitor{}, model);
}

std::vector<double> predict_any(const AnyModel &model, std::span<const double> features) {
    return std::visit(
        [&](const auto &m) -> std::vector<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, MlpRegressor>) {
                return predict_params(m.net, features, m.scaling);
            } else {
                return predict(m, features);
            }
        },
        model);
}

namespace {

// Matrices are written row-major as a flat array plus their shape.
ordered_json matrix_json(const DenseMatrix &m) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            flat.push_back(m(i, j));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", flat}};
}

DenseMatrix matrix_from_json(const ordered_json &j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto flat = j.at("data").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != flat.size()) {
        throw ParseError(0, "matrix data does not match its shape");
    }
    DenseMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; i++) {
        for (Eigen::Index j2 = 0; j2 < cols; j2++) {
            m(i, j2) = flat[static_cast<std::size_t>(i * cols + j2)];
        }
    }
    return m;
}

ordered_json vector_json(const DenseVector &v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

DenseVector vector_from_json(const ordered_json &j) {
    auto values = j.get<std::vector<double>>();
    return Eigen::Map<const DenseVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_affine(ordered_json &out, const LinearModel &m) {
    out["weights"] = matrix_json(m.weights);
    out["bias"] = vector_json(m.bias);
    out["feature_means"] = vector_json(m.feature_means);
    out["target_means"] = vector_json(m.target_means);
}

void read_affine(const ordered_json &in, LinearModel &m) {
    m.weights = matrix_from_json(in.at("weights"));
    m.bias = vector_from_json(in.at("bias"));
    m.feature_means = vector_from_json(in.at("feature_means"));
    m.target_means = vector_from_json(in.at("target_means"));
    if (m.bias.size() != m.weights.cols() || m.feature_means.size() != m.weights.rows()) {
        throw ParseError(0, "linear model arrays have inconsistent shapes");
    }
}

ordered_json model_body(const AnyModel &model) {
    ordered_json j;
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearModel>) {
                j["hyperparameters"] = {{"rcond", kDefaultRcond}};
                write_affine(j, m);
            } else if constexpr (std::is_same_v<T, RidgeModel>) {
                j["hyperparameters"] = {{"alpha", m.alpha}};
                write_affine(j, m);
            } else if constexpr (std::is_same_v<T, KnnModel>) {
                j["hyperparameters"] = {{"k", m.k}, {"metric", "euclidean"}};
                j["feature_len"] = m.feature_len;
                j["target_len"] = m.target_len;
                j["stored_features"] = m.features;
                j["stored_targets"] = m.targets;
            } else if constexpr (std::is_same_v<T, BaselineModel>) {
                j["hyperparameters"] = ordered_json::object();
                j["constant_prediction"] = m.constant;
            } else {
                j["hyperparameters"] = ordered_json::object();
                j["layer_sizes"] = m.net.layer_sizes;
                ordered_json layers = ordered_json::array();
                for (std::size_t l = 0; l < m.net.layers.size(); l++) {
                    const bool last = l + 1 == m.net.layers.size();
                    layers.push_back({{"activation", last ? "exp" : "relu"},
                                      {"weights", matrix_json(m.net.layers[l].weights)},
                                      {"bias", vector_json(m.net.layers[l].bias)}});
                }
                j["layers"] = layers;
                j["target_scaling"] = {{"scale", m.scaling.scale}, {"shift", m.scaling.shift}};
            }
        },
        model);
    return j;
}

AnyModel model_from_body(const std::string &type, const ordered_json &j) {
    if (type == "linear") {
        LinearModel m;
        read_affine(j, m);
        return m;
    }
    if (type == "ridge") {
        RidgeModel m;
        read_affine(j, m);
        m.alpha = j.at("hyperparameters").at("alpha").get<double>();
        return m;
    }
    if (type == "knn") {
        KnnModel m;
        m.k = j.at("hyperparameters").at("k").get<int>();
        m.feature_len = j.at("feature_len").get<std::size_t>();
        m.target_len = j.at("target_len").get<std::size_t>();
        m.features = j.at("stored_features").get<std::vector<double>>();
        m.targets = j.at("stored_targets").get<std::vector<double>>();
        if (m.feature_len == 0 || m.features.size() % m.feature_len != 0 ||
            m.targets.size() != m.rows() * m.target_len || m.k < 1 || static_cast<std::size_t>(m.k) > m.rows()) {
            throw ParseError(0, "k-NN model arrays have inconsistent shapes");
        }
        return m;
    }
    if (type == "baseline") {
        return BaselineModel{j.at("constant_prediction").get<std::vector<double>>()};
    }
    if (type == "mlp") {
        MlpRegressor m;
        m.net.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
        for (const auto &layer : j.at("layers")) {
            m.net.layers.push_back(DenseLayer{matrix_from_json(layer.at("weights")), vector_from_json(layer.at("bias"))});
        }
        if (m.net.layer_sizes.size() != m.net.layers.size() + 1) {
            throw ParseError(0, "MLP layer count does not match layer_sizes");
        }
        for (std::size_t l = 0; l < m.net.layers.size(); l++) {
            if (m.net.layers[l].weights.rows() != m.net.layer_sizes[l] ||
                m.net.layers[l].weights.cols() != m.net.layer_sizes[l + 1] ||
                m.net.layers[l].bias.size() != m.net.layer_sizes[l + 1]) {
                throw ParseError(0, "MLP layer " + std::to_string(l) + " has the wrong shape");
            }
        }
        const auto &s = j.at("target_scaling");
        m.scaling.scale = s.at("scale").get<std::vector<double>>();
        m.scaling.shift = s.at("shift").get<std::vector<double>>();
        return m;
    }
    throw ParseError(0, "unknown model_type '" + type + "'");
}

}  // namespace

std::string model_to_json(const ModelArtifact &artifact) {
    ordered_json j;
    j["model_type"] = model_type(artifact.model);
    const ordered_json body = model_body(artifact.model);
    for (const auto &[key, value] : body.items()) {
        j[key] = value;
    }
    const Provenance &p = artifact.provenance;
    j["provenance"] = {{"dataset_kind", p.dataset_kind},     {"split_seed", p.split_seed},
                       {"split_ratio", p.split_ratio},       {"feature_len", p.feature_len},
                       {"position_offset", p.position_offset}, {"target_names", p.target_names},
                       {"train_rows", p.train_rows}};
    return j.dump() + "\n";
}

ModelArtifact model_from_json(const std::string &text) {
    try {
        auto j = ordered_json::parse(text);
        ModelArtifact a{model_from_body(j.at("model_type").get<std::string>(), j), {}};
        const auto &p = j.at("provenance");
        a.provenance.dataset_kind = p.at("dataset_kind").get<std::string>();
        a.provenance.split_seed = p.at("split_seed").get<uint64_t>();
        a.provenance.split_ratio = p.at("split_ratio").get<double>();
        a.provenance.feature_len = p.at("feature_len").get<std::size_t>();
        a.provenance.position_offset = p.at("position_offset").get<std::ptrdiff_t>();
        a.provenance.target_names = p.at("target_names").get<std::vector<std::string>>();
        a.provenance.train_rows = p.at("train_rows").get<std::size_t>();
        return a;
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(0, std::string("malformed model file: ") + e.what());
    }
}

void save_model(const ModelArtifact &artifact, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << model_to_json(artifact);
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

ModelArtifact load_model(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace qwalk
