#include "esn/io.hpp"

#include <fstream>
#include <stdexcept>

namespace esn {

Json matrix_to_json(const DenseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

DenseMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument("matrix_from_json: expected nested row arrays");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    std::vector<double> entries;
    entries.reserve(rows * cols);
    for (const Json& row : j) {
        if (row.size() != cols) throw std::invalid_argument("matrix_from_json: ragged rows");
        for (const Json& v : row) entries.push_back(v.get<double>());
    }
    return DenseMatrix(rows, cols, std::move(entries));
}

Json hyperparams_to_json(const HyperParams& hp) {
    return Json{{"n_reservoir", hp.n_reservoir},
                {"input_dim", hp.input_dim},
                {"connectivity", hp.connectivity},
                {"spectral_radius_target", hp.spectral_radius_target},
                {"input_scaling", hp.input_scaling},
                {"ridge_lambda", hp.ridge_lambda},
                {"seed", hp.seed},
                {"feedback_enabled", hp.feedback_enabled},
                {"washout_fraction", hp.washout_fraction},
                {"horizon", hp.horizon},
                {"squared_states", hp.squared_states}};
}

HyperParams hyperparams_from_json(const Json& j) {
    HyperParams hp;
    hp.n_reservoir = j.value("n_reservoir", hp.n_reservoir);
    hp.input_dim = j.value("input_dim", hp.input_dim);
    hp.connectivity = j.value("connectivity", hp.connectivity);
    hp.spectral_radius_target = j.value("spectral_radius_target", hp.spectral_radius_target);
    hp.input_scaling = j.value("input_scaling", hp.input_scaling);
    hp.ridge_lambda = j.value("ridge_lambda", hp.ridge_lambda);
    hp.seed = j.value("seed", hp.seed);
    hp.feedback_enabled = j.value("feedback_enabled", hp.feedback_enabled);
    hp.washout_fraction = j.value("washout_fraction", hp.washout_fraction);
    hp.horizon = j.value("horizon", hp.horizon);
    hp.squared_states = j.value("squared_states", hp.squared_states);
    hp.validate();
    return hp;
}

Json reservoir_to_json(const ReservoirWeights& rw, const HyperParams& hp) {
    Json j{{"hyperparams", hyperparams_to_json(hp)},
           {"w", matrix_to_json(rw.w)},
           {"w_in", matrix_to_json(rw.w_in)}};
    if (rw.w_back) j["w_back"] = matrix_to_json(*rw.w_back);
    return j;
}

std::pair<ReservoirWeights, HyperParams> reservoir_from_json(const Json& j) {
    ReservoirWeights rw;
    rw.w = matrix_from_json(j.at("w"));
    rw.w_in = matrix_from_json(j.at("w_in"));
    if (j.contains("w_back")) rw.w_back = matrix_from_json(j.at("w_back"));
    if (!rw.w.square() || rw.w.rows() != rw.w_in.rows())
        throw std::invalid_argument("reservoir_from_json: inconsistent matrix shapes");
    return {std::move(rw), hyperparams_from_json(j.at("hyperparams"))};
}

Json trained_to_json(const TrainedEsn& model) {
    Json j = reservoir_to_json(model.reservoir, model.hp);
    j["w_out"] = matrix_to_json(model.w_out);
    return j;
}

TrainedEsn trained_from_json(const Json& j) {
    auto [rw, hp] = reservoir_from_json(j);
    TrainedEsn model;
    model.reservoir = std::move(rw);
    model.hp = hp;
    model.w_out = matrix_from_json(j.at("w_out"));
    const std::size_t expected = 1 + model.reservoir.input_dim() + model.reservoir.size();
    if (model.w_out.cols() < expected)
        throw std::invalid_argument("trained_from_json: w_out too narrow for this reservoir");
    return model;
}

Json curve_summary_json(const PruneCurve& curve) {
    return Json{{"baseline",
                 Json{{"n", curve.original_n},
                      {"val_nrmse", curve.baseline_val_nrmse},
                      {"test_nrmse", curve.baseline_test_nrmse},
                      {"rho", curve.baseline_rho}}},
                {"optimal_n", curve.optimal_n},
                {"optimal_test_nrmse", curve.optimal_test_nrmse},
                {"smallest_n", curve.smallest_n}};
}

void save_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_json: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("save_json: write failed for " + path);
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_json: cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace esn
