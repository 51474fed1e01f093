#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "esn/io.hpp"

using namespace esn;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("reservoir JSON round trip is exact") {
    HyperParams hp;
    hp.n_reservoir = 24;
    hp.seed = 99;
    hp.feedback_enabled = true;
    hp.squared_states = true;
    const ReservoirWeights rw = generate_reservoir(hp);

    const Json j = reservoir_to_json(rw, hp);
    const std::string path = temp_path("esn_test_reservoir.json");
    save_json(j, path);
    const auto [back, hp_back] = reservoir_from_json(load_json(path));

    CHECK(back.w == rw.w);          // nlohmann round-trips doubles exactly
    CHECK(back.w_in == rw.w_in);
    REQUIRE(back.w_back.has_value());
    CHECK(*back.w_back == *rw.w_back);
    CHECK(hp_back.n_reservoir == hp.n_reservoir);
    CHECK(hp_back.seed == hp.seed);
    CHECK(hp_back.connectivity == hp.connectivity);
    CHECK(hp_back.spectral_radius_target == hp.spectral_radius_target);
    CHECK(hp_back.feedback_enabled);
    CHECK(hp_back.squared_states);
}

TEST_CASE("trained model JSON round trip") {
    HyperParams hp;
    hp.n_reservoir = 16;
    hp.seed = 5;
    TrainedEsn model;
    model.reservoir = generate_reservoir(hp);
    model.hp = hp;
    model.w_out = DenseMatrix(1, 18);
    for (std::size_t j = 0; j < 18; ++j) model.w_out(0, j) = 0.1 * static_cast<double>(j) - 0.7;

    const std::string path = temp_path("esn_test_trained.json");
    save_json(trained_to_json(model), path);
    const TrainedEsn back = trained_from_json(load_json(path));
    CHECK(back.w_out == model.w_out);
    CHECK(back.reservoir.w == model.reservoir.w);
    CHECK(back.hp.seed == hp.seed);
}

TEST_CASE("matrix_from_json validates shape") {
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("42")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[]")), std::invalid_argument);
}

TEST_CASE("hyperparams JSON rejects invalid values") {
    Json j = hyperparams_to_json(HyperParams{});
    j["spectral_radius_target"] = 1.5;
    CHECK_THROWS_AS(hyperparams_from_json(j), std::invalid_argument);
}

TEST_CASE("curve summary JSON carries the selection fields") {
    PruneCurve curve;
    curve.original_n = 100;
    curve.baseline_val_nrmse = 0.02;
    curve.baseline_test_nrmse = 0.021;
    curve.baseline_rho = 0.9;
    curve.optimal_n = 88;
    curve.optimal_test_nrmse = 0.0185;
    curve.smallest_n = 70;
    const Json j = curve_summary_json(curve);
    CHECK(j.at("optimal_n") == 88);
    CHECK(j.at("smallest_n") == 70);
    CHECK(j.at("baseline").at("test_nrmse") == 0.021);
    CHECK(j.at("optimal_test_nrmse") == 0.0185);
}

TEST_CASE("load_json errors on missing file") {
    CHECK_THROWS_AS(load_json("/nonexistent/config.json"), std::runtime_error);
}
