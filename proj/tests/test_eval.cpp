#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esn/data.hpp"
#include "esn/eval.hpp"

using namespace esn;

TEST_CASE("nrmse contract") {
    const std::vector<double> target = {1.0, 2.0, 3.0, 4.0};

    SUBCASE("perfect prediction scores zero") {
        CHECK(nrmse(target, target, 1.0).nrmse == 0.0);
    }

    SUBCASE("mean predictor scores one") {
        const double mean = (1 + 2 + 3 + 4) / 4.0;
        const std::vector<double> pred(4, mean);
        const double var = range_variance(target, {0, 4});
        CHECK(nrmse(pred, target, var).nrmse == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("constant offset with unit variance") {
        std::vector<double> pred = target;
        for (double& v : pred) v += 0.1;
        CHECK(nrmse(pred, target, 1.0).nrmse == doctest::Approx(0.1).epsilon(1e-12));
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(nrmse(std::vector<double>{1.0}, target, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(nrmse(target, target, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(nrmse(target, target, -1.0), std::invalid_argument);
    }
}

TEST_CASE("nrmse shift and scale invariances") {
    // Values on a coarse binary grid so the shifted sums stay exact and
    // the pure-shift invariance holds bitwise.
    const std::vector<double> target = {0.25, -0.5, 1.75, 0.875, -1.125};
    const std::vector<double> pred = {0.125, 0.0, 1.5, 1.25, -0.75};
    const double base = nrmse(pred, target, 2.0).nrmse;

    std::vector<double> pred_shift = pred, target_shift = target;
    for (double& v : pred_shift) v += 4.0;
    for (double& v : target_shift) v += 4.0;
    CHECK(nrmse(pred_shift, target_shift, 2.0).nrmse == base);

    std::vector<double> pred_scaled = pred, target_scaled = target;
    for (double& v : pred_scaled) v *= 3.0;
    for (double& v : target_scaled) v *= 3.0;
    CHECK(nrmse(pred_scaled, target_scaled, 2.0 * 9.0).nrmse ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("aggregate statistics") {
    SUBCASE("single repetition") {
        const Metric one{0.42, 10};
        const RepStats st = aggregate(std::vector<Metric>{one});
        CHECK(st.mean == 0.42);
        CHECK(st.min == 0.42);
        CHECK(st.max == 0.42);
        CHECK(st.std == 0.0);
        CHECK(st.n_reps == 1);
    }

    SUBCASE("two repetitions, hand arithmetic") {
        const std::vector<Metric> reps = {{0.1, 1}, {0.3, 1}};
        const RepStats st = aggregate(reps);
        CHECK(st.mean == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(st.std == doctest::Approx(0.1414213562373095).epsilon(1e-12));
        CHECK(st.min == 0.1);
        CHECK(st.max == 0.3);
    }

    SUBCASE("permutation invariance") {
        const std::vector<Metric> a = {{0.5, 1}, {0.2, 1}, {0.9, 1}, {0.4, 1}};
        const std::vector<Metric> b = {{0.9, 1}, {0.4, 1}, {0.5, 1}, {0.2, 1}};
        const RepStats sa = aggregate(a);
        const RepStats sb = aggregate(b);
        CHECK(sa.mean == sb.mean);
        CHECK(sa.min == sb.min);
        CHECK(sa.max == sb.max);
        CHECK(sa.std == doctest::Approx(sb.std).epsilon(1e-15));
    }

    CHECK_THROWS_AS(aggregate(std::vector<Metric>{}), std::invalid_argument);
}

TEST_CASE("horizon evaluation agrees with explicit predict_free_run") {
    MackeyGlassParams mg;
    mg.n_samples = 1500;
    SeriesDataset ds = mackey_glass(mg);
    ds = with_splits(std::move(ds), make_splits(ds.values.size()));

    HyperParams hp;
    hp.n_reservoir = 40;
    hp.seed = 31;
    hp.ridge_lambda = 1e-6;
    const ReservoirWeights rw = generate_reservoir(hp);

    // Train a one-step readout by hand.
    std::vector<DenseVector> inputs, targets;
    for (std::size_t i = 0; i + 1 < ds.splits.train.end; ++i) {
        inputs.push_back(DenseVector(std::vector<double>{ds.values[i]}));
        targets.push_back(DenseVector(std::vector<double>{ds.values[i + 1]}));
    }
    TrainedEsn model;
    model.reservoir = rw;
    model.hp = hp;
    model.w_out = train_readout(harvest(rw, inputs, targets, ds.splits.washout.size()),
                                hp.ridge_lambda);

    const std::size_t horizon = 10;
    const Metric m = horizon_nrmse(model, ds.values, ds.splits.test, horizon, 16);
    CHECK(m.n_points >= 9);
    CHECK(std::isfinite(m.nrmse));

    // Reproduce the first anchor by the public free-run path.
    const std::size_t p = ds.splits.test.begin - 1;
    std::vector<DenseVector> warm;
    for (std::size_t i = 0; i <= p; ++i)
        warm.push_back(DenseVector(std::vector<double>{ds.values[i]}));
    const auto run = predict_free_run(model, warm, horizon);

    // Recompute the anchored prediction the way horizon_nrmse does.
    const DenseMatrix states = run_states(rw, warm);
    EsnState snap{DenseVector(40)};
    for (std::size_t j = 0; j < 40; ++j) snap.x[j] = states(p, j);
    const auto anchored = free_run_from(model, warm.back(), snap, horizon);
    for (std::size_t k = 0; k < horizon; ++k) CHECK(anchored[k][0] == run[k][0]);
}

TEST_CASE("horizon_nrmse validates its range") {
    MackeyGlassParams mg;
    mg.n_samples = 300;
    const SeriesDataset ds = mackey_glass(mg);
    TrainedEsn model;
    model.hp.n_reservoir = 10;
    model.reservoir.w = DenseMatrix(10, 10);
    model.reservoir.w_in = DenseMatrix(10, 1);
    model.w_out = DenseMatrix(1, 12);
    CHECK_THROWS_AS(horizon_nrmse(model, ds.values, {250, 260}, 50, 1), std::invalid_argument);
    CHECK_THROWS_AS(horizon_nrmse(model, ds.values, {250, 400}, 10, 1), std::invalid_argument);
}

TEST_CASE("trajectory mode pools horizon * anchors points") {
    MackeyGlassParams mg;
    mg.n_samples = 1200;
    SeriesDataset ds = mackey_glass(mg);

    HyperParams hp;
    hp.n_reservoir = 30;
    hp.seed = 13;
    const ReservoirWeights rw = generate_reservoir(hp);
    std::vector<DenseVector> inputs, targets;
    for (std::size_t i = 0; i + 1 < ds.splits.train.end; ++i) {
        inputs.push_back(DenseVector(std::vector<double>{ds.values[i]}));
        targets.push_back(DenseVector(std::vector<double>{ds.values[i + 1]}));
    }
    TrainedEsn model;
    model.reservoir = rw;
    model.hp = hp;
    model.w_out = train_readout(harvest(rw, inputs, targets, ds.splits.washout.size()), 1e-6);

    const Metric fin = horizon_nrmse(model, ds.values, ds.splits.test, 5, 10,
                                     HorizonMode::kFinalStep);
    const Metric traj = horizon_nrmse(model, ds.values, ds.splits.test, 5, 10,
                                      HorizonMode::kTrajectory);
    CHECK(traj.n_points == 5 * fin.n_points);
    CHECK(traj.nrmse <= fin.nrmse + 1e-9);  // early steps are easier
}
