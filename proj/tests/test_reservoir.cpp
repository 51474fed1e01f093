#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esn/data.hpp"
#include "esn/reservoir.hpp"
#include "esn/rng.hpp"

using namespace esn;

TEST_CASE("generate_reservoir is deterministic per seed") {
    HyperParams hp;
    hp.n_reservoir = 60;
    hp.seed = 42;
    const ReservoirWeights a = generate_reservoir(hp);
    const ReservoirWeights b = generate_reservoir(hp);
    CHECK(a.w == b.w);
    CHECK(a.w_in == b.w_in);
    CHECK_FALSE(a.w_back.has_value());

    hp.seed = 43;
    const ReservoirWeights c = generate_reservoir(hp);
    CHECK(a.w.entries() != c.w.entries());
}

TEST_CASE("fully dense reservoir hits the target radius") {
    HyperParams hp;
    hp.n_reservoir = 50;
    hp.connectivity = 1.0;
    hp.seed = 7;
    const ReservoirWeights rw = generate_reservoir(hp);
    std::size_t zeros = 0;
    for (double v : rw.w.entries())
        if (v == 0.0) ++zeros;
    CHECK(zeros == 0);
    CHECK(spectral_radius(rw.w) == doctest::Approx(hp.spectral_radius_target).epsilon(1e-6));
}

TEST_CASE("sparse reservoir nonzero fraction tracks connectivity") {
    HyperParams hp;
    hp.n_reservoir = 200;
    hp.connectivity = 0.1;
    hp.seed = 5;
    const ReservoirWeights rw = generate_reservoir(hp);
    std::size_t nonzero = 0;
    for (double v : rw.w.entries())
        if (v != 0.0) ++nonzero;
    const double fraction = static_cast<double>(nonzero) / (200.0 * 200.0);
    CHECK(fraction > 0.08);
    CHECK(fraction < 0.12);
}

TEST_CASE("generate_reservoir validates hyperparameters") {
    HyperParams hp;
    hp.n_reservoir = 1;
    CHECK_THROWS_AS(generate_reservoir(hp), std::invalid_argument);
    hp.n_reservoir = 10;
    hp.spectral_radius_target = 1.2;
    CHECK_THROWS_AS(generate_reservoir(hp), std::invalid_argument);
    hp.spectral_radius_target = 0.9;
    hp.connectivity = 0.0;
    CHECK_THROWS_AS(generate_reservoir(hp), std::invalid_argument);
}

TEST_CASE("feedback matrix generated only when enabled") {
    HyperParams hp;
    hp.n_reservoir = 20;
    hp.feedback_enabled = true;
    const ReservoirWeights rw = generate_reservoir(hp);
    REQUIRE(rw.w_back.has_value());
    CHECK(rw.w_back->rows() == 20);
    CHECK(rw.w_back->cols() == hp.input_dim);
}

TEST_CASE("scale_to_radius") {
    const DenseMatrix eye = DenseMatrix::identity(3);
    const DenseMatrix scaled = scale_to_radius(eye, 0.9);
    CHECK(scaled(0, 0) == doctest::Approx(0.9));
    CHECK(spectral_radius(scaled) == doctest::Approx(0.9).epsilon(1e-9));

    SUBCASE("fixed point") {
        HyperParams hp;
        hp.n_reservoir = 30;
        hp.seed = 3;
        const ReservoirWeights rw = generate_reservoir(hp);
        const double rho = spectral_radius(rw.w);
        const DenseMatrix same = scale_to_radius(rw.w, rho);
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = 0; j < 30; ++j)
                CHECK(same(i, j) == doctest::Approx(rw.w(i, j)).epsilon(1e-12));
    }

    SUBCASE("random matrix lands on requested radius") {
        Rng rng(17);
        DenseMatrix m(10, 10);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j) m(i, j) = rng.next_uniform(-1, 1);
        CHECK(spectral_radius(scale_to_radius(m, 0.8)) == doctest::Approx(0.8).epsilon(1e-6));
    }

    CHECK_THROWS(scale_to_radius(DenseMatrix(4, 4), 0.9));       // zero radius
    CHECK_THROWS(scale_to_radius(DenseMatrix(2, 3), 0.9));       // non-square
}

TEST_CASE("update_state fixed points and range") {
    HyperParams hp;
    hp.n_reservoir = 25;
    hp.seed = 9;
    const ReservoirWeights rw = generate_reservoir(hp);

    const EsnState zero{DenseVector(25)};
    const DenseVector u0(std::vector<double>{0.0});
    const EsnState still = update_state(rw, zero, u0);
    for (std::size_t i = 0; i < 25; ++i) CHECK(still.x[i] == 0.0);

    EsnState s = zero;
    Rng rng(4);
    for (int step = 0; step < 50; ++step) {
        const DenseVector u(std::vector<double>{rng.next_uniform(-3, 3)});
        s = update_state(rw, s, u);
        for (std::size_t i = 0; i < 25; ++i) {
            CHECK(s.x[i] > -1.0);
            CHECK(s.x[i] < 1.0);
        }
    }

    CHECK_THROWS_AS(update_state(rw, zero, DenseVector(std::vector<double>{1.0, 2.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(update_state(rw, EsnState{DenseVector(7)}, u0), std::invalid_argument);
    // y_prev only valid with feedback
    const DenseVector y(std::vector<double>{0.1});
    CHECK_THROWS_AS(update_state(rw, zero, u0, &y), std::invalid_argument);
}

TEST_CASE("single-node reservoir matches scalar tanh") {
    ReservoirWeights rw;
    rw.w = DenseMatrix(1, 1);  // zero
    rw.w_in = DenseMatrix::identity(1);
    const EsnState s{DenseVector(1)};
    const EsnState next = update_state(rw, s, DenseVector(std::vector<double>{0.5}));
    CHECK(next.x[0] == doctest::Approx(0.46211715726000974).epsilon(1e-12));
}

TEST_CASE("echo state property: trajectories forget initial conditions") {
    HyperParams hp;
    hp.n_reservoir = 100;
    hp.spectral_radius_target = 0.9;
    hp.seed = 21;
    const ReservoirWeights rw = generate_reservoir(hp);

    MackeyGlassParams mg;
    mg.n_samples = 1100;
    const SeriesDataset ds = mackey_glass(mg);

    Rng rng(8);
    EsnState a{DenseVector(100)}, b{DenseVector(100)};
    for (std::size_t i = 0; i < 100; ++i) {
        a.x[i] = rng.next_uniform(-1, 1);
        b.x[i] = rng.next_uniform(-1, 1);
    }
    double dist = 0.0;
    for (std::size_t t = 0; t < 1000; ++t) {
        const DenseVector u(std::vector<double>{ds.values[t]});
        a = update_state(rw, a, u);
        b = update_state(rw, b, u);
        dist = 0.0;
        for (std::size_t i = 0; i < 100; ++i) {
            const double d = a.x[i] - b.x[i];
            dist += d * d;
        }
        dist = std::sqrt(dist);
        if (dist < 1e-6) break;
    }
    CHECK(dist < 1e-6);
}

TEST_CASE("identical input sequences give identical trajectories") {
    HyperParams hp;
    hp.n_reservoir = 40;
    hp.seed = 77;
    const ReservoirWeights rw = generate_reservoir(hp);
    Rng rng(6);
    EsnState s1{DenseVector(40)}, s2{DenseVector(40)};
    for (int t = 0; t < 20; ++t) {
        const DenseVector u(std::vector<double>{rng.next_uniform(-1, 1)});
        s1 = update_state(rw, s1, u);
        s2 = update_state(rw, s2, u);
    }
    CHECK(s1.x == s2.x);
}
